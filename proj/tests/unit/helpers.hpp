#pragma once

#include "torusfib/laurent.hpp"
#include "torusfib/rational.hpp"

#include <initializer_list>
#include <string>
#include <vector>

inline const char* const kExample = "x1^5 + x1^2*x2 + x1*x2^2 + x2^4";

inline torusfib::ExponentVector ev(std::initializer_list<long> xs) {
  return torusfib::ExponentVector(xs.begin(), xs.end());
}

inline torusfib::RationalVector rv(std::initializer_list<torusfib::Rational> xs) { return {xs.begin(), xs.end()}; }

inline torusfib::Rational q(long p, long d = 1) {
  torusfib::Rational r(p, d);
  r.canonicalize();
  return r;
}

inline std::vector<torusfib::ExponentVector> pts(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<torusfib::ExponentVector> out;
  for (auto r : rows) out.push_back(ev(r));
  return out;
}
