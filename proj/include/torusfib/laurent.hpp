#pragma once

#include "torusfib/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace torusfib {

struct Monomial {
  Rational coefficient;
  ExponentVector exponent;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// A finite sum of monomials with pairwise distinct exponent vectors and nonzero
// coefficients. Monomial order is the order of first appearance in the input and
// is significant: simplicialization indices refer to it.
class LaurentPolynomial {
public:
  LaurentPolynomial(std::vector<std::string> variables, std::vector<Monomial> monomials);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
  std::size_t variable_count() const noexcept { return variables_.size(); }
  std::size_t monomial_count() const noexcept { return monomials_.size(); }

  std::vector<ExponentVector> support() const;
  bool all_coefficients_one() const;

  // Human-readable form, e.g. "x1^5 + x1^2*x2".
  std::string to_string() const;

  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

private:
  std::vector<std::string> variables_;
  std::vector<Monomial> monomials_;
};

// Grammar: sum of signed terms; a term is an optional coefficient (integer or p/q)
// followed by factors name[^int] joined by optional '*'. Names x<i> fix the
// variable list to x1..x<max i>; otherwise variables are ordered by first
// appearance. Duplicate exponents are merged and zero terms dropped.
LaurentPolynomial parse_laurent(std::string_view text);
// Same grammar against a caller-supplied variable list.
LaurentPolynomial parse_laurent(std::string_view text, const std::vector<std::string>& variables);

// Builds a polynomial from exponent rows with unit coefficients, merging duplicates.
LaurentPolynomial from_support(std::vector<std::string> variables, const std::vector<ExponentVector>& support);

}  // namespace torusfib
