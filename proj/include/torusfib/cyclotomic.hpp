#pragma once

#include "torusfib/matrix.hpp"
#include "torusfib/rational.hpp"

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

namespace torusfib {

// Element of the group ring Q[Z/m], i.e. Σ c_a ζ^a with ζ a primitive m-th root
// of unity. Arithmetic stays in the group ring (sparse, cheap); equality is
// decided in Q(ζ_m) by reduction modulo the cyclotomic polynomial Φ_m, since the
// group ring itself has zero divisors (1 + ζ + ... + ζ^{m-1} is 0 in the field).
//
// A default-constructed value is a modulus-free zero that adopts the modulus of
// whatever it is combined with.
class Cyclotomic {
public:
  using Term = std::pair<std::uint32_t, Rational>;

  Cyclotomic() = default;
  explicit Cyclotomic(std::uint32_t m);

  static Cyclotomic root(std::uint32_t m, long a, const Rational& c = 1);  // c·ζ^a
  static Cyclotomic constant(std::uint32_t m, const Rational& c);

  std::uint32_t modulus() const noexcept { return m_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  // Dense group-ring coefficients c_0..c_{m-1}.
  std::vector<Rational> coefficients() const;
  // Canonical coordinates in Q(ζ_m): remainder modulo Φ_m, length φ(m).
  std::vector<Rational> canonical() const;

  bool is_zero() const;
  // Structurally empty (cheap; implies is_zero()).
  bool empty() const noexcept { return terms_.empty(); }

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& c);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(Cyclotomic a, const Rational& c) { return a *= c; }
  Cyclotomic operator-() const;
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return (a - b).is_zero(); }

  // If the value is ±ζ^a (after reduction), returns its inverse; otherwise the
  // field inverse via extended Euclid modulo Φ_m. Throws DomainError on zero.
  Cyclotomic inverse() const;

  std::complex<double> to_complex() const;

  // Re-express in Q[Z/m'] for a multiple m' of the modulus.
  Cyclotomic lift(std::uint32_t m_new) const;

private:
  std::uint32_t m_ = 0;
  std::vector<Term> terms_;  // sorted by exponent, nonzero coefficients
  void adopt(const Cyclotomic& o);
};

// Φ_m with integer coefficients, low degree first.
const std::vector<Integer>& cyclotomic_polynomial(std::uint32_t m);

// Polynomials in t with cyclotomic coefficients, low degree first.
using CycPoly = std::vector<Cyclotomic>;

CycPoly poly_mul(const CycPoly& a, const CycPoly& b);
bool poly_equal(const CycPoly& a, const CycPoly& b);
// Π (t - c·ζ^{a_i}) style helpers are built by callers; this divides by (t - r)
// and returns the quotient together with the remainder.
std::pair<CycPoly, Cyclotomic> divide_linear(const CycPoly& p, const Cyclotomic& r);

// Multiplicities of ζ^a, a = 0..m-1, as roots of a monic p (exact, repeated
// synthetic division). The multiplicities sum to deg p exactly when every root
// is an m-th root of unity.
std::vector<long> root_of_unity_multiplicities(const CycPoly& p, std::uint32_t m);

using CycMatrix = Matrix<Cyclotomic>;

CycMatrix multiply(const CycMatrix& a, const CycMatrix& b);
CycMatrix identity_matrix(std::size_t n, std::uint32_t m);
bool is_identity(const CycMatrix& a);
bool equal(const CycMatrix& a, const CycMatrix& b);
// Characteristic polynomial det(tI - A), monic, by Faddeev–LeVerrier.
CycPoly characteristic_polynomial(const CycMatrix& a);
std::vector<std::vector<std::complex<double>>> to_complex(const CycMatrix& a);

}  // namespace torusfib
