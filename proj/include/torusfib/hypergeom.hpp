#pragma once

#include "torusfib/cyclotomic.hpp"
#include "torusfib/simplicial.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace torusfib {

// Π_i (ϑ - roots[i]) times `leading`.
struct ThetaOperator {
  std::vector<Rational> roots;
  Rational leading = 1;
  std::size_t order() const { return roots.size(); }
};

struct Operators {
  ThetaOperator P, Q;            // in ϑ_s
  ThetaOperator P_t, Q_t;        // in ϑ_t after t = s^γ (roots divided by γ)
  Integer delta_sigma;           // Σ_{I+} B_q
  std::size_t plus_count = 0;    // |I+|, for comparison with delta_sigma
};

Operators build_operators(const SimplicialData& data, const ExponentVector& J);

struct ExponentSets {
  std::vector<Rational> c_plus, c_minus, c_zero;  // sorted multisets
  std::vector<Rational> plus_reduced, minus_reduced;  // c_± \ c_0
  std::size_t delta_bar = 0;
};

ExponentSets exponent_sets(const SimplicialData& data, const ExponentVector& J);
// Multiset arithmetic helpers, used by exponent_sets and exposed for synthetic inputs.
ExponentSets exponent_sets(std::vector<Rational> c_plus, std::vector<Rational> c_minus);

// The ϑ_t-roots of P and the multiset -C+ agree in Q/Z (the operator and the
// exponent sets are written with different normalizations).
bool roots_agree_mod_z(const Operators& ops, const ExponentSets& sets);

// R̄ = Π(ϑ + α⁺) - t Π(ϑ + α⁻ + 1).
struct ReducedOperator {
  std::vector<Rational> alpha_plus;
  std::vector<Rational> alpha_minus;
  std::size_t order() const { return alpha_plus.size(); }
};

ReducedOperator reduced_operator(const ExponentSets& sets);

struct FrobeniusSeries {
  Rational rho;
  std::vector<Rational> a;  // a_0 = 1 .. a_K
};

// ρ must be -α⁺ for a simple, non-resonant α⁺; otherwise DomainError.
FrobeniusSeries frobenius_series(const ReducedOperator& op, const Rational& rho, long K);
// Applies R̄ to t^ρ Σ a_k t^k via expanded polynomial coefficients; true when
// every coefficient through t^{ρ+K} vanishes.
bool verify_annihilation(const ReducedOperator& op, const FrobeniusSeries& series, long K);
// The exponents ρ = -α⁺ accepted by frobenius_series.
std::vector<Rational> simple_nonresonant_exponents(const ReducedOperator& op);

// Lowest common denominator of every exponent, so e^{-2πiα} = ζ_m^{-αm}.
std::uint32_t exponent_modulus(const ExponentSets& sets);

struct CharPolys {
  std::uint32_t m = 1;
  CycPoly x0, x_inf;  // monic, low degree first
  // Closed forms over I+ / I- (only meaningful when C0 is empty).
  bool closed_form_checked = false;
  bool x0_matches_closed_form = false;
  bool x_inf_matches_closed_form = false;       // with the sign derived from C-
  bool x_inf_matches_printed_sign = false;      // with the opposite sign in the constant
};

CharPolys char_polys(const ExponentSets& sets);
CharPolys char_polys(const SimplicialData& data, const ExponentVector& J, const ExponentSets& sets);

struct EigenData {
  std::uint32_t m = 1;
  std::vector<std::pair<std::uint32_t, long>> roots;  // (a, multiplicity) for ζ_m^a
  long total = 0;                                     // Σ multiplicities; equals the size when complete
  double max_modulus_error = 0;                       // max | |λ| - 1 | in the floating view
  double trace_error = 0;                             // max |tr(G^k) - Σ λ^k| over k = 1..n (floating)
};

// Exact characteristic polynomial and its root-of-unity factorization.
EigenData eigen_data(const CycMatrix& g, std::uint32_t m);

struct MonodromyRep {
  std::uint32_t m = 1;
  std::size_t n = 0;  // Δ̄
  Integer gamma;
  CycMatrix h0, h_inf, h_inf_inv, h1;
  CycMatrix M0, M_inf;
  std::vector<CycMatrix> M_omega;  // i = 0..γ-1
  bool relation_ok = false;        // h0·h_inf·h1 = I
  bool conjugacy_ok = false;       // h_inf·M_ω^{i+1} = M_ω^i·h_inf for all i
  bool char_polys_equal = false;   // all M_ω^i share one characteristic polynomial
  bool companion_ok = false;       // char poly of h0 is X0 and of h_inf^{-1} is X_inf
};

// Throws DomainError when Δ̄ = 0.
MonodromyRep monodromy(const CharPolys& cp, const Integer& gamma);

struct JordanReport {
  long r = 0;
  long c0_integers = 0;
  long size = 0;                  // r + 1 - c0_integers
  long integer_exponents = 0;     // #{α ∈ C+ \ C0 : α ∈ Z}
  long x0_unit_multiplicity = 0;  // multiplicity of t = 1 in X0
  bool consistent = false;        // size == integer_exponents == x0_unit_multiplicity
};

JordanReport jordan_report(const SimplicialData& data, const ExponentVector& J);

// s^γ = Π_{I+} B / Π_{I-} B; the singular points are its γ-th roots.
struct SingularLocus {
  Rational s_pow_gamma;
  Integer gamma;
};

SingularLocus singular_locus(const SimplicialData& data);

// Distinct α in C+ \ C0 with their multiplicities (m_ℓ + 1).
std::vector<std::pair<Rational, long>> exponent_multiplicities(const ExponentSets& sets);

}  // namespace torusfib
