#pragma once

#include "torusfib/laurent.hpp"
#include "torusfib/matrix.hpp"
#include "torusfib/polytope.hpp"
#include "torusfib/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace torusfib {

// Which monomials (0-based indices into f) receive the auxiliary variables
// xp1, xp2, ... (in increasing index order); `rest` are the others.
struct SigmaChoice {
  std::vector<std::size_t> aux;
  std::vector<std::size_t> rest;

  friend bool operator==(const SigmaChoice&, const SigmaChoice&) = default;
};

struct SigmaEnumeration {
  std::vector<SigmaChoice> choices;  // lexicographic in `aux`
  bool truncated = false;
};

SigmaEnumeration enumerate_sigmas(const LaurentPolynomial& f, std::size_t cap = 10000);

struct FSigma {
  LaurentPolynomial polynomial;
  std::vector<std::string> warnings;  // support points in the relative interior of Δ(f^σ)
};

// Monomial order of f is kept; variables are x-block then xp1..xp_{M-N-1}.
FSigma build_f_sigma(const LaurentPolynomial& f, const SigmaChoice& sigma);

enum class SignClass { Plus, Minus, Zero };

// All indices q are 0-based; q = M is the u·s row.
struct SimplicialData {
  SigmaChoice sigma;
  LaurentPolynomial f_sigma;
  std::size_t M = 0;                 // monomial count
  std::vector<std::size_t> row_monomial{};  // row q < M of L is monomial row_monomial[q] of f_sigma
  std::optional<std::pair<std::size_t, std::size_t>> row_swap{};
  IntegerMatrix L{};                 // (M+1)x(M+1), columns (x, xp, s, u)
  Integer gamma{};
  RationalMatrix L_inv{};
  IntegerVector B{}, C{};               // gamma * rows M-1, M of L_inv (0-based)
  std::vector<IntegerVector> alpha{};  // gamma * first M-1 entries of column q
  std::vector<SignClass> classes{};
  std::vector<RationalVector> v{};

  std::size_t dimension() const { return M - 1; }  // variables of f^σ
  // Exponent row of L row q (q = M gives the origin).
  ExponentVector exponent_row(std::size_t q) const;
  std::vector<std::size_t> indices(SignClass c) const;
};

// Throws DomainError when det L = 0 (σ does not simplicialize f).
SimplicialData build_matrix(const LaurentPolynomial& f_sigma, const SigmaChoice& sigma = {});
SimplicialData simplicial_data(const LaurentPolynomial& f, const SigmaChoice& sigma);

enum class FormKind { ZForm, FacetForm, Constant };

// ℒ_q(J, z) = <j_coeffs, J> + z_coeff * z + constant.
struct LinearForm {
  std::size_t q = 0;
  FormKind kind = FormKind::Constant;
  RationalVector j_coeffs;  // alpha_q / gamma
  Rational z_coeff;         // B_q / gamma
  Rational constant;        // C_q / gamma
  Rational at_zero;         // ℒ_q(J, 0) for the J supplied

  Rational operator()(const Rational& z) const { return at_zero + z_coeff * z; }
};

std::vector<LinearForm> linear_forms(const SimplicialData& data, const ExponentVector& J);

// (M-1)!·vol(τ_q) for each q, by determinant; throws ConsistencyError if != |B_q|.
IntegerVector simplex_volumes(const SimplicialData& data);

struct EulerData {
  Integer sum_plus;  // Σ_{I+} B_q
  Integer chi;       // (-1)^M Σ_{I+} B_q
  Integer volume;    // normalized volume of conv(supp f^σ ∪ {0})
};

// Throws ConsistencyError when Σ_{I+} B_q differs from the volume.
EulerData euler_characteristic(const SimplicialData& data);

struct HalfSpace {
  std::size_t q = 0;
  RationalVector normal;  // v_q
  Rational bound;         // 1 or 0
  bool at_least = true;   // <v_q, i> >= bound, else <=
};

// The system read off from v_q; normalized facets via to_facet.
std::vector<HalfSpace> h_representation_system(const SimplicialData& data);
Facet to_facet(const HalfSpace& h);
// Returns the system after checking it equals the facet set of conv(supp f^σ);
// throws ConsistencyError otherwise.
std::vector<HalfSpace> h_representation(const SimplicialData& data);

// conv(supp f^σ ∪ {0}), the polytope used for degree/stratum classification.
NewtonPolytope classification_polytope(const SimplicialData& data);

// Faces of Δ(f) whose zero-padded vertices are exactly the vertex set of a face of Δ(f^σ).
std::vector<Face> unaffected_faces(const LaurentPolynomial& f, const SigmaChoice& sigma);

ExponentVector pad_exponent(const ExponentVector& i, std::size_t total);

struct UnaffectingSigma {
  SigmaChoice sigma;
  std::size_t index = 0;  // position in enumerate_sigmas
  long k = 0;             // minimal k with J/k ∈ Δ(f)
  Face face;              // minimal face of Δ(f) containing J/k
};

// First σ (enumeration order) leaving the minimal face of J/k unaffected.
// Throws DomainError when no σ within the cap qualifies.
UnaffectingSigma find_unaffecting_sigma(const LaurentPolynomial& f, const ExponentVector& J, std::size_t cap = 10000);

}  // namespace torusfib
