#pragma once

#include "torusfib/laurent.hpp"
#include "torusfib/simplicial.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace torusfib {

// Γ(slope·z + shift); q identifies the generating row (0-based).
struct GammaFactor {
  std::size_t q = 0;
  Rational slope;
  Rational shift;

  Rational at(const Rational& z) const { return slope * z + shift; }
};

struct ConstantFactor {
  std::size_t q = 0;
  Rational value;  // Γ(value)
};

struct MellinSkeleton {
  ExponentVector J;
  std::vector<GammaFactor> numerator;    // Γ(ℒ_q), q ∈ I+
  std::vector<GammaFactor> denominator;  // Γ(1 - ℒ_q), q ∈ I-
  std::vector<ConstantFactor> constants; // Γ(ℒ_q), q ∈ I0
  bool degenerate = false;               // some constant is a nonpositive integer
};

// Sign classes are read from the sign of B directly, so hand-edited data stays self-consistent.
MellinSkeleton mellin_skeleton(const SimplicialData& data, const ExponentVector& J);

struct Pole {
  Rational z;
  long order = 0;
  std::vector<std::size_t> sources;  // numerator rows with a pole here
};

struct Cancellation {
  Rational z;
  long numerator = 0;
  long denominator = 0;
};

struct PoleReport {
  std::vector<Pole> poles;  // descending z, order >= 1
  std::optional<Rational> maximal;
  long maximal_order = 0;
  std::vector<Cancellation> cancellations;
};

// All poles with z >= z_min. Throws DomainError on a degenerate skeleton.
PoleReport enumerate_poles(const MellinSkeleton& sk, const Rational& z_min);

struct HodgePolePrediction {
  long k = 0;
  long p = 0;
  long w = 0;
  long r = 0;
  std::vector<std::size_t> tight_plus;   // q ∈ I+, q < M with <v_q, J> = k
  std::vector<std::size_t> tight_minus;  // q ∈ I- with <v_q, J> = k (not counted in r)
  bool exact = false;                    // r >= 1
  Rational predicted_max;                // 1 - k when exact
  Rational lower, upper;                 // open interval when !exact
  long order_bound = 0;                  // r + 1, or 1 when r = 1
};

// Classification on conv(supp f^σ ∪ {0}); throws DomainError outside its cone.
HodgePolePrediction hodge_pole_prediction(const SimplicialData& data, const ExponentVector& J);
HodgePolePrediction hodge_pole_prediction(const SimplicialData& data, const NewtonPolytope& delta0,
                                          const ExponentVector& J);

struct Violation {
  ExponentVector J;
  long k = 0;
  std::string kind;
  std::string detail;
};

struct BoundaryNote {
  ExponentVector J;
  std::size_t q = 0;
  std::string detail;
};

struct CrossCheck {
  std::vector<Violation> violations;
  std::vector<BoundaryNote> boundary;
  std::vector<ExponentVector> degenerate;  // skeleton has a Γ at a nonpositive integer constant
  std::size_t checked = 0;                 // points examined
  std::size_t pole_checks = 0;             // points whose poles were compared

  bool ok() const { return violations.empty(); }
};

// Sweep every nonzero lattice point of k_max·conv(supp f^σ ∪ {0}).
CrossCheck crosscheck_theorem41(const SimplicialData& data, long k_max);

// Sweep lattice points i of Δ(f)-degree <= k_max lying on faces unaffected by σ.
CrossCheck crosscheck_theorem43(const LaurentPolynomial& f, const SigmaChoice& sigma, long k_max);

}  // namespace torusfib
