#pragma once

#include "torusfib/polytope.hpp"
#include "torusfib/rational.hpp"

#include <cstddef>
#include <vector>

namespace torusfib {

struct LatticePoints {
  std::size_t count = 0;
  std::vector<ExponentVector> points;  // lexicographic
};

// Z^n ∩ kΔ (closed) and Z^n ∩ int(kΔ). Δ must be full-dimensional.
LatticePoints lattice_points(const NewtonPolytope& delta, long k);
LatticePoints interior_lattice_points(const NewtonPolytope& delta, long k);

struct EhrhartData {
  std::vector<Integer> psi;              // ψ_0..ψ_n
  std::vector<Integer> phi;              // φ_0..φ_{n+1}
  std::vector<Integer> counts;           // ℓ(kΔ), k = 0..n+1
  std::vector<Integer> interior_counts;  // ℓ*(kΔ), k = 0..n+1
};

// Binomial transform of the dilation counts. Throws ConsistencyError if
// reciprocity φ_j = ψ_{n+1-j} fails or ψ_{n+1} != 0.
EhrhartData ehrhart(const NewtonPolytope& delta);

// n!·vol(Δ) from a pulling triangulation over the face lattice (any dimension).
Integer triangulated_volume(const NewtonPolytope& delta);
// n!·vol(Δ) as Σψ, cross-checked against triangulated_volume.
Integer normalized_volume(const NewtonPolytope& delta);

// Minimal k >= 1 with J/k ∈ Δ. Requires 0 ∈ Δ, Δ full-dimensional, J != 0 in the cone.
long delta_degree(const NewtonPolytope& delta, const ExponentVector& J);

struct MonomialClass {
  long degree_k = 0;
  long hodge_p = 0;
  Face stratum_face;
  long weight_w = 0;  // 2n - 1 - dim(stratum_face)
};

MonomialClass classify_monomial(const NewtonPolytope& delta, const ExponentVector& J);

}  // namespace torusfib
