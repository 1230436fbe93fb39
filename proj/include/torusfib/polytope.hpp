#pragma once

#include "torusfib/laurent.hpp"
#include "torusfib/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace torusfib {

// <normal, x> <= offset, normal primitive.
struct Facet {
  IntegerVector normal;
  Integer offset;

  friend bool operator==(const Facet&, const Facet&) = default;
  friend bool operator<(const Facet& a, const Facet& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

// <normal, x> == value; one per codimension of the affine hull.
struct Equation {
  IntegerVector normal;
  Integer value;
};

struct Face {
  int dimension = 0;
  std::vector<std::size_t> vertex_indices;  // sorted, into NewtonPolytope::vertices()
  std::vector<std::size_t> tight_facets;    // sorted, into NewtonPolytope::facets()

  friend bool operator==(const Face&, const Face&) = default;
};

// Exact convex hull of a finite set of integer points with its complete face
// lattice. Lower-dimensional hulls are valid values: their facets are the
// relative facets, lifted to the ambient space, and equations() cuts out the
// affine hull.
class NewtonPolytope {
public:
  static NewtonPolytope hull(std::span<const ExponentVector> points);

  std::size_t ambient_dimension() const noexcept { return ambient_; }
  int dimension() const noexcept { return dim_; }
  bool is_full_dimensional() const noexcept { return static_cast<std::size_t>(dim_) == ambient_; }

  // Extreme points, in order of first appearance in the input.
  const std::vector<ExponentVector>& vertices() const noexcept { return vertices_; }
  const std::vector<Facet>& facets() const noexcept { return facets_; }
  const std::vector<Equation>& equations() const noexcept { return equations_; }
  // All nonempty faces, sorted by (dimension, vertex_indices); the last is the polytope itself.
  const std::vector<Face>& faces() const noexcept { return faces_; }
  const Face& whole() const { return faces_.back(); }

  bool contains(const RationalVector& p) const;
  bool contains(const ExponentVector& p) const;
  // Interior relative to the ambient space; always false for lower-dimensional hulls.
  bool contains_in_interior(const RationalVector& p) const;
  std::vector<std::size_t> tight_facets(const RationalVector& p) const;

  std::optional<std::size_t> find_face(const std::vector<std::size_t>& vertex_indices) const;
  // Index of the face with the given vertex coordinates, if any.
  std::optional<std::size_t> find_face_by_points(const std::vector<ExponentVector>& points) const;
  std::vector<ExponentVector> face_vertices(const Face& face) const;
  // True when `face` lies on every facet tight at `p` (i.e. p is on the face).
  bool on_face(const Face& face, const RationalVector& p) const;

  // Same vertex set and facet set.
  bool same_polytope(const NewtonPolytope& other) const;

private:
  std::size_t ambient_ = 0;
  int dim_ = 0;
  std::vector<ExponentVector> vertices_;
  std::vector<Facet> facets_;
  std::vector<Equation> equations_;
  std::vector<Face> faces_;
};

NewtonPolytope newton_polytope(const LaurentPolynomial& f);

// Sub-sum of f over the monomials whose exponents lie on the face. Throws
// DomainError when `face` is not a face of `delta` or `delta` is not Δ(f).
LaurentPolynomial restrict_to_face(const LaurentPolynomial& f, const NewtonPolytope& delta, const Face& face);

// The unique face whose relative interior contains p. Throws DomainError if p ∉ Δ.
Face minimal_face_of(const NewtonPolytope& delta, const RationalVector& p);

// Affine rank of a point set (-1 for the empty set).
int affine_dimension(std::span<const ExponentVector> points);

}  // namespace torusfib
