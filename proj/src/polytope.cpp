#include "torusfib/polytope.hpp"

#include "torusfib/errors.hpp"
#include "torusfib/matrix.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace torusfib {

namespace {

// Normal of the hyperplane through d affinely independent points of Z^d, via
// signed maximal minors of the difference matrix; zero when they are dependent.
IntegerVector hyperplane_normal(const std::vector<const IntegerVector*>& pts, std::size_t d) {
  IntegerMatrix diff(d - 1, d);
  for (std::size_t r = 1; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) diff(r - 1, c) = (*pts[r])[c] - (*pts[0])[c];
  IntegerVector normal(d);
  for (std::size_t j = 0; j < d; ++j) {
    IntegerMatrix minor(d - 1, d - 1);
    for (std::size_t r = 0; r + 1 < d; ++r)
      for (std::size_t c = 0, cc = 0; c < d; ++c) {
        if (c == j) continue;
        minor(r, cc++) = diff(r, c);
      }
    Integer m = determinant(minor);
    normal[j] = (j % 2 == 0) ? m : Integer(-m);
  }
  return normal;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Facets of the convex hull of full-dimensional integer points in Z^d (d >= 1).
std::vector<Facet> full_dimensional_facets(const std::vector<IntegerVector>& pts, std::size_t d) {
  std::set<Facet> found;
  if (d == 1) {
    Integer lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    found.insert(Facet{{Integer(-1)}, Integer(-lo)});
    found.insert(Facet{{Integer(1)}, hi});
    return {found.begin(), found.end()};
  }
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  std::vector<const IntegerVector*> chosen(d);
  do {
    // Skip subsets already lying on a known facet.
    bool covered = false;
    for (const auto& f : found) {
      bool all = true;
      for (auto i : idx)
        if (dot(f.normal, pts[i]) != f.offset) {
          all = false;
          break;
        }
      if (all) {
        covered = true;
        break;
      }
    }
    if (covered) continue;
    for (std::size_t i = 0; i < d; ++i) chosen[i] = &pts[idx[i]];
    IntegerVector normal = hyperplane_normal(chosen, d);
    if (content(normal) == 0) continue;
    Integer b = dot(normal, pts[idx[0]]);
    bool le = true, ge = true;
    for (const auto& p : pts) {
      Integer s = dot(normal, p);
      if (s > b) le = false;
      if (s < b) ge = false;
      if (!le && !ge) break;
    }
    if (!le && !ge) continue;
    if (!le) {
      for (auto& x : normal) x = -x;
      b = -b;
    }
    Integer g = content(normal);
    for (auto& x : normal) x /= g;
    b /= g;
    found.insert(Facet{std::move(normal), std::move(b)});
  } while (next_combination(idx, pts.size()));
  return {found.begin(), found.end()};
}

}  // namespace

int affine_dimension(std::span<const ExponentVector> points) {
  if (points.empty()) return -1;
  const std::size_t n = points[0].size();
  RationalMatrix diff(points.size() - 1, n);
  for (std::size_t i = 1; i < points.size(); ++i)
    for (std::size_t c = 0; c < n; ++c) diff(i - 1, c) = points[i][c] - points[0][c];
  return static_cast<int>(rank(diff));
}

NewtonPolytope NewtonPolytope::hull(std::span<const ExponentVector> input) {
  if (input.empty()) throw DomainError("convex hull of an empty point set");
  NewtonPolytope P;
  P.ambient_ = input[0].size();
  std::vector<ExponentVector> pts;
  {
    std::set<ExponentVector> seen;
    for (const auto& p : input) {
      if (p.size() != P.ambient_) throw DomainError("points of differing dimension");
      if (seen.insert(p).second) pts.push_back(p);
    }
  }
  const std::size_t n = P.ambient_;

  RationalMatrix diff(pts.size() - 1, n);
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t c = 0; c < n; ++c) diff(i - 1, c) = pts[i][c] - pts[0][c];
  std::vector<std::size_t> pivots;
  rref(diff, &pivots);
  const std::size_t d = pivots.size();
  P.dim_ = static_cast<int>(d);
  for (const auto& v : nullspace(diff)) {
    IntegerVector normal = primitive_integer(v);
    Integer value = dot(normal, pts[0]);
    P.equations_.push_back(Equation{std::move(normal), std::move(value)});
  }

  if (d == 0) {
    P.vertices_ = {pts[0]};
    P.faces_ = {Face{0, {0}, {}}};
    return P;
  }

  // Coordinate projection onto the pivot columns is injective on the affine hull.
  std::vector<IntegerVector> chart;
  chart.reserve(pts.size());
  for (const auto& p : pts) {
    IntegerVector y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = p[pivots[i]];
    chart.push_back(std::move(y));
  }
  std::vector<Facet> chart_facets = full_dimensional_facets(chart, d);
  for (const auto& f : chart_facets) {
    IntegerVector normal(n, Integer(0));
    for (std::size_t i = 0; i < d; ++i) normal[pivots[i]] = f.normal[i];
    P.facets_.push_back(Facet{std::move(normal), f.offset});
  }

  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<std::size_t> tight;
    for (std::size_t k = 0; k < chart_facets.size(); ++k)
      if (dot(chart_facets[k].normal, chart[i]) == chart_facets[k].offset) tight.push_back(k);
    RationalMatrix normals(tight.size(), d);
    for (std::size_t r = 0; r < tight.size(); ++r)
      for (std::size_t c = 0; c < d; ++c) normals(r, c) = chart_facets[tight[r]].normal[c];
    if (rank(normals) == d) P.vertices_.push_back(pts[i]);
  }

  std::vector<std::vector<std::size_t>> facet_vertices(P.facets_.size());
  for (std::size_t k = 0; k < P.facets_.size(); ++k)
    for (std::size_t v = 0; v < P.vertices_.size(); ++v)
      if (dot(P.facets_[k].normal, P.vertices_[v]) == P.facets_[k].offset) facet_vertices[k].push_back(v);

  std::vector<std::size_t> all(P.vertices_.size());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
  std::set<std::vector<std::size_t>> seen{all};
  std::deque<std::vector<std::size_t>> queue{all};
  while (!queue.empty()) {
    auto face = std::move(queue.front());
    queue.pop_front();
    for (const auto& fv : facet_vertices) {
      std::vector<std::size_t> meet;
      std::set_intersection(face.begin(), face.end(), fv.begin(), fv.end(), std::back_inserter(meet));
      if (meet.empty() || meet.size() == face.size()) continue;
      if (seen.insert(meet).second) queue.push_back(std::move(meet));
    }
  }
  for (const auto& vs : seen) {
    Face face;
    face.vertex_indices = vs;
    std::vector<ExponentVector> coords;
    for (auto v : vs) coords.push_back(P.vertices_[v]);
    face.dimension = affine_dimension(coords);
    for (std::size_t k = 0; k < facet_vertices.size(); ++k)
      if (std::includes(facet_vertices[k].begin(), facet_vertices[k].end(), vs.begin(), vs.end()))
        face.tight_facets.push_back(k);
    P.faces_.push_back(std::move(face));
  }
  std::sort(P.faces_.begin(), P.faces_.end(), [](const Face& a, const Face& b) {
    if (a.dimension != b.dimension) return a.dimension < b.dimension;
    return a.vertex_indices < b.vertex_indices;
  });
  return P;
}

bool NewtonPolytope::contains(const RationalVector& p) const {
  if (p.size() != ambient_) throw DomainError("point dimension does not match the polytope");
  for (const auto& e : equations_)
    if (dot(e.normal, p) != e.value) return false;
  for (const auto& f : facets_)
    if (dot(f.normal, p) > f.offset) return false;
  return true;
}

bool NewtonPolytope::contains(const ExponentVector& p) const { return contains(to_rational(p)); }

bool NewtonPolytope::contains_in_interior(const RationalVector& p) const {
  if (!is_full_dimensional()) return false;
  if (p.size() != ambient_) throw DomainError("point dimension does not match the polytope");
  for (const auto& f : facets_)
    if (dot(f.normal, p) >= f.offset) return false;
  return true;
}

std::vector<std::size_t> NewtonPolytope::tight_facets(const RationalVector& p) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < facets_.size(); ++k)
    if (dot(facets_[k].normal, p) == facets_[k].offset) out.push_back(k);
  return out;
}

std::optional<std::size_t> NewtonPolytope::find_face(const std::vector<std::size_t>& vertex_indices) const {
  std::vector<std::size_t> key = vertex_indices;
  std::sort(key.begin(), key.end());
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (faces_[i].vertex_indices == key) return i;
  return std::nullopt;
}

std::optional<std::size_t> NewtonPolytope::find_face_by_points(const std::vector<ExponentVector>& points) const {
  std::vector<std::size_t> idx;
  for (const auto& p : points) {
    auto it = std::find(vertices_.begin(), vertices_.end(), p);
    if (it == vertices_.end()) return std::nullopt;
    idx.push_back(static_cast<std::size_t>(it - vertices_.begin()));
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return find_face(idx);
}

std::vector<ExponentVector> NewtonPolytope::face_vertices(const Face& face) const {
  std::vector<ExponentVector> out;
  for (auto v : face.vertex_indices) out.push_back(vertices_.at(v));
  return out;
}

bool NewtonPolytope::on_face(const Face& face, const RationalVector& p) const {
  if (!contains(p)) return false;
  for (auto k : face.tight_facets)
    if (dot(facets_.at(k).normal, p) != facets_[k].offset) return false;
  return true;
}

bool NewtonPolytope::same_polytope(const NewtonPolytope& other) const {
  if (ambient_ != other.ambient_ || dim_ != other.dim_) return false;
  std::set<ExponentVector> a(vertices_.begin(), vertices_.end()), b(other.vertices_.begin(), other.vertices_.end());
  if (a != b) return false;
  std::set<Facet> fa(facets_.begin(), facets_.end()), fb(other.facets_.begin(), other.facets_.end());
  if (is_full_dimensional()) return fa == fb;
  return true;
}

NewtonPolytope newton_polytope(const LaurentPolynomial& f) {
  auto support = f.support();
  return NewtonPolytope::hull(support);
}

LaurentPolynomial restrict_to_face(const LaurentPolynomial& f, const NewtonPolytope& delta, const Face& face) {
  if (!delta.same_polytope(newton_polytope(f))) throw DomainError("the polytope is not the Newton polytope of f");
  if (std::find(delta.faces().begin(), delta.faces().end(), face) == delta.faces().end())
    throw DomainError("not a face of the Newton polytope");
  std::vector<Monomial> kept;
  for (const auto& m : f.monomials())
    if (delta.on_face(face, to_rational(m.exponent))) kept.push_back(m);
  return LaurentPolynomial(f.variables(), std::move(kept));
}

Face minimal_face_of(const NewtonPolytope& delta, const RationalVector& p) {
  if (!delta.contains(p)) throw DomainError("point " + to_string(p) + " is not in the polytope");
  auto tight = delta.tight_facets(p);
  std::vector<std::size_t> verts;
  for (std::size_t v = 0; v < delta.vertices().size(); ++v) {
    bool all = true;
    for (auto k : tight)
      if (dot(delta.facets()[k].normal, delta.vertices()[v]) != delta.facets()[k].offset) {
        all = false;
        break;
      }
    if (all) verts.push_back(v);
  }
  auto idx = delta.find_face(verts);
  if (!idx) throw ConsistencyError("face lattice is missing the face through " + to_string(p));
  return delta.faces()[*idx];
}

}  // namespace torusfib
