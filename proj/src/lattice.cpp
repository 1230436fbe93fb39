#include "torusfib/lattice.hpp"

#include "torusfib/errors.hpp"
#include "torusfib/matrix.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <optional>

namespace torusfib {

namespace {

long long floor_div_ll(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
long long ceil_div_ll(long long a, long long b) { return -floor_div_ll(-a, b); }
Integer floor_div_ll(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
Integer ceil_div_ll(const Integer& a, const Integer& b) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
Integer to_int(long long v) { return Integer(static_cast<long>(v)); }
Integer to_int(const Integer& v) { return v; }

// Scan the integer box of kΔ: odometer over the first n-1 coordinates, then the
// last coordinate is an interval cut out by the facets directly.
template <class T>
void scan(const std::vector<std::vector<T>>& normals, const std::vector<T>& rhs, const std::vector<T>& lo,
          const std::vector<T>& hi, bool strict, std::vector<ExponentVector>& out) {
  const std::size_t n = lo.size();
  std::vector<T> x(lo);
  const std::size_t last = n - 1;
  std::vector<T> partial(normals.size());
  while (true) {
    T a = lo[last], b = hi[last];
    bool ok = true;
    for (std::size_t f = 0; f < normals.size() && ok; ++f) {
      T s = 0;
      for (std::size_t i = 0; i < last; ++i) s += normals[f][i] * x[i];
      T room = rhs[f] - s;  // need c*x_last <= room (or < room)
      if (strict) room -= 1;
      const T& c = normals[f][last];
      if (c == 0) {
        if (room < 0) ok = false;
      } else if (c > 0) {
        T bound = floor_div_ll(room, c);
        if (bound < b) b = bound;
      } else {
        T bound = ceil_div_ll(room, c);
        if (bound > a) a = bound;
      }
    }
    if (ok)
      for (T v = a; v <= b; v += 1) {
        ExponentVector p(n);
        for (std::size_t i = 0; i < last; ++i) p[i] = to_int(x[i]);
        p[last] = to_int(v);
        out.push_back(std::move(p));
      }
    // advance the prefix
    std::size_t i = last;
    while (i-- > 0) {
      if (x[i] < hi[i]) {
        x[i] += 1;
        break;
      }
      x[i] = lo[i];
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
}

LatticePoints enumerate(const NewtonPolytope& delta, long k, bool strict) {
  if (!delta.is_full_dimensional()) throw DomainError("lattice point enumeration needs a full-dimensional polytope");
  if (k < 0) throw DomainError("dilation factor must be nonnegative");
  const std::size_t n = delta.ambient_dimension();
  LatticePoints result;
  if (n == 0) return result;
  std::vector<Integer> lo(n), hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = hi[i] = delta.vertices()[0][i] * k;
    for (const auto& v : delta.vertices()) {
      lo[i] = std::min(lo[i], Integer(v[i] * k));
      hi[i] = std::max(hi[i], Integer(v[i] * k));
    }
  }
  std::vector<std::vector<Integer>> normals;
  std::vector<Integer> rhs;
  for (const auto& f : delta.facets()) {
    normals.push_back(f.normal);
    rhs.push_back(f.offset * k);
  }
  // Fast path when every quantity stays far from overflow.
  const Integer limit = Integer(1) << 20;
  bool small = true;
  for (std::size_t i = 0; i < n; ++i) small = small && abs(lo[i]) < limit && abs(hi[i]) < limit;
  for (std::size_t f = 0; f < normals.size(); ++f) {
    small = small && abs(rhs[f]) < limit;
    for (const auto& c : normals[f]) small = small && abs(c) < limit;
  }
  if (small) {
    auto ll = [](const Integer& z) { return static_cast<long long>(z.get_si()); };
    std::vector<std::vector<long long>> nn;
    std::vector<long long> rr, l, h;
    for (std::size_t f = 0; f < normals.size(); ++f) {
      std::vector<long long> row;
      for (const auto& c : normals[f]) row.push_back(ll(c));
      nn.push_back(std::move(row));
      rr.push_back(ll(rhs[f]));
    }
    for (std::size_t i = 0; i < n; ++i) {
      l.push_back(ll(lo[i]));
      h.push_back(ll(hi[i]));
    }
    scan<long long>(nn, rr, l, h, strict, result.points);
  } else {
    scan<Integer>(normals, rhs, lo, hi, strict, result.points);
  }
  result.count = result.points.size();
  return result;
}

Integer binomial(long n, long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

LatticePoints lattice_points(const NewtonPolytope& delta, long k) { return enumerate(delta, k, false); }

LatticePoints interior_lattice_points(const NewtonPolytope& delta, long k) {
  if (k == 0) {
    if (!delta.is_full_dimensional()) throw DomainError("lattice point enumeration needs a full-dimensional polytope");
    return {};  // 0·Δ is a point: empty interior
  }
  return enumerate(delta, k, true);
}

EhrhartData ehrhart(const NewtonPolytope& delta) {
  if (!delta.is_full_dimensional()) throw DomainError("Ehrhart data needs a full-dimensional polytope");
  const long n = static_cast<long>(delta.ambient_dimension());
  EhrhartData e;
  for (long k = 0; k <= n + 1; ++k) {
    e.counts.push_back(Integer(static_cast<unsigned long>(lattice_points(delta, k).count)));
    e.interior_counts.push_back(Integer(static_cast<unsigned long>(interior_lattice_points(delta, k).count)));
  }
  auto transform = [&](const std::vector<Integer>& c, long j) {
    Integer s = 0;
    for (long i = 0; i <= j; ++i) {
      Integer term = binomial(n + 1, i) * c[j - i];
      if (i % 2) s -= term;
      else s += term;
    }
    return s;
  };
  for (long j = 0; j <= n; ++j) e.psi.push_back(transform(e.counts, j));
  for (long j = 0; j <= n + 1; ++j) e.phi.push_back(transform(e.interior_counts, j));
  if (transform(e.counts, n + 1) != 0)
    throw ConsistencyError("Ehrhart: psi has a nonzero coefficient beyond degree n");
  for (long j = 0; j <= n + 1; ++j) {
    Integer mirror = (n + 1 - j <= n) ? e.psi[n + 1 - j] : Integer(0);
    if (e.phi[j] != mirror) throw ConsistencyError("Ehrhart reciprocity fails at degree " + std::to_string(j));
  }
  for (const auto& c : e.psi)
    if (c < 0) throw ConsistencyError("Ehrhart: negative psi coefficient");
  return e;
}

Integer triangulated_volume(const NewtonPolytope& delta) {
  if (!delta.is_full_dimensional()) throw DomainError("normalized volume needs a full-dimensional polytope");
  const auto& faces = delta.faces();
  const auto& verts = delta.vertices();
  const std::size_t n = delta.ambient_dimension();
  if (n == 0) return 1;
  std::map<std::size_t, std::vector<std::vector<std::size_t>>> memo;
  // Pulling triangulation: cone from the smallest vertex over the faces avoiding it.
  auto triangulate = [&](auto&& self, std::size_t fi) -> const std::vector<std::vector<std::size_t>>& {
    auto it = memo.find(fi);
    if (it != memo.end()) return it->second;
    const Face& F = faces[fi];
    std::vector<std::vector<std::size_t>> simplices;
    if (F.dimension == 0) {
      simplices.push_back({F.vertex_indices[0]});
    } else {
      std::size_t apex = F.vertex_indices.front();
      for (std::size_t gi = 0; gi < faces.size(); ++gi) {
        const Face& G = faces[gi];
        if (G.dimension != F.dimension - 1) continue;
        if (!std::includes(F.vertex_indices.begin(), F.vertex_indices.end(), G.vertex_indices.begin(),
                           G.vertex_indices.end()))
          continue;
        if (std::binary_search(G.vertex_indices.begin(), G.vertex_indices.end(), apex)) continue;
        for (const auto& s : self(self, gi)) {
          std::vector<std::size_t> t{apex};
          t.insert(t.end(), s.begin(), s.end());
          simplices.push_back(std::move(t));
        }
      }
    }
    return memo.emplace(fi, std::move(simplices)).first->second;
  };
  const auto& simplices = triangulate(triangulate, faces.size() - 1);
  Integer total = 0;
  for (const auto& s : simplices) {
    IntegerMatrix m(n, n);
    for (std::size_t r = 1; r <= n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r - 1, c) = verts[s[r]][c] - verts[s[0]][c];
    total += abs(determinant(m));
  }
  return total;
}

Integer normalized_volume(const NewtonPolytope& delta) {
  Integer tri = triangulated_volume(delta);
  Integer sum = 0;
  for (const auto& c : ehrhart(delta).psi) sum += c;
  if (sum != tri)
    throw ConsistencyError("normalized volume: Ehrhart sum " + sum.get_str() + " != triangulation " + tri.get_str());
  return sum;
}

long delta_degree(const NewtonPolytope& delta, const ExponentVector& J) {
  if (!delta.is_full_dimensional()) throw DomainError("Δ-degree needs a full-dimensional polytope");
  if (J.size() != delta.ambient_dimension()) throw DomainError("J has the wrong length");
  if (!delta.contains(ExponentVector(J.size(), Integer(0)))) throw DomainError("the origin is not in the polytope");
  if (std::all_of(J.begin(), J.end(), [](const Integer& x) { return x == 0; }))
    throw DomainError("J = 0 has no Δ-degree");
  Integer k = 1;
  for (std::size_t i = 0; i < delta.facets().size(); ++i) {
    const auto& f = delta.facets()[i];
    Integer s = dot(f.normal, J);
    if (f.offset == 0) {
      if (s > 0)
        throw DomainError("J = " + to_string(J) + " lies outside the cone: violates facet " + std::to_string(i) +
                          " <" + to_string(f.normal) + ", x> <= 0");
    } else {
      Integer c = ceil_div_ll(s, f.offset);
      if (c > k) k = c;
    }
  }
  if (!k.fits_slong_p()) throw DomainError("Δ-degree too large");
  return k.get_si();
}

MonomialClass classify_monomial(const NewtonPolytope& delta, const ExponentVector& J) {
  MonomialClass c;
  c.degree_k = delta_degree(delta, J);
  const long n = static_cast<long>(delta.ambient_dimension());
  c.hodge_p = n - c.degree_k;
  RationalVector p(J.size());
  for (std::size_t i = 0; i < J.size(); ++i) p[i] = Rational(J[i], Integer(c.degree_k));
  for (auto& x : p) x.canonicalize();
  c.stratum_face = minimal_face_of(delta, p);
  c.weight_w = 2 * n - 1 - c.stratum_face.dimension;
  return c;
}

}  // namespace torusfib
