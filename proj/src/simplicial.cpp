#include "torusfib/simplicial.hpp"

#include "torusfib/errors.hpp"
#include "torusfib/lattice.hpp"

#include <algorithm>
#include <set>

namespace torusfib {

SigmaEnumeration enumerate_sigmas(const LaurentPolynomial& f, std::size_t cap) {
  const std::size_t M = f.monomial_count(), N = f.variable_count();
  if (M < N + 1)
    throw DomainError("simplicialization needs M >= N+1 monomials (M = " + std::to_string(M) +
                      ", N = " + std::to_string(N) + ")");
  const std::size_t k = M - N - 1;
  SigmaEnumeration out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (out.choices.size() >= cap) {
      out.truncated = true;
      break;
    }
    SigmaChoice s;
    s.aux = idx;
    for (std::size_t i = 0; i < M; ++i)
      if (!std::binary_search(idx.begin(), idx.end(), i)) s.rest.push_back(i);
    out.choices.push_back(std::move(s));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == M - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

FSigma build_f_sigma(const LaurentPolynomial& f, const SigmaChoice& sigma) {
  const std::size_t M = f.monomial_count(), N = f.variable_count();
  if (M < N + 1) throw DomainError("simplicialization needs M >= N+1 monomials");
  if (!f.all_coefficients_one())
    throw DomainError("simplicialization requires every coefficient to be 1");
  const std::size_t extra = M - N - 1;
  if (sigma.aux.size() != extra) throw DomainError("σ must mark exactly M-N-1 monomials");
  std::set<std::size_t> marked(sigma.aux.begin(), sigma.aux.end());
  if (marked.size() != extra || (!marked.empty() && *marked.rbegin() >= M))
    throw DomainError("σ indices must be distinct and within the monomial range");

  std::vector<std::string> vars = f.variables();
  for (std::size_t i = 1; i <= extra; ++i) vars.push_back("xp" + std::to_string(i));
  std::vector<std::size_t> sorted(marked.begin(), marked.end());
  std::vector<Monomial> monomials;
  for (std::size_t i = 0; i < M; ++i) {
    ExponentVector e = f.monomials()[i].exponent;
    e.resize(M - 1, Integer(0));
    auto it = std::find(sorted.begin(), sorted.end(), i);
    if (it != sorted.end()) e[N + static_cast<std::size_t>(it - sorted.begin())] = 1;
    monomials.push_back(Monomial{Rational(1), std::move(e)});
  }
  FSigma out{LaurentPolynomial(std::move(vars), std::move(monomials)), {}};
  auto support = out.polynomial.support();
  NewtonPolytope delta = NewtonPolytope::hull(support);
  for (const auto& p : support) {
    Face face = minimal_face_of(delta, to_rational(p));
    if (face.dimension > 0 && face == delta.whole())
      out.warnings.push_back("support point " + to_string(p) + " lies in the relative interior of the Newton polytope");
  }
  return out;
}

ExponentVector SimplicialData::exponent_row(std::size_t q) const {
  ExponentVector e(M - 1);
  for (std::size_t c = 0; c + 1 < M; ++c) e[c] = L(q, c);
  return e;
}

std::vector<std::size_t> SimplicialData::indices(SignClass c) const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < classes.size(); ++q)
    if (classes[q] == c) out.push_back(q);
  return out;
}

SimplicialData build_matrix(const LaurentPolynomial& f_sigma, const SigmaChoice& sigma) {
  const std::size_t M = f_sigma.monomial_count();
  if (f_sigma.variable_count() + 1 != M)
    throw DomainError("f^σ must have exactly one variable fewer than monomials");
  SimplicialData d{sigma, f_sigma};
  d.M = M;
  d.L = IntegerMatrix(M + 1, M + 1, Integer(0));
  for (std::size_t q = 0; q < M; ++q) {
    d.row_monomial.push_back(q);
    const auto& e = f_sigma.monomials()[q].exponent;
    for (std::size_t c = 0; c + 1 < M; ++c) d.L(q, c) = e[c];
    d.L(q, M) = 1;
  }
  d.L(M, M - 1) = 1;
  d.L(M, M) = 1;
  Integer det = determinant(d.L);
  if (det == 0) throw DomainError("det L = 0: σ does not simplicialize the polynomial");
  if (det < 0) {
    if (M < 2) throw DomainError("cannot fix the sign of det L with a single monomial");
    d.L.swap_rows(0, 1);
    std::swap(d.row_monomial[0], d.row_monomial[1]);
    d.row_swap = std::make_pair(std::size_t{0}, std::size_t{1});
    det = -det;
  }
  d.gamma = det;
  d.L_inv = inverse(to_rational(d.L));
  if (to_rational(d.L) * d.L_inv != RationalMatrix::identity(M + 1, Rational(1)))
    throw ConsistencyError("L * L^-1 != identity");
  auto scaled = [&](std::size_t r, std::size_t c) {
    Rational x = d.L_inv(r, c) * d.gamma;
    if (!is_integer(x)) throw ConsistencyError("gamma * L^-1 is not integral");
    return Integer(x.get_num());
  };
  for (std::size_t q = 0; q <= M; ++q) {
    d.B.push_back(scaled(M - 1, q));
    d.C.push_back(scaled(M, q));
    IntegerVector a(M - 1);
    for (std::size_t i = 0; i + 1 < M; ++i) a[i] = scaled(i, q);
    d.alpha.push_back(std::move(a));
  }
  for (std::size_t q = 0; q <= M; ++q) {
    const Integer& b = d.B[q];
    d.classes.push_back(b > 0 ? SignClass::Plus : b < 0 ? SignClass::Minus : SignClass::Zero);
    RationalVector v(M - 1);
    const Integer& den = (b != 0) ? b : d.gamma;
    for (std::size_t i = 0; i + 1 < M; ++i) {
      v[i] = Rational(d.alpha[q][i], den);
      v[i].canonicalize();
    }
    d.v.push_back(std::move(v));
  }

  Integer total = 0;
  for (const auto& b : d.B) total += b;
  if (total != 0) throw ConsistencyError("Σ B_q != 0");
  if (d.B[M] != d.gamma) throw ConsistencyError("B_{M+1} != gamma");
  for (const auto& x : d.v[M])
    if (x != 0) throw ConsistencyError("v_{M+1} is not zero");
  for (std::size_t q = 0; q < M; ++q)
    if (d.C[q] != -d.B[q]) throw ConsistencyError("C_q != -B_q at q = " + std::to_string(q + 1));
  return d;
}

SimplicialData simplicial_data(const LaurentPolynomial& f, const SigmaChoice& sigma) {
  return build_matrix(build_f_sigma(f, sigma).polynomial, sigma);
}

std::vector<LinearForm> linear_forms(const SimplicialData& data, const ExponentVector& J) {
  const std::size_t M = data.M;
  if (J.size() != M - 1) throw DomainError("J must have length M-1 = " + std::to_string(M - 1));
  RationalVector Jr = to_rational(J);
  std::vector<LinearForm> out;
  for (std::size_t q = 0; q <= M; ++q) {
    LinearForm lf;
    lf.q = q;
    lf.kind = (q == M) ? FormKind::ZForm : (data.B[q] != 0 ? FormKind::FacetForm : FormKind::Constant);
    for (const auto& a : data.alpha[q]) {
      Rational c(a, data.gamma);
      c.canonicalize();
      lf.j_coeffs.push_back(c);
    }
    lf.z_coeff = Rational(data.B[q], data.gamma);
    lf.z_coeff.canonicalize();
    lf.constant = Rational(data.C[q], data.gamma);
    lf.constant.canonicalize();
    lf.at_zero = dot(lf.j_coeffs, Jr) + lf.constant;
    if (lf.kind == FormKind::ZForm && (lf.z_coeff != 1 || lf.at_zero != 0))
      throw ConsistencyError("ℒ_{M+1} is not z");
    if (lf.kind == FormKind::FacetForm) {
      Rational expect = Rational(data.B[q]) * (dot(data.v[q], Jr) - 1) / Rational(data.gamma);
      if (expect != lf.at_zero) throw ConsistencyError("facet form identity fails at q = " + std::to_string(q + 1));
    }
    out.push_back(std::move(lf));
  }
  return out;
}

IntegerVector simplex_volumes(const SimplicialData& data) {
  const std::size_t M = data.M, n = M - 1;
  IntegerVector out;
  for (std::size_t q = 0; q <= M; ++q) {
    std::vector<ExponentVector> pts;
    for (std::size_t r = 0; r <= M; ++r)
      if (r != q) pts.push_back(data.exponent_row(r));
    IntegerMatrix m(n, n);
    for (std::size_t r = 1; r < pts.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) m(r - 1, c) = pts[r][c] - pts[0][c];
    Integer vol = abs(determinant(m));
    if (vol != abs(data.B[q]))
      throw ConsistencyError("simplex volume " + vol.get_str() + " != |B_" + std::to_string(q + 1) + "| = " +
                             Integer(abs(data.B[q])).get_str());
    out.push_back(vol);
  }
  return out;
}

NewtonPolytope classification_polytope(const SimplicialData& data) {
  auto pts = data.f_sigma.support();
  pts.push_back(ExponentVector(data.M - 1, Integer(0)));
  return NewtonPolytope::hull(pts);
}

EulerData euler_characteristic(const SimplicialData& data) {
  EulerData e;
  e.sum_plus = 0;
  for (auto q : data.indices(SignClass::Plus)) e.sum_plus += data.B[q];
  e.chi = (data.M % 2 == 0) ? e.sum_plus : Integer(-e.sum_plus);
  NewtonPolytope delta0 = classification_polytope(data);
  if (!delta0.is_full_dimensional()) throw ConsistencyError("conv(supp f^σ ∪ {0}) is not full-dimensional");
  // Ehrhart enumeration is only affordable in low dimension.
  e.volume = delta0.ambient_dimension() <= 3 ? normalized_volume(delta0) : triangulated_volume(delta0);
  if (e.volume != e.sum_plus)
    throw ConsistencyError("Σ_{I+} B = " + e.sum_plus.get_str() + " but the normalized volume is " + e.volume.get_str());
  return e;
}

std::vector<HalfSpace> h_representation_system(const SimplicialData& data) {
  std::vector<HalfSpace> out;
  for (std::size_t q = 0; q < data.M; ++q) {
    HalfSpace h;
    h.q = q;
    h.normal = data.v[q];
    switch (data.classes[q]) {
      case SignClass::Plus: h.bound = 1; h.at_least = true; break;
      case SignClass::Minus: h.bound = 1; h.at_least = false; break;
      case SignClass::Zero: h.bound = 0; h.at_least = true; break;
    }
    out.push_back(std::move(h));
  }
  return out;
}

Facet to_facet(const HalfSpace& h) {
  RationalVector a = h.normal;
  Rational b = h.bound;
  if (h.at_least) {
    for (auto& x : a) x = -x;
    b = -b;
  }
  IntegerVector n = primitive_integer(a);
  // scale factor λ with n = λ a, λ > 0
  Rational lambda;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) {
      lambda = Rational(n[i]) / a[i];
      break;
    }
  Rational off = lambda * b;
  if (!is_integer(off)) throw ConsistencyError("half-space offset is not integral after normalization");
  return Facet{std::move(n), Integer(off.get_num())};
}

std::vector<HalfSpace> h_representation(const SimplicialData& data) {
  auto system = h_representation_system(data);
  std::set<Facet> mine;
  for (const auto& h : system) mine.insert(to_facet(h));
  auto support = data.f_sigma.support();
  NewtonPolytope hull = NewtonPolytope::hull(support);
  std::set<Facet> theirs(hull.facets().begin(), hull.facets().end());
  if (!hull.is_full_dimensional() || mine != theirs)
    throw ConsistencyError("the half-space system from v_q does not cut out conv(supp f^σ)");
  return system;
}

ExponentVector pad_exponent(const ExponentVector& i, std::size_t total) {
  ExponentVector e = i;
  e.resize(total, Integer(0));
  return e;
}

std::vector<Face> unaffected_faces(const LaurentPolynomial& f, const SigmaChoice& sigma) {
  NewtonPolytope delta = newton_polytope(f);
  FSigma fs = build_f_sigma(f, sigma);
  auto support = fs.polynomial.support();
  NewtonPolytope big = NewtonPolytope::hull(support);
  const std::size_t total = fs.polynomial.variable_count();
  std::vector<Face> out;
  for (const auto& face : delta.faces()) {
    std::vector<ExponentVector> padded;
    for (const auto& v : delta.face_vertices(face)) padded.push_back(pad_exponent(v, total));
    bool inside = std::all_of(padded.begin(), padded.end(), [&](const ExponentVector& p) { return big.contains(p); });
    if (!inside) continue;
    RationalVector centroid(total, Rational(0));
    for (const auto& p : padded)
      for (std::size_t c = 0; c < total; ++c) centroid[c] += p[c];
    for (auto& c : centroid) c /= Rational(static_cast<long>(padded.size()));
    Face carrier = minimal_face_of(big, centroid);
    auto carrier_pts = big.face_vertices(carrier);
    std::set<ExponentVector> a(carrier_pts.begin(), carrier_pts.end()), b(padded.begin(), padded.end());
    if (a == b) out.push_back(face);
  }
  return out;
}

UnaffectingSigma find_unaffecting_sigma(const LaurentPolynomial& f, const ExponentVector& J, std::size_t cap) {
  NewtonPolytope delta = newton_polytope(f);
  if (J.size() != f.variable_count()) throw DomainError("J has the wrong length");
  UnaffectingSigma result;
  const long k_limit = 10000;
  for (long k = 1; k <= k_limit; ++k) {
    RationalVector p(J.size());
    for (std::size_t i = 0; i < J.size(); ++i) {
      p[i] = Rational(J[i], Integer(k));
      p[i].canonicalize();
    }
    if (delta.contains(p)) {
      result.k = k;
      result.face = minimal_face_of(delta, p);
      break;
    }
  }
  if (result.k == 0) throw DomainError("J/k is not in Δ(f) for any k <= " + std::to_string(k_limit));
  auto sigmas = enumerate_sigmas(f, cap);
  for (std::size_t s = 0; s < sigmas.choices.size(); ++s) {
    auto faces = unaffected_faces(f, sigmas.choices[s]);
    if (std::find(faces.begin(), faces.end(), result.face) != faces.end()) {
      result.sigma = sigmas.choices[s];
      result.index = s;
      return result;
    }
  }
  throw DomainError("no σ among the first " + std::to_string(sigmas.choices.size()) +
                    " (cap " + std::to_string(cap) + ") leaves the face of J unaffected");
}

}  // namespace torusfib
