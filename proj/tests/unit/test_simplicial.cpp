#include "doctest.h"
#include "helpers.hpp"
#include "../support/oracles.hpp"

#include "torusfib/errors.hpp"
#include "torusfib/lattice.hpp"
#include "torusfib/simplicial.hpp"

#include <numeric>
#include <optional>
#include <random>

using namespace torusfib;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

SimplicialData sigma3() {
  auto f = parse_laurent(kExample);
  return simplicial_data(f, enumerate_sigmas(f).choices[2]);
}

// Laplace-expansion determinant of an integer matrix, test side.
Rational oracle_det(const IntegerMatrix& m) {
  oracle::Mat a(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return oracle::det(a);
}

}  // namespace

TEST_CASE("σ enumeration counts") {
  auto f = parse_laurent(kExample);
  auto en = enumerate_sigmas(f);
  CHECK(en.choices.size() == 4);
  CHECK_FALSE(en.truncated);
  CHECK(en.choices[2].aux == std::vector<std::size_t>{2});

  auto tri = parse_laurent("x1 + x2 + 1");
  CHECK(enumerate_sigmas(tri).choices.size() == 1);
  CHECK(enumerate_sigmas(tri).choices[0].aux.empty());
  auto five = parse_laurent("x1^3 + x2^3 + x1*x2 + x1^2*x2 + 1");
  CHECK(enumerate_sigmas(five).choices.size() == 10);
  CHECK(enumerate_sigmas(five, 3).truncated);
  CHECK_THROWS_AS(enumerate_sigmas(parse_laurent("x1 + x2")), DomainError);
}

TEST_CASE("f^σ construction") {
  auto f = parse_laurent(kExample);
  auto en = enumerate_sigmas(f);
  auto f3 = build_f_sigma(f, en.choices[2]).polynomial;
  CHECK(f3.variables() == std::vector<std::string>{"x1", "x2", "xp1"});
  CHECK(f3.support() == pts({{5, 0, 0}, {2, 1, 0}, {1, 2, 1}, {0, 4, 0}}));
  auto f1 = build_f_sigma(f, en.choices[0]).polynomial;
  CHECK(f1.support() == pts({{5, 0, 1}, {2, 1, 0}, {1, 2, 0}, {0, 4, 0}}));
  auto tri = parse_laurent("x1 + x2 + 1");
  CHECK(build_f_sigma(tri, enumerate_sigmas(tri).choices[0]).polynomial == tri);
  CHECK_THROWS_AS(build_f_sigma(parse_laurent("2*x1 + x2 + 1"), {}), DomainError);
}

TEST_CASE("golden matrix data for σ₃") {
  auto d = sigma3();
  const long Lrows[5][5] = {{5, 0, 0, 0, 1}, {2, 1, 0, 0, 1}, {1, 2, 1, 0, 1}, {0, 4, 0, 0, 1}, {0, 0, 0, 1, 1}};
  const long Inv[5][5] = {{3, -4, 0, 1, 0}, {2, -5, 0, 3, 0}, {1, -6, 7, -2, 0}, {8, -20, 0, 5, 7}, {-8, 20, 0, -5, 0}};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      CHECK(d.L(i, j) == Lrows[i][j]);
      CHECK(d.L_inv(i, j) == q(Inv[i][j], 7));
    }
  CHECK(d.gamma == 7);
  CHECK_FALSE(d.row_swap.has_value());
  CHECK(d.B == ints({8, -20, 0, 5, 7}));
  CHECK(d.indices(SignClass::Plus) == std::vector<std::size_t>{0, 3, 4});
  CHECK(d.indices(SignClass::Minus) == std::vector<std::size_t>{1});
  CHECK(d.indices(SignClass::Zero) == std::vector<std::size_t>{2});
  CHECK(std::accumulate(d.B.begin(), d.B.end(), Integer(0)) == 0);
}

TEST_CASE("linear forms for σ₃") {
  auto d = sigma3();
  // symbolic check: coefficients of i1, i2, i3, z and the constant
  auto forms = linear_forms(d, ev({0, 0, 0}));
  const long c[5][5] = {{3, 2, 1, 8, -8}, {-4, -5, -6, -20, 20}, {0, 0, 7, 0, 0}, {1, 3, -2, 5, -5}, {0, 0, 0, 7, 0}};
  for (int qi = 0; qi < 5; ++qi) {
    for (int j = 0; j < 3; ++j) CHECK(forms[qi].j_coeffs[j] == q(c[qi][j], 7));
    CHECK(forms[qi].z_coeff == q(c[qi][3], 7));
    CHECK(forms[qi].constant == q(c[qi][4], 7));
  }
  CHECK(forms[4].kind == FormKind::ZForm);
  CHECK(forms[2].kind == FormKind::Constant);
  CHECK(forms[0].kind == FormKind::FacetForm);

  auto at = linear_forms(d, ev({1, 2, 1}));
  CHECK(at[0].at_zero == 0);
  CHECK(at[3].at_zero == 0);
  CHECK(at[4].at_zero == 0);
  CHECK(at[4](q(3, 2)) == q(3, 2));  // ℒ_{M+1} = z
  CHECK_THROWS_AS(linear_forms(d, ev({1, 2})), DomainError);
}

TEST_CASE("volumes and Euler characteristic for σ₃") {
  auto d = sigma3();
  CHECK(simplex_volumes(d) == ints({8, 20, 0, 5, 7}));
  CHECK(8 + 5 + 7 == 20);
  auto e = euler_characteristic(d);
  CHECK(e.sum_plus == 20);
  CHECK(e.chi == 20);
  CHECK(e.volume == 20);
  // independent: normalized volume of conv(supp ∪ 0) from the oracle
  CHECK(oracle::normalized_volume(pts({{5, 0, 0}, {2, 1, 0}, {1, 2, 1}, {0, 4, 0}, {0, 0, 0}})) == 20);
  // γ = (M-1)! vol Δ(f^σ)
  CHECK(normalized_volume(NewtonPolytope::hull(d.f_sigma.support())) == d.gamma);
}

TEST_CASE("H-representation for σ₃") {
  auto d = sigma3();
  auto hs = h_representation(d);
  REQUIRE(hs.size() == 4);
  std::set<Facet> got;
  for (const auto& h : hs) got.insert(to_facet(h));
  CHECK(got == oracle::facets(d.f_sigma.support()));
  // (3i1+2i2+i3)/8 >= 1
  bool seen = false;
  for (const auto& h : hs)
    if (h.q == 0) {
      seen = true;
      CHECK(h.at_least);
      CHECK(h.normal == rv({q(3, 8), q(2, 8), q(1, 8)}));
      CHECK(h.bound == 1);
    }
  CHECK(seen);
  // vertices tight on >= M-2 inequalities; origin violates an I+ one
  for (const auto& v : d.f_sigma.support()) {
    long tight = 0;
    for (const auto& h : hs) tight += dot(h.normal, to_rational(v)) == h.bound;
    CHECK(tight >= 2);
  }
  bool violated = false;
  for (const auto& h : hs)
    if (h.at_least && h.bound == 1) violated = true;  // 0 >= 1 fails
  CHECK(violated);
}

TEST_CASE("unaffected faces") {
  auto f = parse_laurent(kExample);
  auto en = enumerate_sigmas(f);
  auto P = newton_polytope(f);
  auto faces3 = unaffected_faces(f, en.choices[2]);
  std::set<std::vector<ExponentVector>> got;
  for (const auto& fc : faces3) got.insert(P.face_vertices(fc));
  // the monomials e1, e2, e4 and the faces among them
  for (const auto& fc : faces3)
    for (const auto& v : P.face_vertices(fc)) CHECK(v != ev({1, 2}));
  CHECK(got.count(pts({{5, 0}})) == 1);
  CHECK(got.count(pts({{2, 1}})) == 1);
  CHECK(got.count(pts({{0, 4}})) == 1);
  CHECK(got.count(pts({{5, 0}, {2, 1}})) == 1);

  // σ₁: nothing containing (5,0) survives
  for (const auto& fc : unaffected_faces(f, en.choices[0]))
    for (const auto& v : P.face_vertices(fc)) CHECK(v != ev({5, 0}));

  // M = N+1: every face is unaffected
  auto tri = parse_laurent("x1 + x2 + 1");
  CHECK(unaffected_faces(tri, enumerate_sigmas(tri).choices[0]).size() == newton_polytope(tri).faces().size());
}

TEST_CASE("find_unaffecting_sigma") {
  auto f = parse_laurent(kExample);
  auto u = find_unaffecting_sigma(f, ev({5, 4}));
  CHECK(u.index == 1);
  CHECK(u.k == 2);
  // vertex (0,4): any σ not attaching x' to the x2^4 monomial
  auto v = find_unaffecting_sigma(f, ev({0, 4}));
  CHECK(v.sigma.aux != std::vector<std::size_t>{3});
  auto tri = parse_laurent("x1 + x2 + 1");
  CHECK(find_unaffecting_sigma(tri, ev({1, 0})).index == 0);
}

TEST_CASE("all four σ of the example are simplicializing with exact invariants") {
  auto f = parse_laurent(kExample);
  std::vector<long> gammas;
  for (const auto& s : enumerate_sigmas(f).choices) {
    auto d = simplicial_data(f, s);
    CHECK(d.gamma > 0);
    CHECK(oracle_det(d.L) == Rational(d.gamma));
    CHECK(std::accumulate(d.B.begin(), d.B.end(), Integer(0)) == 0);
    CHECK(d.B[d.M] == d.gamma);
    gammas.push_back(d.gamma.get_si());
  }
  CHECK(gammas == std::vector<long>{1, 6, 7, 2});
}

TEST_CASE("negative determinant is fixed by a recorded row swap") {
  // the u-column makes the natural order of x1 + x2 + 1 negative
  auto f = parse_laurent("x1 + x2 + 1");
  auto d = simplicial_data(f, enumerate_sigmas(f).choices[0]);
  CHECK(d.gamma == 1);
  REQUIRE(d.row_swap.has_value());
  CHECK(*d.row_swap == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(d.L(0, 0) == 0);
  CHECK(d.L(0, 1) == 1);
  // x1*x2 + x1 + x2 is already positive
  auto g = parse_laurent("x1*x2 + x1 + x2");
  CHECK_FALSE(simplicial_data(g, enumerate_sigmas(g).choices[0]).row_swap.has_value());
}

TEST_CASE("property: random simpliciable instances") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<long> ex(0, 5);
  int instances = 0;
  for (int trial = 0; trial < 200 && instances < 40; ++trial) {
    const std::size_t N = 2 + trial % 2;
    const std::size_t M = N + 1 + static_cast<std::size_t>(trial / 2) % (6 - N);
    std::vector<ExponentVector> supp;
    while (supp.size() < M) {
      ExponentVector e;
      for (std::size_t i = 0; i < N; ++i) e.emplace_back(ex(rng));
      if (std::find(supp.begin(), supp.end(), e) == supp.end()) supp.push_back(e);
    }
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= N; ++i) vars.push_back("x" + std::to_string(i));
    auto f = from_support(vars, supp);
    for (const auto& s : enumerate_sigmas(f).choices) {
      std::optional<SimplicialData> od;
      try {
        od = simplicial_data(f, s);
      } catch (const DomainError&) {
        continue;
      }
      const SimplicialData& d = *od;
      ++instances;
      CAPTURE(f.to_string());
      // det(L)·L⁻¹ = γ·I
      auto prod = to_rational(d.L) * d.L_inv;
      for (std::size_t i = 0; i <= d.M; ++i)
        for (std::size_t j = 0; j <= d.M; ++j) CHECK(prod(i, j) == (i == j ? 1 : 0));
      CHECK(oracle_det(d.L) == Rational(d.gamma));
      CHECK(std::accumulate(d.B.begin(), d.B.end(), Integer(0)) == 0);
      CHECK(d.B[d.M] == d.gamma);
      // |B_q| against Laplace determinants of the omitted-row simplices
      for (std::size_t qq = 0; qq <= d.M; ++qq) {
        oracle::Mat m;
        std::vector<ExponentVector> rows;
        for (std::size_t r = 0; r <= d.M; ++r)
          if (r != qq) rows.push_back(d.exponent_row(r));
        for (std::size_t r = 1; r < rows.size(); ++r) {
          std::vector<Rational> row;
          for (std::size_t c = 0; c < rows[r].size(); ++c) row.push_back(Rational(rows[r][c] - rows[0][c]));
          m.push_back(row);
        }
        Rational vol = oracle::det(m);
        CHECK(abs(vol) == Rational(abs(d.B[qq])));
      }
      // H-representation equals the brute-force facets of conv(supp f^σ)
      std::set<Facet> got;
      for (const auto& h : h_representation_system(d)) got.insert(to_facet(h));
      CHECK(got == oracle::facets(d.f_sigma.support()));
      // support rows lie on their facets at level 1
      for (std::size_t qq = 0; qq < d.M; ++qq) {
        if (d.B[qq] == 0) continue;
        for (std::size_t r = 0; r < d.M; ++r)
          if (r != qq) CHECK(dot(d.v[qq], to_rational(d.exponent_row(r))) == 1);
      }
    }
  }
  CHECK(instances >= 20);
}
