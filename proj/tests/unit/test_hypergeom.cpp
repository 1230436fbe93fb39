#include "doctest.h"
#include "helpers.hpp"

#include "torusfib/errors.hpp"
#include "torusfib/hypergeom.hpp"
#include "torusfib/lattice.hpp"
#include "torusfib/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

using namespace torusfib;

namespace {

SimplicialData sigma(std::size_t i) {
  auto f = parse_laurent(kExample);
  return simplicial_data(f, enumerate_sigmas(f).choices[i]);
}

std::vector<Rational> sorted(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Coefficients of Π (t - e^{-2πiα}) in floating point, low degree first.
std::vector<std::complex<double>> float_poly(const std::vector<Rational>& alphas) {
  std::vector<std::complex<double>> c{1.0};
  for (const auto& a : alphas) {
    auto r = std::polar(1.0, -2 * std::numbers::pi * a.get_d());
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] -= r * c[i];
      next[i + 1] += c[i];
    }
    c = next;
  }
  return c;
}

std::vector<ExponentVector> sweep_points(const SimplicialData& d, long k_max) {
  auto D0 = classification_polytope(d);
  std::vector<ExponentVector> out;
  for (const auto& J : lattice_points(D0, k_max).points) {
    if (std::all_of(J.begin(), J.end(), [](const Integer& x) { return x == 0; })) continue;
    if (mellin_skeleton(d, J).degenerate) continue;
    out.push_back(J);
  }
  return out;
}

}  // namespace

TEST_CASE("operators at J = (1,2,1)") {
  auto d = sigma(2);
  auto ops = build_operators(d, ev({1, 2, 1}));
  CHECK(ops.P.order() == 20);
  CHECK(ops.Q.order() == 20);
  CHECK(ops.delta_sigma == 20);
  CHECK(ops.plus_count == 3);
  // ℒ_{M+1} = z gives ϑ_s roots 0..γ-1
  for (long j = 0; j < 7; ++j) CHECK(std::count(ops.P.roots.begin(), ops.P.roots.end(), Rational(j)) >= 1);
  auto sets = exponent_sets(d, ev({1, 2, 1}));
  CHECK(roots_agree_mod_z(ops, sets));
}

TEST_CASE("exponent sets at J = (1,2,1)") {
  auto sets = exponent_sets(sigma(2), ev({1, 2, 1}));
  std::vector<Rational> plus, minus;
  for (long j = 0; j < 8; ++j) plus.push_back(q(j, 8));
  for (long j = 0; j < 5; ++j) plus.push_back(q(j, 5));
  for (long j = 0; j < 7; ++j) plus.push_back(q(j + 1, 7));
  for (long j = 1; j <= 20; ++j) minus.push_back(q(-j, 20));
  CHECK(sets.c_plus == sorted(plus));
  CHECK(sets.c_minus == sorted(minus));
  CHECK(sets.c_zero.empty());
  CHECK(sets.delta_bar == 20);
}

TEST_CASE("multiset semantics") {
  auto full = exponent_sets({q(1, 2), q(1, 3)}, {q(1, 3), q(1, 2)});
  CHECK(full.delta_bar == 0);
  CHECK(reduced_operator(full).order() == 0);
  auto twice = exponent_sets({q(1, 2), q(1, 2)}, {q(1, 2), 0});
  CHECK(twice.c_zero == std::vector<Rational>{q(1, 2)});
  CHECK(twice.plus_reduced == std::vector<Rational>{q(1, 2)});
  CHECK(twice.delta_bar == 1);
}

TEST_CASE("reduced operator at J = (1,2,1)") {
  auto red = reduced_operator(exponent_sets(sigma(2), ev({1, 2, 1})));
  CHECK(red.order() == 20);
  std::vector<Rational> shifted, expect;
  for (const auto& a : red.alpha_minus) shifted.push_back(a + 1);
  for (long j = 1; j <= 20; ++j) expect.push_back(1 - q(j, 20));
  CHECK(sorted(shifted) == sorted(expect));
}

TEST_CASE("order-one Frobenius series") {
  auto red = reduced_operator(exponent_sets({q(1, 2)}, {0}));
  auto s = frobenius_series(red, q(-1, 2), 10);
  CHECK(s.a[0] == 1);
  CHECK(s.a[1] == q(1, 2));
  // hand recurrence a_k = (k - 1/2)/k · a_{k-1}
  Rational a = 1;
  for (long k = 1; k <= 10; ++k) {
    a *= (Rational(k) - q(1, 2)) / Rational(k);
    CHECK(s.a[k] == a);
  }
  CHECK(verify_annihilation(red, s, 10));
  auto broken = s;
  broken.a[4] += 1;
  CHECK_FALSE(verify_annihilation(red, broken, 10));
}

TEST_CASE("Frobenius refusals") {
  auto rep = reduced_operator(exponent_sets({q(1, 2), q(1, 2)}, {0, q(1, 3)}));
  CHECK_THROWS_AS(frobenius_series(rep, q(-1, 2), 5), DomainError);
  auto res = reduced_operator(exponent_sets({0, 1}, {q(1, 2), q(1, 3)}));
  // exponents 0 and -1: the series at -1 would run into 0
  CHECK_THROWS_AS(frobenius_series(res, -1, 5), DomainError);
  CHECK_NOTHROW(frobenius_series(res, 0, 5));
  CHECK_THROWS_AS(frobenius_series(res, q(1, 7), 5), DomainError);
}

TEST_CASE("Frobenius series at J = (1,2,1) are annihilated through K = 25") {
  auto red = reduced_operator(exponent_sets(sigma(2), ev({1, 2, 1})));
  auto rhos = simple_nonresonant_exponents(red);
  CHECK_FALSE(rhos.empty());
  for (const auto& rho : rhos) CHECK(verify_annihilation(red, frobenius_series(red, rho, 25), 25));
}

TEST_CASE("characteristic polynomials") {
  auto half = char_polys(exponent_sets({q(1, 2)}, {0}));
  CHECK(poly_equal(half.x0, {Cyclotomic::constant(2, 1), Cyclotomic::constant(2, 1)}));

  auto d = sigma(2);
  auto sets = exponent_sets(d, ev({1, 2, 1}));
  auto cp = char_polys(d, ev({1, 2, 1}), sets);
  CHECK(cp.m == 280);
  CHECK(cp.closed_form_checked);
  CHECK(cp.x0_matches_closed_form);
  CHECK(cp.x_inf_matches_closed_form);
  // floating oracle for the coefficients
  auto fx = float_poly(sets.plus_reduced);
  REQUIRE(fx.size() == cp.x0.size());
  double err = 0;
  for (std::size_t i = 0; i < fx.size(); ++i) err = std::max(err, std::abs(fx[i] - cp.x0[i].to_complex()));
  CHECK(err < 1e-9);
  auto mult = root_of_unity_multiplicities(cp.x0, cp.m);
  CHECK(mult[0] == 3);
}

TEST_CASE("monodromy in the 1x1 case") {
  CharPolys cp;
  cp.m = 2;
  cp.x0 = {Cyclotomic::constant(2, 1), Cyclotomic::constant(2, 1)};    // t + 1
  cp.x_inf = {Cyclotomic::constant(2, -1), Cyclotomic::constant(2, 1)};  // t - 1
  auto rep = monodromy(cp, 1);
  CHECK(rep.h0(0, 0) == Cyclotomic::constant(2, -1));
  CHECK(rep.h_inf_inv(0, 0) == Cyclotomic::constant(2, 1));
  CHECK(rep.h1(0, 0) == Cyclotomic::constant(2, -1));
  CHECK(rep.relation_ok);
  CharPolys empty;
  empty.x0 = {Cyclotomic::constant(1, 1)};
  empty.x_inf = empty.x0;
  CHECK_THROWS_AS(monodromy(empty, 1), DomainError);
}

TEST_CASE("monodromy at J = (1,2,1)") {
  auto d = sigma(2);
  auto sets = exponent_sets(d, ev({1, 2, 1}));
  auto cp = char_polys(d, ev({1, 2, 1}), sets);
  auto rep = monodromy(cp, d.gamma);
  CHECK(rep.n == 20);
  CHECK(rep.M_omega.size() == 7);
  CHECK(rep.relation_ok);
  CHECK(rep.companion_ok);
  CHECK(rep.conjugacy_ok);
  CHECK(rep.char_polys_equal);
  for (const auto* g : {&rep.M0, &rep.M_inf, &rep.h1}) {
    auto e = eigen_data(*g, cp.m);
    CHECK(e.total == 20);
    CHECK(e.max_modulus_error <= 1e-10);
    CHECK(e.trace_error < 1e-8);
  }
}

TEST_CASE("Jordan report and singular locus") {
  auto d = sigma(2);
  auto jr = jordan_report(d, ev({1, 2, 1}));
  CHECK(jr.r == 2);
  CHECK(jr.c0_integers == 0);
  CHECK(jr.size == 3);
  CHECK(jr.x0_unit_multiplicity == 3);
  CHECK(jr.consistent);
  auto sl = singular_locus(d);
  CHECK(sl.s_pow_gamma == -14);
  CHECK(sl.gamma == 7);
}

TEST_CASE("property: exponent sets, characteristic polynomials and Frobenius series over the sweep") {
  for (std::size_t i = 0; i < 4; ++i) {
    auto d = sigma(i);
    Integer sum = 0;
    for (const auto& b : d.B)
      if (b > 0) sum += b;
    for (const auto& J : sweep_points(d, 2)) {
      CAPTURE(i);
      CAPTURE(to_string(J));
      auto sets = exponent_sets(d, J);
      CHECK(Integer(static_cast<unsigned long>(sets.c_plus.size())) == sum);
      CHECK(sets.c_minus.size() == sets.c_plus.size());
      CHECK(sets.minus_reduced.size() == sets.delta_bar);
      CHECK(roots_agree_mod_z(build_operators(d, J), sets));
      if (sets.delta_bar == 0) continue;
      auto cp = char_polys(sets);
      CHECK(cp.x0.size() == sets.delta_bar + 1);
      CHECK(cp.x0.back() == Cyclotomic::constant(cp.m, 1));
      long total0 = 0, totalinf = 0;
      for (auto m : root_of_unity_multiplicities(cp.x0, cp.m)) total0 += m;
      for (auto m : root_of_unity_multiplicities(cp.x_inf, cp.m)) totalinf += m;
      CHECK(total0 == static_cast<long>(sets.delta_bar));
      CHECK(totalinf == static_cast<long>(sets.delta_bar));
      long ints = std::count_if(sets.plus_reduced.begin(), sets.plus_reduced.end(), [](const Rational& a) { return is_integer(a); });
      CHECK(root_of_unity_multiplicities(cp.x0, cp.m)[0] == ints);
      auto red = reduced_operator(sets);
      for (const auto& rho : simple_nonresonant_exponents(red))
        CHECK(verify_annihilation(red, frobenius_series(red, rho, 25), 25));
    }
  }
}

// Literal bridge between the pole order and the Jordan cell size, on the σ₃ sweep.
TEST_CASE("property: maximal pole order equals the Jordan size whenever r >= 1") {
  auto d = sigma(2);
  auto D0 = classification_polytope(d);
  long n = 0, bad = 0;
  std::ostringstream os;
  for (const auto& J : sweep_points(d, 3)) {
    auto h = hodge_pole_prediction(d, D0, J);
    if (h.r < 1) continue;
    ++n;
    auto rep = enumerate_poles(mellin_skeleton(d, J), std::min(h.lower, h.upper) - 1);
    auto jr = jordan_report(d, J);
    if (rep.maximal_order != jr.size && bad++ < 4)
      os << to_string(J) << ": pole order " << rep.maximal_order << " at " << to_string(*rep.maximal) << ", Jordan size "
         << jr.size << "\n";
  }
  INFO(n << " points with r >= 1; mismatches:\n" << os.str());
  CHECK(bad == 0);
}

// Size mismatches are reported through the flag, never reconciled.
TEST_CASE("property: Jordan cross-check flag reflects the comparison") {
  auto d = sigma(2);
  for (const auto& J : sweep_points(d, 3)) {
    auto jr = jordan_report(d, J);
    CHECK(jr.integer_exponents == jr.x0_unit_multiplicity);
    CHECK(jr.consistent == (jr.size == jr.integer_exponents));
  }
}
