#include "torusfib/hypergeom.hpp"

#include "torusfib/errors.hpp"
#include "torusfib/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace torusfib {

namespace {

std::vector<Rational> multiset_difference(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Rational pairing(const SimplicialData& data, std::size_t q, const ExponentVector& J) {
  if (q == data.M) return 0;  // v_{M+1} = 0
  return dot(data.v[q], to_rational(J));
}

Integer lcm_den(const std::vector<Rational>& xs, Integer acc) {
  for (const auto& x : xs) mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), x.get_den_mpz_t());
  return acc;
}

// ζ_m^a with a = value·m, which must be an integer.
long exponent_of(const Rational& value, std::uint32_t m) {
  Rational a = value * Rational(static_cast<long>(m));
  if (!is_integer(a)) throw ConsistencyError("root of unity outside the chosen cyclotomic modulus");
  Integer r = a.get_num() % static_cast<long>(m);
  if (r < 0) r += m;
  return r.get_si();
}

// Π (t - ζ^{a_i}), grouping full cosets {a + k·m/d} into t^d - ζ^{ad} so the
// coefficients stay sparse in the group ring.
CycPoly product_of_roots(const std::vector<long>& exps, std::uint32_t m) {
  std::vector<long> count(m, 0);
  for (auto a : exps) ++count[static_cast<std::size_t>(a)];
  std::vector<CycPoly> factors;
  for (std::uint32_t d = m; d >= 2; --d) {
    if (m % d) continue;
    const std::uint32_t step = m / d;
    for (std::uint32_t a = 0; a < step; ++a) {
      while (true) {
        bool full = true;
        for (std::uint32_t k = 0; k < d && full; ++k) full = count[a + k * step] > 0;
        if (!full) break;
        for (std::uint32_t k = 0; k < d; ++k) --count[a + k * step];
        CycPoly f(d + 1);
        f[0] = -Cyclotomic::root(m, static_cast<long>(a) * d);
        f[d] = Cyclotomic::constant(m, 1);
        factors.push_back(std::move(f));
      }
    }
  }
  for (std::uint32_t a = 0; a < m; ++a)
    for (long c = 0; c < count[a]; ++c) factors.push_back({-Cyclotomic::root(m, a), Cyclotomic::constant(m, 1)});
  std::sort(factors.begin(), factors.end(), [](const CycPoly& x, const CycPoly& y) { return x.size() > y.size(); });
  CycPoly out{Cyclotomic::constant(m, 1)};
  for (const auto& f : factors) out = poly_mul(out, f);
  return out;
}

CycPoly binomial_factor(std::size_t degree, long root_exp, std::uint32_t m) {
  CycPoly f(degree + 1);
  f[0] = -Cyclotomic::root(m, root_exp);
  f[degree] = Cyclotomic::constant(m, 1);
  return f;
}

// Companion matrix with sub-diagonal ones and last column -c_0 .. -c_{n-1}.
CycMatrix companion(const CycPoly& p, std::uint32_t m) {
  const std::size_t n = p.size() - 1;
  CycMatrix h(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) h(i + 1, i) = Cyclotomic::constant(m, 1);
  for (std::size_t i = 0; i < n; ++i) h(i, n - 1) += -p[i];
  return h;
}

// Inverse of the companion matrix of p (needs p(0) != 0).
CycMatrix companion_inverse(const CycPoly& p, std::uint32_t m) {
  const std::size_t n = p.size() - 1;
  Cyclotomic inv0 = p[0].inverse();
  CycMatrix h(n, n);
  for (std::size_t j = 0; j + 1 < n; ++j) h(j, j + 1) = Cyclotomic::constant(m, 1);
  for (std::size_t i = 1; i < n; ++i) h(i - 1, 0) = -(p[i] * inv0);
  h(n - 1, 0) = -inv0;
  return h;
}

CycMatrix power(const CycMatrix& a, const Integer& e, std::uint32_t m) {
  CycMatrix out = identity_matrix(a.rows(), m);
  for (Integer i = 0; i < e; ++i) out = multiply(out, a);
  return out;
}

Rational evaluate(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Coefficients (low first) of Π (x + shift_i).
std::vector<Rational> expand(const std::vector<Rational>& shifts) {
  std::vector<Rational> c{Rational(1)};
  for (const auto& s : shifts) {
    std::vector<Rational> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i] * s;
      next[i + 1] += c[i];
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace

Operators build_operators(const SimplicialData& data, const ExponentVector& J) {
  Operators ops;
  auto forms = linear_forms(data, J);
  const Rational g(data.gamma);
  ops.delta_sigma = 0;
  for (std::size_t q = 0; q <= data.M; ++q) {
    const Integer& b = data.B[q];
    if (b == 0) continue;
    const Rational& l0 = forms[q].at_zero;
    const Rational slope = Rational(b) / g;
    if (b > 0) {
      ++ops.plus_count;
      ops.delta_sigma += b;
      // ℒ_q(J, -ϑ) + j = -slope·(ϑ - γ(ℒ_q(J,0) + j)/B_q)
      for (Integer j = 0; j < b; ++j) {
        ops.P.roots.push_back(g * (l0 + Rational(j)) / Rational(b));
        ops.P.leading *= -slope;
      }
    } else {
      // -ℒ_q(J, -ϑ) - j = slope·(ϑ - γ(ℒ_q(J,0) + j)/B_q)
      for (Integer j = 0; j < -b; ++j) {
        ops.Q.roots.push_back(g * (l0 + Rational(j)) / Rational(b));
        ops.Q.leading *= slope;
      }
    }
  }
  if (Integer(static_cast<unsigned long>(ops.P.order())) != ops.delta_sigma || ops.P.order() != ops.Q.order())
    throw ConsistencyError("operator orders differ from Σ_{I+} B");
  std::sort(ops.P.roots.begin(), ops.P.roots.end());
  std::sort(ops.Q.roots.begin(), ops.Q.roots.end());
  ops.P_t = ops.P;
  ops.Q_t = ops.Q;
  for (auto& r : ops.P_t.roots) r /= g;
  for (auto& r : ops.Q_t.roots) r /= g;
  return ops;
}

ExponentSets exponent_sets(std::vector<Rational> c_plus, std::vector<Rational> c_minus) {
  ExponentSets s;
  std::sort(c_plus.begin(), c_plus.end());
  std::sort(c_minus.begin(), c_minus.end());
  s.c_plus = std::move(c_plus);
  s.c_minus = std::move(c_minus);
  std::set_intersection(s.c_plus.begin(), s.c_plus.end(), s.c_minus.begin(), s.c_minus.end(),
                        std::back_inserter(s.c_zero));
  s.plus_reduced = multiset_difference(s.c_plus, s.c_zero);
  s.minus_reduced = multiset_difference(s.c_minus, s.c_zero);
  s.delta_bar = s.plus_reduced.size();
  return s;
}

ExponentSets exponent_sets(const SimplicialData& data, const ExponentVector& J) {
  if (J.size() != data.M - 1) throw DomainError("J must have length M-1");
  std::vector<Rational> plus, minus;
  const Rational g(data.gamma);
  for (std::size_t q = 0; q <= data.M; ++q) {
    const Integer& b = data.B[q];
    if (b == 0) continue;
    Rational shift = (pairing(data, q, J) - 1) / g;
    if (b > 0) {
      for (Integer j = 0; j < b; ++j) plus.push_back(Rational(j) / Rational(b) - shift);
    } else {
      for (Integer j = 1; j <= -b; ++j) minus.push_back(Rational(j) / Rational(b) - shift);
    }
  }
  ExponentSets s = exponent_sets(std::move(plus), std::move(minus));
  if (s.c_plus.size() != s.c_minus.size()) throw ConsistencyError("|C+| != |C-|");
  return s;
}

bool roots_agree_mod_z(const Operators& ops, const ExponentSets& sets) {
  auto frac = [](const Rational& x) {
    Rational f = x - Rational(floor_div(x));
    return f;
  };
  std::vector<Rational> a, b;
  for (const auto& r : ops.P_t.roots) a.push_back(frac(r));
  for (const auto& c : sets.c_plus) b.push_back(frac(-c));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

ReducedOperator reduced_operator(const ExponentSets& sets) {
  if (sets.plus_reduced.size() != sets.minus_reduced.size())
    throw ConsistencyError("reduced exponent sets differ in size");
  return {sets.plus_reduced, sets.minus_reduced};
}

std::vector<Rational> simple_nonresonant_exponents(const ReducedOperator& op) {
  std::vector<Rational> out;
  for (const auto& a : op.alpha_plus) {
    if (std::count(op.alpha_plus.begin(), op.alpha_plus.end(), a) != 1) continue;
    bool resonant = false;
    for (const auto& b : op.alpha_plus) {
      Rational d = a - b;  // (-b) - (-a): another root at ρ + d
      if (d > 0 && is_integer(d)) resonant = true;
    }
    if (!resonant) out.push_back(-a);
  }
  return out;
}

FrobeniusSeries frobenius_series(const ReducedOperator& op, const Rational& rho, long K) {
  if (K < 0) throw DomainError("truncation order must be nonnegative");
  const Rational alpha = -rho;
  auto mult = std::count(op.alpha_plus.begin(), op.alpha_plus.end(), alpha);
  if (mult == 0) throw DomainError("ρ = " + to_string(rho) + " is not an exponent at t = 0");
  if (mult > 1) throw DomainError("ρ = " + to_string(rho) + " is a repeated exponent (logarithmic case)");
  for (const auto& b : op.alpha_plus) {
    Rational d = alpha - b;
    if (d > 0 && is_integer(d))
      throw DomainError("ρ = " + to_string(rho) + " is resonant with exponent " + to_string(Rational(-b)));
  }
  FrobeniusSeries s;
  s.rho = rho;
  s.a.push_back(1);
  for (long k = 1; k <= K; ++k) {
    Rational A = 1, B = 1;
    for (const auto& ap : op.alpha_plus) A *= rho + k + ap;
    for (const auto& am : op.alpha_minus) B *= rho + (k - 1) + am + 1;
    if (A == 0) throw DomainError("resonance at order " + std::to_string(k));
    s.a.push_back(B / A * s.a.back());
  }
  return s;
}

bool verify_annihilation(const ReducedOperator& op, const FrobeniusSeries& series, long K) {
  std::vector<Rational> shifted_minus;
  for (const auto& am : op.alpha_minus) shifted_minus.push_back(am + 1);
  auto A = expand(op.alpha_plus);
  auto B = expand(shifted_minus);
  const long top = std::min<long>(K, static_cast<long>(series.a.size()) - 1);
  if (top < K) return false;
  // ϑ t^{ρ+k} = (ρ+k) t^{ρ+k}; the t·B(ϑ) part shifts degree by one.
  for (long k = 0; k <= K; ++k) {
    Rational c = evaluate(A, series.rho + k) * series.a[k];
    if (k >= 1) c -= evaluate(B, series.rho + (k - 1)) * series.a[k - 1];
    if (c != 0) return false;
  }
  return true;
}

std::uint32_t exponent_modulus(const ExponentSets& sets) {
  Integer m = lcm_den(sets.c_plus, Integer(1));
  m = lcm_den(sets.c_minus, m);
  if (!m.fits_uint_p() || m > 100000) throw DomainError("cyclotomic modulus too large: " + m.get_str());
  return static_cast<std::uint32_t>(m.get_ui());
}

CharPolys char_polys(const ExponentSets& sets) {
  CharPolys cp;
  cp.m = exponent_modulus(sets);
  std::vector<long> e0, einf;
  for (const auto& a : sets.plus_reduced) e0.push_back(exponent_of(-a, cp.m));
  for (const auto& a : sets.minus_reduced) einf.push_back(exponent_of(-a, cp.m));
  cp.x0 = product_of_roots(e0, cp.m);
  cp.x_inf = product_of_roots(einf, cp.m);
  return cp;
}

CharPolys char_polys(const SimplicialData& data, const ExponentVector& J, const ExponentSets& sets) {
  CharPolys cp = char_polys(sets);
  if (!sets.c_zero.empty()) return cp;
  cp.closed_form_checked = true;
  const Rational g(data.gamma);
  CycPoly x0{Cyclotomic::constant(cp.m, 1)}, xinf = x0, xinf_printed = x0;
  for (std::size_t q = 0; q <= data.M; ++q) {
    const Integer& b = data.B[q];
    if (b == 0) continue;
    Rational theta = (1 - pairing(data, q, J)) * Rational(b) / g;  // e^{∓2πi·theta}
    if (b > 0) {
      x0 = poly_mul(x0, binomial_factor(b.get_ui(), exponent_of(-theta, cp.m), cp.m));
    } else {
      std::size_t d = Integer(-b).get_ui();
      xinf = poly_mul(xinf, binomial_factor(d, exponent_of(theta, cp.m), cp.m));
      xinf_printed = poly_mul(xinf_printed, binomial_factor(d, exponent_of(-theta, cp.m), cp.m));
    }
  }
  cp.x0_matches_closed_form = poly_equal(cp.x0, x0);
  cp.x_inf_matches_closed_form = poly_equal(cp.x_inf, xinf);
  cp.x_inf_matches_printed_sign = poly_equal(cp.x_inf, xinf_printed);
  return cp;
}

EigenData eigen_data(const CycMatrix& g, std::uint32_t m) {
  EigenData e;
  e.m = m;
  const std::size_t n = g.rows();
  CycPoly cp = characteristic_polynomial(g);
  auto mult = root_of_unity_multiplicities(cp, m);
  for (std::uint32_t a = 0; a < m; ++a)
    if (mult[a] > 0) {
      e.roots.emplace_back(a, mult[a]);
      e.total += mult[a];
    }
  const double two_pi = 2 * std::numbers::pi;
  for (const auto& [a, k] : e.roots) {
    std::complex<double> z = std::polar(1.0, two_pi * a / m);
    e.max_modulus_error = std::max(e.max_modulus_error, std::abs(std::abs(z) - 1.0));
  }
  // Floating cross-check: power sums of the eigenvalues against traces of powers.
  auto G = to_complex(g);
  std::vector<std::vector<std::complex<double>>> P = G;
  for (std::size_t k = 1; k <= n; ++k) {
    std::complex<double> tr = 0, sum = 0;
    for (std::size_t i = 0; i < n; ++i) tr += P[i][i];
    for (const auto& [a, mu] : e.roots) sum += static_cast<double>(mu) * std::polar(1.0, two_pi * a * k / m);
    e.trace_error = std::max(e.trace_error, std::abs(tr - sum));
    if (k == n) break;
    std::vector<std::vector<std::complex<double>>> next(n, std::vector<std::complex<double>>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (P[i][l] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] += P[i][l] * G[l][j];
      }
    P = std::move(next);
  }
  return e;
}

MonodromyRep monodromy(const CharPolys& cp, const Integer& gamma) {
  const std::size_t n = cp.x0.size() - 1;
  if (n == 0) throw DomainError("Δ̄ = 0: the reduced operator is trivial");
  if (cp.x_inf.size() != cp.x0.size()) throw DomainError("X_0 and X_inf differ in degree");
  MonodromyRep rep;
  rep.m = cp.m;
  rep.n = n;
  rep.gamma = gamma;
  const std::uint32_t m = cp.m;
  rep.h0 = companion(cp.x0, m);
  rep.h_inf_inv = companion(cp.x_inf, m);
  rep.h_inf = companion_inverse(cp.x_inf, m);
  CycMatrix h0_inv = companion_inverse(cp.x0, m);
  if (!is_identity(multiply(rep.h_inf, rep.h_inf_inv)) || !is_identity(multiply(rep.h0, h0_inv)))
    throw ConsistencyError("companion inverse is wrong");
  rep.h1 = multiply(rep.h_inf_inv, h0_inv);
  rep.relation_ok = is_identity(multiply(multiply(rep.h0, rep.h_inf), rep.h1));
  rep.companion_ok = poly_equal(characteristic_polynomial(rep.h0), cp.x0) &&
                     poly_equal(characteristic_polynomial(rep.h_inf_inv), cp.x_inf);
  rep.M0 = power(rep.h0, gamma, m);
  rep.M_inf = power(rep.h_inf, gamma, m);
  rep.M_omega.push_back(rep.h1);
  for (Integer i = 1; i < gamma; ++i)
    rep.M_omega.push_back(multiply(multiply(rep.h_inf_inv, rep.M_omega.back()), rep.h_inf));
  rep.conjugacy_ok = true;
  for (std::size_t i = 0; i + 1 < rep.M_omega.size(); ++i)
    if (!equal(multiply(rep.h_inf, rep.M_omega[i + 1]), multiply(rep.M_omega[i], rep.h_inf))) rep.conjugacy_ok = false;
  CycPoly first = characteristic_polynomial(rep.M_omega.front());
  rep.char_polys_equal = true;
  for (std::size_t i = 1; i < rep.M_omega.size(); ++i)
    if (!poly_equal(characteristic_polynomial(rep.M_omega[i]), first)) rep.char_polys_equal = false;
  return rep;
}

JordanReport jordan_report(const SimplicialData& data, const ExponentVector& J) {
  JordanReport jr;
  jr.r = hodge_pole_prediction(data, J).r;
  ExponentSets sets = exponent_sets(data, J);
  for (const auto& a : sets.c_zero)
    if (is_integer(a)) ++jr.c0_integers;
  jr.size = jr.r + 1 - jr.c0_integers;
  for (const auto& a : sets.plus_reduced)
    if (is_integer(a)) ++jr.integer_exponents;
  CharPolys cp = char_polys(sets);
  CycPoly cur = cp.x0;
  Cyclotomic one = Cyclotomic::constant(cp.m, 1);
  while (cur.size() > 1) {
    auto [q, rem] = divide_linear(cur, one);
    if (!rem.is_zero()) break;
    ++jr.x0_unit_multiplicity;
    cur = std::move(q);
  }
  jr.consistent = jr.size == jr.integer_exponents && jr.integer_exponents == jr.x0_unit_multiplicity;
  return jr;
}

SingularLocus singular_locus(const SimplicialData& data) {
  Integer plus = 1, minus = 1;
  for (std::size_t q = 0; q <= data.M; ++q) {
    if (data.B[q] > 0) plus *= data.B[q];
    if (data.B[q] < 0) minus *= data.B[q];
  }
  SingularLocus s;
  s.s_pow_gamma = Rational(plus, minus);
  s.s_pow_gamma.canonicalize();
  s.gamma = data.gamma;
  return s;
}

std::vector<std::pair<Rational, long>> exponent_multiplicities(const ExponentSets& sets) {
  std::vector<std::pair<Rational, long>> out;
  for (const auto& a : sets.plus_reduced) {
    if (!out.empty() && out.back().first == a) ++out.back().second;
    else out.emplace_back(a, 1);
  }
  return out;
}

}  // namespace torusfib
