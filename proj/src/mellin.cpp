#include "torusfib/mellin.hpp"

#include "torusfib/errors.hpp"
#include "torusfib/lattice.hpp"

#include <algorithm>
#include <map>

namespace torusfib {

namespace {

bool nonpositive_integer(const Rational& x) { return is_integer(x) && x <= 0; }

RationalVector scaled(const ExponentVector& J, long k) {
  RationalVector p(J.size());
  for (std::size_t i = 0; i < J.size(); ++i) {
    p[i] = Rational(J[i], Integer(k));
    p[i].canonicalize();
  }
  return p;
}

std::string describe(const Rational& z) { return to_string(z); }

// Three-class inequalities <v_q, J> against the level k, exempting <v_q, J> = 0.
void check_inequalities(const SimplicialData& data, const ExponentVector& J, long k, CrossCheck& out) {
  RationalVector Jr = to_rational(J);
  const Rational kk(k);
  for (std::size_t q = 0; q < data.M; ++q) {
    Rational val = dot(data.v[q], Jr);
    if (val == 0) continue;
    Rational lo, hi;
    const Integer& b = data.B[q];
    if (b == 0) {
      lo = 0;
      hi = kk;
    } else if (b > 0) {
      lo = kk;
      hi = kk * (1 + Rational(data.gamma) / Rational(b));
    } else {
      lo = kk * (1 + Rational(data.gamma) / Rational(b));
      hi = kk;
    }
    std::string where = "q=" + std::to_string(q + 1) + " <v,J>=" + describe(val) + " bounds (" + describe(lo) + ", " +
                        describe(hi) + ")";
    if (val < lo || val > hi)
      out.violations.push_back({J, k, "inequality", where});
    else if (val == lo || val == hi)
      out.boundary.push_back({J, q, where});
  }
}

std::string source_list(const Pole& p) {
  std::string s;
  for (auto q : p.sources) s += (s.empty() ? "" : ",") + std::to_string(q + 1);
  return s;
}

}  // namespace

MellinSkeleton mellin_skeleton(const SimplicialData& data, const ExponentVector& J) {
  const std::size_t M = data.M;
  if (J.size() != M - 1) throw DomainError("J must have length M-1 = " + std::to_string(M - 1));
  MellinSkeleton sk;
  sk.J = J;
  for (std::size_t q = 0; q <= M; ++q) {
    Rational at0 = (Rational(dot(data.alpha[q], J)) + Rational(data.C[q])) / Rational(data.gamma);
    Rational slope = Rational(data.B[q]) / Rational(data.gamma);
    if (data.B[q] > 0) {
      sk.numerator.push_back({q, slope, at0});
    } else if (data.B[q] < 0) {
      sk.denominator.push_back({q, -slope, 1 - at0});
    } else {
      sk.constants.push_back({q, at0});
      if (nonpositive_integer(at0)) sk.degenerate = true;
    }
  }
  return sk;
}

PoleReport enumerate_poles(const MellinSkeleton& sk, const Rational& z_min) {
  if (sk.degenerate) throw DomainError("degenerate skeleton: a constant Γ factor sits at a nonpositive integer");
  std::map<Rational, std::vector<std::size_t>> hits;
  for (const auto& g : sk.numerator) {
    if (g.slope <= 0) throw DomainError("numerator Γ factor with nonpositive slope");
    // g.at(z) = -n  <=>  z = (-n - shift)/slope, and z >= z_min  <=>  n <= -shift - slope*z_min
    Integer n_max = floor_div(-g.shift - g.slope * z_min);
    for (Integer n = 0; n <= n_max; ++n) hits[(Rational(-n) - g.shift) / g.slope].push_back(g.q);
  }
  PoleReport rep;
  for (auto it = hits.rbegin(); it != hits.rend(); ++it) {
    const Rational& z = it->first;
    long num = static_cast<long>(it->second.size());
    long den = 0;
    for (const auto& g : sk.denominator)
      if (nonpositive_integer(g.at(z))) ++den;
    if (den > 0) rep.cancellations.push_back({z, num, den});
    if (num - den >= 1) rep.poles.push_back({z, num - den, it->second});
  }
  if (!rep.poles.empty()) {
    rep.maximal = rep.poles.front().z;
    rep.maximal_order = rep.poles.front().order;
  }
  return rep;
}

HodgePolePrediction hodge_pole_prediction(const SimplicialData& data, const ExponentVector& J) {
  return hodge_pole_prediction(data, classification_polytope(data), J);
}

HodgePolePrediction hodge_pole_prediction(const SimplicialData& data, const NewtonPolytope& delta0,
                                          const ExponentVector& J) {
  const long M = static_cast<long>(data.M);
  HodgePolePrediction h;
  h.k = delta_degree(delta0, J);
  h.p = M - 1 - h.k;
  RationalVector Jr = to_rational(J);
  const Rational kk(h.k);
  for (std::size_t q = 0; q < data.M; ++q) {
    if (data.B[q] == 0) continue;
    if (dot(data.v[q], Jr) != kk) continue;
    (data.B[q] > 0 ? h.tight_plus : h.tight_minus).push_back(q);
  }
  h.r = static_cast<long>(h.tight_plus.size());
  h.w = M - 2 + h.r;
  Rational max_ratio = 0;
  for (std::size_t q = 0; q <= data.M; ++q)
    if (data.B[q] > 0) max_ratio = std::max(max_ratio, Rational(Rational(data.gamma) / Rational(data.B[q])));
  h.upper = 1 - kk;
  h.lower = 1 - kk * (1 + max_ratio);
  if (h.r >= 1) {
    h.exact = true;
    h.predicted_max = 1 - kk;
    h.order_bound = h.r == 1 ? 1 : h.r + 1;
  }
  return h;
}

CrossCheck crosscheck_theorem41(const SimplicialData& data, long k_max) {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  CrossCheck out;
  NewtonPolytope delta0 = classification_polytope(data);
  for (const auto& J : lattice_points(delta0, k_max).points) {
    if (std::all_of(J.begin(), J.end(), [](const Integer& x) { return x == 0; })) continue;
    ++out.checked;
    HodgePolePrediction pred = hodge_pole_prediction(data, delta0, J);
    MellinSkeleton sk = mellin_skeleton(data, J);
    if (sk.degenerate) {
      out.degenerate.push_back(J);
      continue;
    }
    if (!pred.exact) check_inequalities(data, J, pred.k, out);
    ++out.pole_checks;
    Rational z_min = std::min(pred.lower, pred.upper) - 1;
    PoleReport rep = enumerate_poles(sk, z_min);
    std::string seen = rep.maximal ? ("max pole " + describe(*rep.maximal) + " of order " +
                                      std::to_string(rep.maximal_order) + " from rows " + source_list(rep.poles.front()))
                                   : std::string("no pole");
    auto above_kind = [&]() {
      const auto& src = rep.poles.front().sources;
      bool only_z = std::all_of(src.begin(), src.end(), [&](std::size_t q) { return q == data.M; });
      return std::string(only_z ? "gamma_z_pole_above_prediction" : "facet_pole_above_prediction");
    };
    std::string ctx = "; k=" + std::to_string(pred.k) + " p=" + std::to_string(pred.p) + " r=" + std::to_string(pred.r);
    if (pred.exact) {
      if (!rep.maximal)
        out.violations.push_back({J, pred.k, "no_pole", seen + "; predicted " + describe(pred.predicted_max) + ctx});
      else if (*rep.maximal > pred.predicted_max)
        out.violations.push_back({J, pred.k, above_kind(), seen + "; predicted " + describe(pred.predicted_max) + ctx});
      else if (*rep.maximal < pred.predicted_max)
        out.violations.push_back({J, pred.k, "pole_below_prediction", seen + "; predicted " + describe(pred.predicted_max) + ctx});
      else if (rep.maximal_order > pred.order_bound)
        out.violations.push_back({J, pred.k, "order_exceeds_bound",
                                  seen + "; bound " + std::to_string(pred.order_bound) + ctx});
    } else {
      std::string iv = "; predicted interval (" + describe(pred.lower) + ", " + describe(pred.upper) + ")" + ctx;
      if (!rep.maximal || *rep.maximal <= pred.lower)
        out.violations.push_back({J, pred.k, "no_pole_in_interval", seen + iv});
      else if (*rep.maximal >= pred.upper)
        out.violations.push_back({J, pred.k, above_kind(), seen + iv});
    }
  }
  return out;
}

CrossCheck crosscheck_theorem43(const LaurentPolynomial& f, const SigmaChoice& sigma, long k_max) {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  CrossCheck out;
  NewtonPolytope delta = newton_polytope(f);
  SimplicialData data = simplicial_data(f, sigma);
  auto faces = unaffected_faces(f, sigma);
  const long N = static_cast<long>(f.variable_count());
  Rational max_ratio = 0;
  for (std::size_t q = 0; q <= data.M; ++q)
    if (data.B[q] > 0) max_ratio = std::max(max_ratio, Rational(Rational(data.gamma) / Rational(data.B[q])));
  for (long k = 1; k <= k_max; ++k) {
    for (const auto& i : lattice_points(delta, k).points) {
      bool lower_level = (k == 1) ? std::all_of(i.begin(), i.end(), [](const Integer& x) { return x == 0; })
                                  : delta.contains(scaled(i, k - 1));
      if (lower_level) continue;  // degree < k
      Face face = minimal_face_of(delta, scaled(i, k));
      if (std::find(faces.begin(), faces.end(), face) == faces.end()) continue;
      ++out.checked;
      ExponentVector J = pad_exponent(i, data.M - 1);
      check_inequalities(data, J, k, out);
      MellinSkeleton sk = mellin_skeleton(data, J);
      if (sk.degenerate) {
        out.degenerate.push_back(J);
        continue;
      }
      ++out.pole_checks;
      const long p = N - k;
      Rational upper = 1 - N + p;
      Rational lower = 1 - Rational(N - p) * (1 + max_ratio);
      PoleReport rep = enumerate_poles(sk, lower - 1);
      std::string iv = "; bound (" + describe(lower) + ", " + describe(upper) + "), k=" + std::to_string(k);
      if (!rep.maximal || *rep.maximal <= lower)
        out.violations.push_back({J, k, "no_pole_in_bound", "no pole above the lower bound" + iv});
      else if (*rep.maximal >= upper)
        out.violations.push_back({J, k, "pole_above_bound",
                                  "max pole " + describe(*rep.maximal) + " from rows " + source_list(rep.poles.front()) + iv});
    }
  }
  return out;
}

}  // namespace torusfib
