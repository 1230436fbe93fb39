#include "torusfib/analysis.hpp"

#include "torusfib/errors.hpp"
#include "torusfib/hypergeom.hpp"
#include "torusfib/lattice.hpp"
#include "torusfib/mellin.hpp"
#include "torusfib/polytope.hpp"
#include "torusfib/simplicial.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace torusfib {

using json = nlohmann::ordered_json;

namespace {

json num(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}
json rat(const Rational& r) { return to_string(r); }

template <class V, class F>
json array_of(const V& v, F f) {
  json a = json::array();
  for (const auto& x : v) a.push_back(f(x));
  return a;
}

json ivec(const IntegerVector& v) { return array_of(v, [](const Integer& z) { return num(z); }); }
json rvec(const RationalVector& v) { return array_of(v, [](const Rational& r) { return rat(r); }); }

json imat(const IntegerMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(ivec(m.row(i)));
  return a;
}
json rmat(const RationalMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(rvec(m.row(i)));
  return a;
}

json cyc(const Cyclotomic& c) {
  json terms = json::array();
  for (const auto& [a, coef] : c.terms()) terms.push_back({a, rat(coef)});
  auto z = c.to_complex();
  return {{"terms", terms}, {"approx", {z.real(), z.imag()}}};
}
json cyc_poly(const CycPoly& p) { return array_of(p, [](const Cyclotomic& c) { return cyc(c); }); }
json cyc_mat(const CycMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(array_of(m.row(i), [](const Cyclotomic& c) { return cyc(c); }));
  return a;
}

json one_based(const std::vector<std::size_t>& v) {
  return array_of(v, [](std::size_t i) { return i + 1; });
}

json face_json(const NewtonPolytope& P, const Face& f) {
  return {{"dimension", f.dimension},
          {"vertices", array_of(P.face_vertices(f), [](const ExponentVector& v) { return ivec(v); })}};
}

json polytope_json(const NewtonPolytope& P) {
  json facets = json::array();
  for (const auto& f : P.facets()) facets.push_back({{"normal", ivec(f.normal)}, {"offset", num(f.offset)}});
  json eqs = json::array();
  for (const auto& e : P.equations()) eqs.push_back({{"normal", ivec(e.normal)}, {"value", num(e.value)}});
  std::vector<long> counts(static_cast<std::size_t>(P.dimension()) + 1, 0);
  for (const auto& f : P.faces()) ++counts[static_cast<std::size_t>(f.dimension)];
  return {{"ambient_dimension", P.ambient_dimension()},
          {"dimension", P.dimension()},
          {"vertices", array_of(P.vertices(), [](const ExponentVector& v) { return ivec(v); })},
          {"facets", facets},
          {"equations", eqs},
          {"face_counts", counts}};
}

json ehrhart_json(const NewtonPolytope& P) {
  EhrhartData e = ehrhart(P);
  return {{"psi", ivec(e.psi)},
          {"phi", ivec(e.phi)},
          {"counts", ivec(e.counts)},
          {"interior_counts", ivec(e.interior_counts)},
          {"normalized_volume", num(normalized_volume(P))}};
}

const char* class_name(SignClass c) {
  switch (c) {
    case SignClass::Plus: return "+";
    case SignClass::Minus: return "-";
    default: return "0";
  }
}

const char* form_kind(FormKind k) {
  switch (k) {
    case FormKind::ZForm: return "z";
    case FormKind::FacetForm: return "facet";
    default: return "constant";
  }
}

json sigma_header(std::size_t index, const SigmaChoice& s) {
  return {{"index", index + 1}, {"aux", one_based(s.aux)}, {"rest", one_based(s.rest)}};
}

json violation_json(const Violation& v) {
  return {{"J", ivec(v.J)}, {"k", v.k}, {"kind", v.kind}, {"detail", v.detail}};
}

json crosscheck_json(const CrossCheck& c) {
  json bnd = json::array();
  for (const auto& b : c.boundary) bnd.push_back({{"J", ivec(b.J)}, {"q", b.q + 1}, {"detail", b.detail}});
  return {{"ok", c.ok()},
          {"checked", c.checked},
          {"pole_checks", c.pole_checks},
          {"violations", array_of(c.violations, violation_json)},
          {"boundary", bnd},
          {"degenerate", array_of(c.degenerate, [](const ExponentVector& J) { return ivec(J); })}};
}

json prediction_json(const HodgePolePrediction& h) {
  json j = {{"k", h.k}, {"p", h.p}, {"w", h.w}, {"r", h.r},
            {"tight_plus", one_based(h.tight_plus)}, {"tight_minus", one_based(h.tight_minus)},
            {"exact", h.exact}};
  if (h.exact)
    j["predicted_max"] = rat(h.predicted_max);
  else
    j["interval"] = {rat(h.lower), rat(h.upper)};
  j["order_bound"] = h.order_bound;
  return j;
}

Rational sweep_floor(const HodgePolePrediction& h) {
  return (h.exact ? h.predicted_max : std::min(h.lower, h.upper)) - 1;
}

json poles_json(const PoleReport& rep) {
  json poles = json::array();
  for (const auto& p : rep.poles) poles.push_back({{"z", rat(p.z)}, {"order", p.order}, {"rows", one_based(p.sources)}});
  json canc = json::array();
  for (const auto& c : rep.cancellations)
    canc.push_back({{"z", rat(c.z)}, {"numerator", c.numerator}, {"denominator", c.denominator}});
  json j = {{"poles", poles}, {"cancellations", canc}};
  j["maximal"] = rep.maximal ? json(rat(*rep.maximal)) : json(nullptr);
  j["maximal_order"] = rep.maximal_order;
  return j;
}

json skeleton_json(const MellinSkeleton& sk) {
  auto gf = [](const GammaFactor& g) { return json{{"q", g.q + 1}, {"slope", rat(g.slope)}, {"shift", rat(g.shift)}}; };
  return {{"numerator", array_of(sk.numerator, gf)},
          {"denominator", array_of(sk.denominator, gf)},
          {"constants", array_of(sk.constants, [](const ConstantFactor& c) {
             return json{{"q", c.q + 1}, {"value", rat(c.value)}};
           })},
          {"degenerate", sk.degenerate}};
}

Rational reduced(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

json eigen_json(const EigenData& e) {
  json roots = json::array();
  for (const auto& [a, k] : e.roots) roots.push_back({{"exponent", rat(reduced(static_cast<long>(a), static_cast<long>(e.m)))}, {"multiplicity", k}});
  return {{"roots", roots}, {"total", e.total}, {"max_modulus_error", e.max_modulus_error}, {"trace_error", e.trace_error}};
}

struct Context {
  const LaurentPolynomial& f;
  const AnalysisConfig& cfg;
  AnalysisReport& report;
  json warnings = json::array();

  // With no explicit σ list a J only has to lie in the cone of some σ; the
  // other σ skip it with a warning (see require_some_sigma).
  void j_error(const std::string& where, const Error& e) {
    if (!cfg.sigmas && dynamic_cast<const DomainError*>(&e) && !dynamic_cast<const ConsistencyError*>(&e))
      warnings.push_back(where + ": skipped: " + e.what());
    else
      error(where, e);
  }
  void error(const std::string& where, const Error& e) {
    std::string msg = where + ": " + e.what();
    report.errors.push_back(msg);
    if (dynamic_cast<const ConsistencyError*>(&e))
      report.consistency_failure = true;
    else
      report.domain_failure = true;
  }
};

std::vector<std::size_t> selected_sigmas(const SigmaEnumeration& en, const AnalysisConfig& cfg) {
  std::vector<std::size_t> out;
  if (!cfg.sigmas) {
    for (std::size_t i = 0; i < en.choices.size(); ++i) out.push_back(i);
    return out;
  }
  for (auto i : *cfg.sigmas) {
    if (i == 0 || i > en.choices.size())
      throw DomainError("σ index " + std::to_string(i) + " out of range 1.." + std::to_string(en.choices.size()));
    out.push_back(i - 1);
  }
  return out;
}

json sigma_block(Context& ctx, std::size_t index, const SigmaChoice& s, bool full) {
  json b = sigma_header(index, s);
  const std::string where = "sigma " + std::to_string(index + 1);
  try {
    FSigma fs = build_f_sigma(ctx.f, s);
    b["f_sigma"] = fs.polynomial.to_string();
    for (const auto& w : fs.warnings) ctx.warnings.push_back(where + ": " + w);
    SimplicialData d = build_matrix(fs.polynomial, s);
    b["status"] = "ok";
    b["variables"] = d.f_sigma.variables();
    b["gamma"] = num(d.gamma);
    b["B"] = ivec(d.B);
    b["classes"] = array_of(d.classes, [](SignClass c) { return class_name(c); });
    if (!full) return b;
    b["row_monomial"] = one_based(d.row_monomial);
    b["row_swap"] = d.row_swap ? json{d.row_swap->first + 1, d.row_swap->second + 1} : json(nullptr);
    b["L"] = imat(d.L);
    b["L_inv"] = rmat(d.L_inv);
    b["C"] = ivec(d.C);
    b["alpha"] = array_of(d.alpha, [](const IntegerVector& v) { return ivec(v); });
    b["v"] = array_of(d.v, [](const RationalVector& v) { return rvec(v); });
    ExponentVector zero(d.M - 1, 0);
    json forms = json::array();
    for (const auto& L : linear_forms(d, zero))
      forms.push_back({{"q", L.q + 1}, {"kind", form_kind(L.kind)}, {"J", rvec(L.j_coeffs)},
                       {"z", rat(L.z_coeff)}, {"constant", rat(L.constant)}});
    b["linear_forms"] = forms;
    try {
      b["simplex_volumes"] = ivec(simplex_volumes(d));
      EulerData e = euler_characteristic(d);
      b["euler"] = {{"sum_plus", num(e.sum_plus)}, {"chi", num(e.chi)}, {"volume", num(e.volume)}};
    } catch (const ConsistencyError& e) {
      ctx.error(where + " volumes", e);
    }
    try {
      auto hs = h_representation(d);
      json sys = json::array();
      for (const auto& h : hs)
        sys.push_back({{"q", h.q + 1}, {"normal", rvec(h.normal)}, {"relation", h.at_least ? ">=" : "<="}, {"bound", rat(h.bound)}});
      b["h_representation"] = {{"verified", true}, {"system", sys}};
    } catch (const ConsistencyError& e) {
      b["h_representation"] = {{"verified", false}, {"error", e.what()}};
      ctx.error(where + " H-representation", e);
    }
    NewtonPolytope delta = newton_polytope(ctx.f);
    b["unaffected_faces"] = array_of(unaffected_faces(ctx.f, s), [&](const Face& fc) { return face_json(delta, fc); });
    SingularLocus sl = singular_locus(d);
    b["singular_locus"] = {{"s_pow_gamma", rat(sl.s_pow_gamma)}, {"gamma", num(sl.gamma)}};
    Operators ops = build_operators(d, zero);
    b["operator_order"] = num(ops.delta_sigma);
    b["plus_count"] = ops.plus_count;
  } catch (const ConsistencyError& e) {
    b["status"] = "error";
    b["error"] = e.what();
    ctx.error(where, e);
  } catch (const DomainError& e) {
    // σ that does not simplicialize f is reported, not fatal.
    b["status"] = "not_simpliciable";
    b["error"] = e.what();
  }
  return b;
}

std::optional<SimplicialData> try_data(Context& ctx, const SigmaChoice& s, const std::string& where) {
  try {
    return simplicial_data(ctx.f, s);
  } catch (const ConsistencyError& e) {
    ctx.error(where, e);
  } catch (const DomainError&) {
  }
  return std::nullopt;
}

void check_length(const SimplicialData& d, const ExponentVector& J) {
  if (J.size() != d.M - 1)
    throw DomainError("J has length " + std::to_string(J.size()) + ", expected " + std::to_string(d.M - 1));
}

json hodge_block(Context& ctx, const SigmaEnumeration& en, const std::vector<std::size_t>& sel) {
  json h = json::object();
  NewtonPolytope delta = newton_polytope(ctx.f);
  h["newton_polytope"] = delta.is_full_dimensional() ? ehrhart_json(delta) : json(nullptr);
  json per = json::array();
  for (auto i : sel) {
    json b = sigma_header(i, en.choices[i]);
    auto d = try_data(ctx, en.choices[i], "sigma " + std::to_string(i + 1));
    if (!d) {
      b["status"] = "unavailable";
      per.push_back(b);
      continue;
    }
    NewtonPolytope P = classification_polytope(*d);
    b["classification_polytope"] = polytope_json(P);
    b["ehrhart"] = ehrhart_json(P);
    json cls = json::array();
    for (long k = 1; k <= ctx.cfg.k_max; ++k)
      for (const auto& J : lattice_points(P, k).points) {
        if (std::all_of(J.begin(), J.end(), [](const Integer& x) { return x == 0; })) continue;
        MonomialClass c = classify_monomial(P, J);
        if (c.degree_k != k) continue;
        cls.push_back({{"J", ivec(J)}, {"k", c.degree_k}, {"p", c.hodge_p}, {"w", c.weight_w},
                       {"stratum", face_json(P, c.stratum_face)}});
      }
    b["classifications"] = cls;
    per.push_back(b);
  }
  h["per_sigma"] = per;
  return h;
}

// Pole summary for every nondegenerate J of the degree sweep.
json mellin_sweep(const SimplicialData& d, long k_max) {
  NewtonPolytope P = classification_polytope(d);
  json rows = json::array();
  for (const auto& J : lattice_points(P, k_max).points) {
    if (std::all_of(J.begin(), J.end(), [](const Integer& x) { return x == 0; })) continue;
    MellinSkeleton sk = mellin_skeleton(d, J);
    if (sk.degenerate) continue;
    HodgePolePrediction h = hodge_pole_prediction(d, P, J);
    PoleReport rep = enumerate_poles(sk, sweep_floor(h));
    rows.push_back({{"J", ivec(J)}, {"k", h.k}, {"p", h.p}, {"r", h.r},
                    {"maximal", rep.maximal ? json(rat(*rep.maximal)) : json(nullptr)},
                    {"order", rep.maximal_order}});
  }
  return rows;
}

json mellin_block(Context& ctx, const SigmaEnumeration& en, const std::vector<std::size_t>& sel, bool sweeps,
                  bool summary) {
  json per = json::array();
  for (auto i : sel) {
    json b = sigma_header(i, en.choices[i]);
    const std::string where = "sigma " + std::to_string(i + 1);
    auto d = try_data(ctx, en.choices[i], where);
    if (!d) {
      b["status"] = "unavailable";
      per.push_back(b);
      continue;
    }
    json sk_list = json::array();
    for (const auto& J : ctx.cfg.J) {
      json e = {{"J", ivec(J)}};
      try {
        check_length(*d, J);
        MellinSkeleton sk = mellin_skeleton(*d, J);
        e["skeleton"] = skeleton_json(sk);
        HodgePolePrediction h = hodge_pole_prediction(*d, J);
        e["prediction"] = prediction_json(h);
        if (!sk.degenerate) e["poles"] = poles_json(enumerate_poles(sk, sweep_floor(h)));
      } catch (const Error& err) {
        e["error"] = err.what();
        ctx.j_error(where + " J=" + to_string(J), err);
      }
      sk_list.push_back(e);
    }
    if (!ctx.cfg.J.empty()) b["skeletons"] = sk_list;
    if (sweeps) {
      CrossCheck c41 = crosscheck_theorem41(*d, ctx.cfg.k_max);
      CrossCheck c43 = crosscheck_theorem43(ctx.f, en.choices[i], ctx.cfg.k_max);
      if (!c41.ok() || !c43.ok()) ctx.report.violations = true;
      b["theorem41"] = crosscheck_json(c41);
      b["theorem43"] = crosscheck_json(c43);
    }
    if (summary) b["sweep"] = mellin_sweep(*d, ctx.cfg.k_max);
    per.push_back(b);
  }
  return {{"per_sigma", per}};
}

json hypergeom_detail(Context& ctx, const SimplicialData& d, const ExponentVector& J) {
  json e = {{"J", ivec(J)}};
  Operators ops = build_operators(d, J);
  e["P_roots_theta_s"] = rvec(ops.P.roots);
  e["Q_roots_theta_s"] = rvec(ops.Q.roots);
  e["P_leading"] = rat(ops.P.leading);
  e["Q_leading"] = rat(ops.Q.leading);
  e["order"] = ops.P.order();
  e["plus_count"] = ops.plus_count;
  ExponentSets sets = exponent_sets(d, J);
  e["roots_agree_mod_z"] = roots_agree_mod_z(ops, sets);
  e["c_plus"] = rvec(sets.c_plus);
  e["c_minus"] = rvec(sets.c_minus);
  e["c_zero"] = rvec(sets.c_zero);
  e["delta_bar"] = sets.delta_bar;
  json mult = json::array();
  for (const auto& [a, k] : exponent_multiplicities(sets)) mult.push_back({{"alpha", rat(a)}, {"multiplicity", k}});
  e["exponent_multiplicities"] = mult;

  ReducedOperator red = reduced_operator(sets);
  json frob = json::array();
  for (const auto& rho : simple_nonresonant_exponents(red)) {
    FrobeniusSeries s = frobenius_series(red, rho, ctx.cfg.frobenius_K);
    bool ok = verify_annihilation(red, s, ctx.cfg.frobenius_K);
    if (!ok) ctx.report.consistency_failure = true;
    frob.push_back({{"rho", rat(rho)}, {"annihilated", ok}, {"coefficients", rvec(s.a)}});
  }
  e["frobenius"] = {{"K", ctx.cfg.frobenius_K}, {"series", frob}};

  JordanReport jr = jordan_report(d, J);
  e["jordan"] = {{"r", jr.r}, {"c0_integers", jr.c0_integers}, {"size", jr.size},
                 {"integer_exponents", jr.integer_exponents}, {"x0_unit_multiplicity", jr.x0_unit_multiplicity},
                 {"consistent", jr.consistent}};
  if (sets.delta_bar == 0) return e;

  CharPolys cp = char_polys(d, J, sets);
  e["modulus"] = cp.m;
  e["x0"] = cyc_poly(cp.x0);
  e["x_inf"] = cyc_poly(cp.x_inf);
  if (cp.closed_form_checked)
    e["closed_form"] = {{"x0", cp.x0_matches_closed_form},
                        {"x_inf", cp.x_inf_matches_closed_form},
                        {"x_inf_printed_sign", cp.x_inf_matches_printed_sign}};
  MonodromyRep rep = monodromy(cp, d.gamma);
  const double tol = ctx.cfg.float_tolerance;
  auto eig = [&](const CycMatrix& g) {
    EigenData ed = eigen_data(g, cp.m);
    json j = eigen_json(ed);
    // every root found exactly among the m-th roots of unity; the floating view is an annotation
    bool ok = ed.total == static_cast<long>(rep.n) && ed.max_modulus_error <= tol;
    j["unit_circle"] = ok;
    return j;
  };
  json gens = {{"h0", cyc_mat(rep.h0)},   {"h_inf", cyc_mat(rep.h_inf)}, {"h_inf_inverse", cyc_mat(rep.h_inf_inv)},
               {"h1", cyc_mat(rep.h1)},   {"M0", cyc_mat(rep.M0)},       {"M_inf", cyc_mat(rep.M_inf)},
               {"M_omega", array_of(rep.M_omega, [](const CycMatrix& m) { return cyc_mat(m); })}};
  e["monodromy"] = {{"size", rep.n},
                    {"relation_h0_hinf_h1", rep.relation_ok},
                    {"conjugacy", rep.conjugacy_ok},
                    {"char_polys_equal", rep.char_polys_equal},
                    {"companion", rep.companion_ok},
                    {"eigenvalues", {{"M0", eig(rep.M0)}, {"M_inf", eig(rep.M_inf)}, {"M_omega0", eig(rep.h1)}}},
                    {"generators", gens}};
  if (!rep.relation_ok || !rep.conjugacy_ok || !rep.char_polys_equal || !rep.companion_ok || !jr.consistent)
    ctx.report.consistency_failure = true;
  return e;
}

json hypergeom_block(Context& ctx, const SigmaEnumeration& en, const std::vector<std::size_t>& sel, bool sweep) {
  json per = json::array();
  for (auto i : sel) {
    json b = sigma_header(i, en.choices[i]);
    const std::string where = "sigma " + std::to_string(i + 1);
    auto d = try_data(ctx, en.choices[i], where);
    if (!d) {
      b["status"] = "unavailable";
      per.push_back(b);
      continue;
    }
    SingularLocus sl = singular_locus(*d);
    b["singular_locus"] = {{"s_pow_gamma", rat(sl.s_pow_gamma)}, {"gamma", num(sl.gamma)}};
    if (sweep) {
      NewtonPolytope P = classification_polytope(*d);
      json rows = json::array();
      for (const auto& J : lattice_points(P, ctx.cfg.k_max).points) {
        if (std::all_of(J.begin(), J.end(), [](const Integer& x) { return x == 0; })) continue;
        if (mellin_skeleton(*d, J).degenerate) continue;
        ExponentSets sets = exponent_sets(*d, J);
        JordanReport jr = jordan_report(*d, J);
        if (!jr.consistent) ctx.warnings.push_back(where + ": Jordan cross-check mismatch at J=" + to_string(J));
        rows.push_back({{"J", ivec(J)}, {"delta_bar", sets.delta_bar}, {"c_zero", sets.c_zero.size()},
                        {"jordan_size", jr.size}, {"x0_unit_multiplicity", jr.x0_unit_multiplicity},
                        {"consistent", jr.consistent}});
      }
      b["sweep"] = rows;
    }
    json details = json::array();
    for (const auto& J : ctx.cfg.J) {
      try {
        check_length(*d, J);
        hodge_pole_prediction(*d, J);  // rejects J outside the cone
        details.push_back(hypergeom_detail(ctx, *d, J));
      } catch (const Error& err) {
        details.push_back({{"J", ivec(J)}, {"error", err.what()}});
        ctx.j_error(where + " J=" + to_string(J), err);
      }
    }
    if (!ctx.cfg.J.empty()) b["details"] = details;
    per.push_back(b);
  }
  return {{"per_sigma", per}};
}

// Every J must be usable by at least one selected σ.
void require_some_sigma(const LaurentPolynomial& f, const SigmaEnumeration& en, const std::vector<std::size_t>& sel,
                        const std::vector<ExponentVector>& Js) {
  for (const auto& J : Js) {
    std::string last = "no simplicializing σ";
    bool usable = false;
    for (auto i : sel) {
      try {
        SimplicialData d = simplicial_data(f, en.choices[i]);
        check_length(d, J);
        hodge_pole_prediction(d, J);
        usable = true;
        break;
      } catch (const ConsistencyError&) {
        throw;
      } catch (const DomainError& e) {
        last = e.what();
      }
    }
    if (!usable) throw DomainError("J=" + to_string(J) + " is rejected by every σ (" + last + ")");
  }
}

json input_json(const LaurentPolynomial& f, const std::string& source, bool with_polytope) {
  json mons = json::array();
  for (const auto& m : f.monomials()) mons.push_back({{"coefficient", rat(m.coefficient)}, {"exponent", ivec(m.exponent)}});
  json in = {{"source", source}, {"variables", f.variables()}, {"monomials", mons}, {"text", f.to_string()}};
  if (with_polytope) {
    NewtonPolytope P = newton_polytope(f);
    in["newton_polytope"] = polytope_json(P);
    if (P.is_full_dimensional()) in["newton_polytope"]["ehrhart"] = ehrhart_json(P);
  }
  return in;
}

bool scalar_array(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
}

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
    return s + "]";
  }
  return j.dump();
}

void render(std::ostringstream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive() || scalar_array(v) || v.empty()) {
        os << pad << k << ": " << (v.empty() && !v.is_primitive() ? "-" : scalar_text(v)) << "\n";
      } else if (v.is_array() && std::all_of(v.begin(), v.end(), scalar_array)) {
        os << pad << k << ":\n";
        for (const auto& row : v) os << pad << "  " << scalar_text(row) << "\n";
      } else {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (x.is_primitive() || scalar_array(x)) {
        os << pad << "- " << scalar_text(x) << "\n";
      } else {
        os << pad << "-\n";
        render(os, x, indent + 2);
      }
    }
  } else {
    os << pad << scalar_text(j) << "\n";
  }
}

std::string sigma_table(const json& sigmas) {
  std::ostringstream os;
  os << "sigma  aux      gamma  B\n";
  for (const auto& s : sigmas) {
    std::string aux = scalar_text(s["aux"]);
    os << s["index"].get<std::size_t>() << "      " << aux << std::string(aux.size() < 9 ? 9 - aux.size() : 1, ' ');
    if (s.value("status", "") == "ok")
      os << scalar_text(s["gamma"]) << "      " << scalar_text(s["B"]) << "\n";
    else
      os << "-      " << s.value("status", "") << "\n";
  }
  return os.str();
}

}  // namespace

LaurentPolynomial load_polynomial(std::string_view text) {
  std::size_t start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && (text[start] == '{' || text[start] == '[')) {
    json j;
    try {
      j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    if (!j.is_object() || !j.contains("variables") || !j.contains("monomials"))
      throw ParseError("JSON input needs \"variables\" and \"monomials\"", start);
    std::vector<std::string> vars;
    std::vector<ExponentVector> support;
    try {
      vars = j["variables"].get<std::vector<std::string>>();
      for (const auto& row : j["monomials"]) {
        ExponentVector e;
        for (const auto& x : row) e.push_back(Integer(x.get<long>()));
        if (e.size() != vars.size()) throw ParseError("monomial length differs from the variable count", start);
        support.push_back(std::move(e));
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed JSON input: ") + e.what(), start);
    }
    if (support.empty()) throw ParseError("empty monomial list", start);
    if (!j.contains("coefficients")) return from_support(vars, support);
    const auto& cs = j["coefficients"];
    if (!cs.is_array() || cs.size() != support.size()) throw ParseError("coefficient count differs from monomials", start);
    std::vector<Monomial> mons;
    for (std::size_t i = 0; i < support.size(); ++i)
      mons.push_back({cs[i].is_string() ? parse_rational(cs[i].get<std::string>()) : Rational(cs[i].get<long>()), support[i]});
    return LaurentPolynomial(vars, mons);
  }
  return parse_laurent(text);
}

LaurentPolynomial read_polynomial_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_polynomial(ss.str());
}

AnalysisReport run(const LaurentPolynomial& f, Subcommand cmd, const AnalysisConfig& cfg, const std::string& source) {
  if (cfg.k_max < 1) throw DomainError("k_max must be >= 1");
  if (cfg.frobenius_K < 1) throw DomainError("frobenius_K must be >= 1");
  AnalysisReport report;
  Context ctx{f, cfg, report};
  json out = json::object();
  out["input"] = input_json(f, source, cmd == Subcommand::Polytope || cmd == Subcommand::Analyze);
  out["sigmas"] = nullptr;
  out["hodge"] = nullptr;
  out["mellin"] = nullptr;
  out["hypergeom"] = nullptr;

  if (cmd != Subcommand::Polytope) {
    SigmaEnumeration en = enumerate_sigmas(f, cfg.sigma_cap);
    if (en.truncated) throw DomainError("more than " + std::to_string(cfg.sigma_cap) + " σ choices");
    auto sel = selected_sigmas(en, cfg);
    const bool all = cmd == Subcommand::Analyze;
    if (!cfg.sigmas && (cmd == Subcommand::Mellin || cmd == Subcommand::Monodromy || all))
      require_some_sigma(f, en, sel, cfg.J);
    if (cmd == Subcommand::Sigma || all)
      out["sigmas"] = array_of(sel, [&](std::size_t i) { return sigma_block(ctx, i, en.choices[i], all); });
    if (cmd == Subcommand::Hodge || all) out["hodge"] = hodge_block(ctx, en, sel);
    if ((cmd == Subcommand::Mellin || cmd == Subcommand::Monodromy) && cfg.J.empty())
      throw DomainError("--J is required");
    if (cmd == Subcommand::Mellin || cmd == Subcommand::Check || all)
      out["mellin"] = mellin_block(ctx, en, sel, cmd != Subcommand::Mellin, all);
    if (cmd == Subcommand::Monodromy || all) out["hypergeom"] = hypergeom_block(ctx, en, sel, all);
  }
  for (const auto& e : report.errors) ctx.warnings.push_back(e);
  out["warnings"] = ctx.warnings;
  out["version"] = kVersion;
  report.json = out.dump(2) + "\n";

  std::ostringstream os;
  if (cmd == Subcommand::Sigma) os << sigma_table(out["sigmas"]) << "\n";
  render(os, out, 0);
  report.text = os.str();
  return report;
}

AnalysisReport run(const std::string& input_path, const AnalysisConfig& config) {
  return run(read_polynomial_file(input_path), Subcommand::Analyze, config, input_path);
}

}  // namespace torusfib
