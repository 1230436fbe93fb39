#include "torusfib/analysis.hpp"
#include "torusfib/errors.hpp"
#include "torusfib/hypergeom.hpp"
#include "torusfib/lattice.hpp"
#include "torusfib/mellin.hpp"
#include "torusfib/simplicial.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

namespace py = pybind11;
using namespace torusfib;

namespace {

// Exact values cross the boundary as fractions.Fraction / int.
py::object fraction(const Rational& r) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(py::int_(py::str(r.get_num().get_str())), py::int_(py::str(r.get_den().get_str())));
}
py::int_ integer(const Integer& z) { return py::int_(py::str(z.get_str())); }

py::list ints(const IntegerVector& v) {
  py::list l;
  for (const auto& z : v) l.append(integer(z));
  return l;
}
py::list fracs(const RationalVector& v) {
  py::list l;
  for (const auto& r : v) l.append(fraction(r));
  return l;
}
template <class M, class F>
py::list rows(const M& m, F f) {
  py::list l;
  for (std::size_t i = 0; i < m.rows(); ++i) l.append(f(m.row(i)));
  return l;
}

ExponentVector to_exponent(const std::vector<long>& v) { return ExponentVector(v.begin(), v.end()); }

SigmaChoice sigma_at(const LaurentPolynomial& f, std::size_t index) {
  auto en = enumerate_sigmas(f);
  if (index < 1 || index > en.choices.size()) throw DomainError("σ index out of range");
  return en.choices[index - 1];
}

py::dict simplicial_dict(const std::string& text, std::size_t index) {
  LaurentPolynomial f = load_polynomial(text);
  SimplicialData d = simplicial_data(f, sigma_at(f, index));
  py::dict out;
  out["f_sigma"] = d.f_sigma.to_string();
  out["gamma"] = integer(d.gamma);
  out["L"] = rows(d.L, ints);
  out["L_inv"] = rows(d.L_inv, fracs);
  out["B"] = ints(d.B);
  out["C"] = ints(d.C);
  out["simplex_volumes"] = ints(simplex_volumes(d));
  EulerData e = euler_characteristic(d);
  out["euler"] = py::make_tuple(integer(e.sum_plus), integer(e.chi), integer(e.volume));
  return out;
}

py::dict ehrhart_dict(const std::vector<std::vector<long>>& points) {
  std::vector<ExponentVector> pts;
  for (const auto& p : points) pts.push_back(to_exponent(p));
  EhrhartData e = ehrhart(NewtonPolytope::hull(pts));
  py::dict out;
  out["psi"] = ints(e.psi);
  out["phi"] = ints(e.phi);
  out["counts"] = ints(e.counts);
  return out;
}

py::dict pole_dict(const std::string& text, std::size_t index, const std::vector<long>& J) {
  LaurentPolynomial f = load_polynomial(text);
  SimplicialData d = simplicial_data(f, sigma_at(f, index));
  ExponentVector j = to_exponent(J);
  HodgePolePrediction h = hodge_pole_prediction(d, j);
  MellinSkeleton sk = mellin_skeleton(d, j);
  py::dict out;
  out["k"] = h.k;
  out["p"] = h.p;
  out["r"] = h.r;
  out["degenerate"] = sk.degenerate;
  if (!sk.degenerate) {
    Rational floor = (h.exact ? h.predicted_max : std::min(h.lower, h.upper)) - 1;
    PoleReport rep = enumerate_poles(sk, floor);
    out["maximal"] = rep.maximal ? fraction(*rep.maximal) : py::none();
    out["order"] = rep.maximal_order;
  }
  return out;
}

py::dict hypergeom_dict(const std::string& text, std::size_t index, const std::vector<long>& J) {
  LaurentPolynomial f = load_polynomial(text);
  SimplicialData d = simplicial_data(f, sigma_at(f, index));
  ExponentVector j = to_exponent(J);
  ExponentSets sets = exponent_sets(d, j);
  JordanReport jr = jordan_report(d, j);
  py::dict out;
  out["c_plus"] = fracs(sets.c_plus);
  out["c_minus"] = fracs(sets.c_minus);
  out["c_zero"] = fracs(sets.c_zero);
  out["delta_bar"] = sets.delta_bar;
  out["jordan_size"] = jr.size;
  out["x0_unit_multiplicity"] = jr.x0_unit_multiplicity;
  return out;
}

std::string run_json(const std::string& text, const std::string& subcommand, long k_max,
                     const std::vector<std::vector<long>>& J, std::optional<std::vector<std::size_t>> sigmas) {
  static const std::map<std::string, Subcommand> names = {
      {"polytope", Subcommand::Polytope}, {"hodge", Subcommand::Hodge},         {"sigma", Subcommand::Sigma},
      {"mellin", Subcommand::Mellin},     {"monodromy", Subcommand::Monodromy}, {"check", Subcommand::Check},
      {"analyze", Subcommand::Analyze}};
  auto it = names.find(subcommand);
  if (it == names.end()) throw DomainError("unknown subcommand " + subcommand);
  AnalysisConfig cfg;
  cfg.k_max = k_max;
  cfg.sigmas = std::move(sigmas);
  for (const auto& j : J) cfg.J.push_back(to_exponent(j));
  return run(load_polynomial(text), it->second, cfg).json;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact combinatorics of torus hypersurface fibre integrals";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConsistencyError>(m, "ConsistencyError", base.ptr());

  m.def("canonical", [](const std::string& text) { return load_polynomial(text).to_string(); },
        "Parse a polynomial (text or JSON) and return its canonical text form.");
  m.def("sigma_count", [](const std::string& text) { return enumerate_sigmas(load_polynomial(text)).choices.size(); });
  m.def("simplicial", &simplicial_dict, py::arg("polynomial"), py::arg("sigma"));
  m.def("ehrhart", &ehrhart_dict, py::arg("points"));
  m.def("poles", &pole_dict, py::arg("polynomial"), py::arg("sigma"), py::arg("J"));
  m.def("hypergeom", &hypergeom_dict, py::arg("polynomial"), py::arg("sigma"), py::arg("J"));
  m.def("run_json", &run_json, py::arg("polynomial"), py::arg("subcommand") = "analyze", py::arg("k_max") = 3,
        py::arg("J") = std::vector<std::vector<long>>{}, py::arg("sigmas") = py::none());
}
