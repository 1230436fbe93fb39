// torus-fiber <subcommand> <input> [--sigma N|all] [--k-max K] [--J a,b,c] [--format json|text] [--out path]
//
// Exit codes: 0 ok, 1 usage/parse/domain error, 2 `check` found violations,
// 3 internal consistency failure.

#include "torusfib/analysis.hpp"
#include "torusfib/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace torusfib;

namespace {

ExponentVector parse_csv_ints(const std::string& s) {
  ExponentVector out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.emplace_back(v);
    } catch (const std::exception&) {
      throw DomainError("--J expects comma-separated integers, got '" + s + "'");
    }
  }
  if (out.empty()) throw DomainError("--J is empty");
  return out;
}

std::optional<std::vector<std::size_t>> parse_sigma(const std::string& s) {
  if (s == "all") return std::nullopt;
  std::vector<std::size_t> out;
  for (const auto& v : parse_csv_ints(s)) {
    if (v < 1) throw DomainError("--sigma indices are 1-based");
    out.push_back(v.get_ui());
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorial invariants of fibre integrals over torus hypersurfaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string input, sigma = "all", format = "json", out_path;
  std::vector<std::string> js;
  long k_max = 3, frob_k = 25;

  const std::map<std::string, Subcommand> names = {
      {"polytope", Subcommand::Polytope}, {"hodge", Subcommand::Hodge},   {"sigma", Subcommand::Sigma},
      {"mellin", Subcommand::Mellin},     {"monodromy", Subcommand::Monodromy}, {"check", Subcommand::Check},
      {"analyze", Subcommand::Analyze}};
  const std::map<std::string, std::string> help = {
      {"polytope", "Newton polytope, faces and Ehrhart data of the input"},
      {"hodge", "Ehrhart/Hodge data and monomial classification per σ"},
      {"sigma", "table of σ choices with γ and B"},
      {"mellin", "Γ-skeleton and poles for --J"},
      {"monodromy", "hypergeometric operators and monodromy for --J"},
      {"check", "pole-position cross-check sweeps; exit 2 on violations"},
      {"analyze", "full pipeline"}};

  for (const auto& [name, cmd] : names) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("input", input, "polynomial text or JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--sigma", sigma, "σ index list (1-based, comma separated) or 'all'");
    sub->add_option("--k-max", k_max, "degree sweep bound")->check(CLI::PositiveNumber);
    sub->add_option("--frobenius-k", frob_k, "Frobenius series truncation")->check(CLI::PositiveNumber);
    sub->add_option("--J", js, "exponent vector a,b,c (repeatable)")->take_all();
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", out_path, "write the report here instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  Subcommand cmd = names.at(app.get_subcommands().front()->get_name());
  try {
    AnalysisConfig cfg;
    cfg.sigmas = parse_sigma(sigma);
    cfg.k_max = k_max;
    cfg.frobenius_K = frob_k;
    cfg.format = format == "text" ? OutputFormat::Text : OutputFormat::Json;
    for (const auto& j : js) cfg.J.push_back(parse_csv_ints(j));

    AnalysisReport rep = run(read_polynomial_file(input), cmd, cfg, input);
    const std::string& body = cfg.format == OutputFormat::Json ? rep.json : rep.text;
    if (out_path.empty()) {
      std::cout << body;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw DomainError("cannot write " + out_path);
      out << body;
    }
    for (const auto& e : rep.errors) std::cerr << "torus-fiber: " << e << "\n";
    if (rep.consistency_failure) return 3;
    if (rep.domain_failure) return 1;
    if (cmd == Subcommand::Check && rep.violations) return 2;
    return 0;
  } catch (const ConsistencyError& e) {
    std::cerr << "torus-fiber: consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "torus-fiber: " << e.what() << "\n";
    return 1;
  }
}
