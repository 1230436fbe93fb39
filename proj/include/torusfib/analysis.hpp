#pragma once

#include "torusfib/laurent.hpp"
#include "torusfib/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace torusfib {

inline constexpr const char* kVersion = "0.1.0";

enum class Subcommand { Polytope, Hodge, Sigma, Mellin, Monodromy, Check, Analyze };
enum class OutputFormat { Json, Text };

struct AnalysisConfig {
  std::optional<std::vector<std::size_t>> sigmas;  // 1-based; empty optional = all
  long k_max = 3;
  long frobenius_K = 25;
  double float_tolerance = 1e-10;
  std::size_t sigma_cap = 10000;
  OutputFormat format = OutputFormat::Json;
  std::vector<ExponentVector> J;  // exponents for skeleton / monodromy detail
};

// Plain-text polynomial or {"variables": [...], "monomials": [[e...], ...]}
// (optionally "coefficients": ["p/q", ...]). Anything that parses as JSON is
// read as JSON.
LaurentPolynomial load_polynomial(std::string_view text);
LaurentPolynomial read_polynomial_file(const std::string& path);

struct AnalysisReport {
  std::string json;  // pretty, deterministic
  std::string text;
  bool violations = false;           // some cross-check reported a violation
  bool consistency_failure = false;  // an internal cross-check disagreed
  bool domain_failure = false;       // a requested J / σ was rejected
  std::vector<std::string> errors;
};

AnalysisReport run(const LaurentPolynomial& f, Subcommand cmd, const AnalysisConfig& config,
                   const std::string& source = "-");
AnalysisReport run(const std::string& input_path, const AnalysisConfig& config);

}  // namespace torusfib
