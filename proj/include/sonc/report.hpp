#pragma once

#include "sonc/cover.hpp"
#include "sonc/oracle.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace sonc {

struct PipelineOptions {
  int n = 0;
  std::optional<std::string> triangulation_file;
  std::string weights = "equal";  // equal | optimize:<budget> | <file.json>
  std::optional<std::string> target;
  std::string strategy = "auto";  // gp | snp | auto
  bool cover_fallback = false;
  bool validate = false;
  std::uint64_t seed = 0;
  int scale_exponents = 1;
  int oracle_samples = 4000;
  std::optional<std::string> cert_out;
};

struct RunReport {
  std::string command;
  nlohmann::json payload;  // machine-readable body (full precision)
  std::string human;       // 6-significant-digit text
  int exit_code = 0;
};

/// Reads either a problem JSON file ({"f":..., "constraints":[...], "n":...})
/// or treats `input` as polynomial text with opts.n variables.
ConstrainedProblem load_problem(const std::string& input, const PipelineOptions& opts);

RunReport cmd_analyze(const std::string& input, const PipelineOptions& opts);
RunReport cmd_minimize(const std::string& input, const PipelineOptions& opts);
RunReport cmd_minimize_constrained(const std::string& input, const PipelineOptions& opts);
RunReport cmd_verify(const std::string& cert_file, const std::string& problem_file,
                     const PipelineOptions& opts);

std::string format_sig6(double v);

}  // namespace sonc
