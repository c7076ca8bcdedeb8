#pragma once

// Command-line front end: JSON experiment configs, the simulate / limit /
// compare / classify / check / sweep subcommands, CSV and JSON output.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dqw/decompose.hpp"
#include "dqw/numerics.hpp"

namespace dqw::cli {

using nlohmann::json;

enum ExitCode : int { kSuccess = 0, kValidationError = 1, kToleranceFailure = 2 };

enum class Model { lqw2, dqw, lqw4, grover_family };

std::string_view to_string(Model m);

struct CompareOptions {
  double bin_width = 0.02;
  double eps = 0.02;
  std::optional<double> max_l1;
  std::optional<double> max_sup;
  std::optional<double> max_mass_error;
};

struct ExperimentConfig {
  std::string name = "experiment";
  Model model = Model::lqw2;
  std::optional<std::size_t> steps;
  std::vector<Complex> phi;
  std::optional<ComplexMatrix2> coin2;
  std::optional<ComplexMatrix4> coin4;
  std::optional<std::pair<ComplexMatrix2, ComplexMatrix2>> pair;
  std::optional<PairParams> params;
  std::optional<double> delta;
  std::size_t samples = 400;
  CompareOptions compare;
  std::string output;
  std::string trajectory;
  std::string report;
};

/// "0.75pi", "-pi/6", "pi", "1.2" (radians) or a JSON number (radians).
double parse_angle(std::string_view text);

/// Throws ValidationError naming the offending field, e.g. "config.phi[2]".
ExperimentConfig parse_config(const json& j);
ExperimentConfig load_config(const std::string& path);

/// Fixed-width "%.17g" formatting used for every CSV number.
std::string format_number(double v);

json simulate(const ExperimentConfig& cfg, std::ostream& csv, std::ostream* trajectory);
json limit(const ExperimentConfig& cfg, std::ostream& csv);
json compare(const ExperimentConfig& cfg);
json classify(const ExperimentConfig& cfg);
json check(const ExperimentConfig& cfg);

/// Exit status of a compare report: kToleranceFailure when a configured
/// threshold is exceeded.
int compare_status(const json& report);

/// Runs the CLI with argv-style arguments (program name excluded).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dqw::cli
