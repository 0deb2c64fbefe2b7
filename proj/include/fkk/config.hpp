#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fkk/ldg.hpp"

namespace fkk {

enum class Command { Solve, StudyTime, StudySpace, Stability, Regularity, CqWeights };
enum class OutputFormat { Csv, Markdown };

std::string_view to_string(Command command);
std::string_view to_string(OutputFormat format);
std::string_view to_string(DataTransfer transfer);

/// Fully resolved run configuration: command-dependent defaults are filled in
/// by parse(), so every field is meaningful for the chosen command.
struct RunConfig {
  Command command = Command::Solve;
  std::string problem = "ex2";
  std::vector<double> alphas = {0.5};
  int n = 16;
  std::vector<int> n_list = {4, 8, 12, 16, 20};
  int degree = 1;
  double tau = 0.01;
  std::vector<int> tau_inverse = {10, 20, 40, 80, 160};
  double final_time = 1.0;
  double theta = 1.0;
  int steps = 10;
  int trials = 10;
  std::uint64_t seed = 0;
  std::string output;  // empty: standard output
  OutputFormat format = OutputFormat::Csv;
  DataTransfer transfer = DataTransfer::NodalInterpolation;

  bool operator==(const RunConfig&) const = default;
};

/// Builds a configuration from command-line arguments (without the program
/// name) and optional config-file text of `key = value` lines with `#`
/// comments. Flags override file keys. A `--config PATH` flag reads the file
/// when no text is supplied. Throws ConfigError naming the offending token,
/// and PreconditionError when a value violates a solver precondition.
RunConfig parse(const std::vector<std::string>& args,
                const std::optional<std::string>& config_text = std::nullopt);

/// Config-file text that parses back to the same configuration.
std::string render(const RunConfig& config);

/// Checks every numeric parameter against the solver preconditions.
void validate(const RunConfig& config);

std::string usage();

/// Runs the configured command. Results go to config.output (or `out`),
/// notes and diagnostics to `err`. Returns 0 on success, 2 for configuration
/// errors, 3 for solver failures and 4 for precondition violations.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Exit code for an exception escaping parse() or execute().
int exit_code(const std::exception& e) noexcept;

}  // namespace fkk
