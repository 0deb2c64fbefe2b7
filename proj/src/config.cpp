#include "fkk/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fkk/error.hpp"
#include "fkk/problems.hpp"
#include "fkk/study.hpp"

namespace fkk {

namespace {

// Keys accepted both as `--key` flags and as config-file keys.
const std::vector<std::string> kKeys = {
    "command", "problem", "alpha",  "n",      "n-list", "k",      "tau",    "tau-inverse", "T",
    "theta",   "steps",   "trials", "seed",   "output", "format", "transfer"};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string canonical_key(const std::string& key) {
  if (key == "final-time") return "T";
  if (key == "degree") return "k";
  return key;
}

bool is_key(const std::string& key) {
  return std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> raw;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + body + "'", body);
    const std::string key = canonical_key(trim(body.substr(0, eq)));
    if (!is_key(key)) throw ConfigError("unknown key '" + key + "'", key);
    raw[key] = trim(body.substr(eq + 1));
  }
  return raw;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'", path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// Accepts plain decimals and simple fractions such as 1/100.
double parse_double(const std::string& key, const std::string& token) {
  const auto slash = token.find('/');
  if (slash != std::string::npos) {
    return parse_double(key, token.substr(0, slash)) / parse_double(key, token.substr(slash + 1));
  }
  double value = 0.0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError("malformed number '" + token + "' for '" + key + "'", token);
  }
  return value;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& token) {
  Int value = 0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (token.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError("malformed integer '" + token + "' for '" + key + "'", token);
  }
  return value;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) items.push_back(trim(item));
  return items;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_double(key, item));
  if (out.empty()) throw ConfigError("empty list for '" + key + "'", value);
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  for (const auto& item : split_list(value)) out.push_back(parse_int<int>(key, item));
  if (out.empty()) throw ConfigError("empty list for '" + key + "'", value);
  return out;
}

Command parse_command(const std::string& token) {
  for (Command c : {Command::Solve, Command::StudyTime, Command::StudySpace, Command::Stability,
                    Command::Regularity, Command::CqWeights}) {
    if (token == to_string(c)) return c;
  }
  throw ConfigError("unknown command '" + token + "'", token);
}

OutputFormat parse_format(const std::string& token) {
  if (token == "csv") return OutputFormat::Csv;
  if (token == "markdown" || token == "md") return OutputFormat::Markdown;
  throw ConfigError("unknown format '" + token + "'", token);
}

DataTransfer parse_transfer(const std::string& token) {
  if (token == "interpolation") return DataTransfer::NodalInterpolation;
  if (token == "projection") return DataTransfer::L2Projection;
  throw ConfigError("unknown transfer '" + token + "'", token);
}

std::vector<double> default_alphas(Command command, const std::string& problem, int degree) {
  if (command == Command::StudyTime) {
    if (problem == "ex1a") return {0.3, 0.5, 0.8};
    if (problem == "ex1b") return {0.2, 0.4, 0.6};
    if (problem == "ex1c") return {0.2, 0.5, 0.7};
    return {0.3, 0.5, 0.7};
  }
  if (command == Command::StudySpace) {
    if (degree == 2) return {0.4, 0.6, 0.8};
    return {0.3, 0.5, 0.7};
  }
  return {0.5};
}

std::string default_problem(Command command) {
  switch (command) {
    case Command::StudyTime: return "ex1a";
    case Command::Regularity: return "ex1b";
    default: return "ex2";
  }
}

double default_tau(Command command, int degree) {
  switch (command) {
    case Command::StudySpace: return degree >= 2 ? 1.0 / 200 : 1.0 / 100;
    case Command::Stability: return 1.0 / 50;
    case Command::CqWeights: return 1.0;
    default: return 1.0 / 100;
  }
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Short form for tables and summaries; number() is for round-tripping.
std::string label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& items, F&& format) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ',';
    s += format(items[i]);
  }
  return s;
}

ProblemSpec problem_for(const RunConfig& config, double alpha) {
  ProblemSpec problem = make_problem(config.problem, alpha);
  problem.final_time = config.final_time;
  return problem;
}

void check_steps(double final_time, double tau) { (void)step_count(final_time, tau); }

bool uses_problem(Command c) {
  return c == Command::Solve || c == Command::StudyTime || c == Command::StudySpace ||
         c == Command::Regularity;
}

}  // namespace

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Solve: return "solve";
    case Command::StudyTime: return "study-time";
    case Command::StudySpace: return "study-space";
    case Command::Stability: return "stability";
    case Command::Regularity: return "regularity";
    case Command::CqWeights: return "cq-weights";
  }
  return "?";
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "markdown";
}

std::string_view to_string(DataTransfer transfer) {
  return transfer == DataTransfer::NodalInterpolation ? "interpolation" : "projection";
}

std::string usage() {
  return "usage: fkk <command> [options]\n"
         "\n"
         "commands:\n"
         "  solve        run one problem and write the final field coefficients\n"
         "  study-time   temporal self-convergence table (fixed mesh, halved steps)\n"
         "  study-space  spatial convergence table against the exact solution\n"
         "  stability    norm-growth probe from random initial data, zero source\n"
         "  regularity   decay slope of the discrete time derivative\n"
         "  cq-weights   convolution weights and their partial sums\n"
         "\n"
         "options (also accepted as `key = value` lines in --config FILE):\n"
         "  --problem ID          ex1a | ex1b | ex1c | ex2\n"
         "  --alpha LIST          fractional orders, comma separated\n"
         "  --n N                 cells per direction\n"
         "  --n-list LIST         cells per direction for study-space\n"
         "  --k K                 polynomial degree\n"
         "  --tau TAU             time step (fractions like 1/100 accepted)\n"
         "  --tau-inverse LIST    1/tau values for study-time\n"
         "  --T T                 final time\n"
         "  --theta THETA         wall penalty\n"
         "  --steps L             number of weights for cq-weights\n"
         "  --trials M            random trials for stability\n"
         "  --seed S              random seed\n"
         "  --output PATH         output file (default standard output)\n"
         "  --format FMT          csv | markdown\n"
         "  --transfer MODE       interpolation | projection\n";
}

RunConfig parse(const std::vector<std::string>& args, const std::optional<std::string>& config_text) {
  CLI::App app{"fkk"};
  app.set_help_flag();
  app.allow_extras(false);
  std::vector<std::string> positional;
  app.add_option("command", positional);
  std::map<std::string, std::string> cli_raw;
  std::map<std::string, CLI::Option*> options;
  for (const auto& key : kKeys) {
    if (key == "command") continue;
    std::string names = "--" + key;
    if (key == "T") names += ",--final-time";
    if (key == "k") names += ",--degree";
    if (key == "output") names += ",-o";
    options[key] = app.add_option(names, cli_raw[key]);
  }
  std::string config_path;
  app.add_option("--config", config_path);

  for (const auto& arg : args) {
    if (arg.rfind("--", 0) != 0) continue;
    const std::string name = canonical_key(arg.substr(2, arg.find('=') - 2));
    if (!is_key(name) && name != "config") throw ConfigError("unknown option '" + arg + "'", arg);
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what(), args.empty() ? std::string() : args.front());
  }

  std::map<std::string, std::string> raw;
  if (config_text) {
    raw = parse_config_text(*config_text);
  } else if (!config_path.empty()) {
    raw = parse_config_text(read_file(config_path));
  }

  if (positional.size() > 1) throw ConfigError("conflicting command '" + positional[1] + "'", positional[1]);
  if (!positional.empty()) {
    if (raw.count("command") && raw["command"] != positional.front()) {
      throw ConfigError("conflicting command '" + positional.front() + "' (config file says '" +
                            raw["command"] + "')",
                        positional.front());
    }
    raw["command"] = positional.front();
  }
  for (const auto& [key, option] : options) {
    if (option->count() > 0) raw[key] = cli_raw[key];
  }
  if (!raw.count("command")) throw ConfigError("no command given", "");

  RunConfig c;
  c.command = parse_command(raw["command"]);
  auto has = [&](const char* key) { return raw.count(key) > 0; };
  c.problem = has("problem") ? raw["problem"] : default_problem(c.command);
  c.degree = has("k") ? parse_int<int>("k", raw["k"]) : 1;
  c.alphas = has("alpha") ? parse_double_list("alpha", raw["alpha"])
                          : default_alphas(c.command, c.problem, c.degree);
  c.n = has("n") ? parse_int<int>("n", raw["n"]) : (c.command == Command::Stability ? 8 : 16);
  if (has("n-list")) c.n_list = parse_int_list("n-list", raw["n-list"]);
  c.tau = has("tau") ? parse_double("tau", raw["tau"]) : default_tau(c.command, c.degree);
  if (has("tau-inverse")) c.tau_inverse = parse_int_list("tau-inverse", raw["tau-inverse"]);
  if (has("T")) c.final_time = parse_double("T", raw["T"]);
  if (has("theta")) c.theta = parse_double("theta", raw["theta"]);
  if (has("steps")) c.steps = parse_int<int>("steps", raw["steps"]);
  if (has("trials")) c.trials = parse_int<int>("trials", raw["trials"]);
  if (has("seed")) c.seed = parse_int<std::uint64_t>("seed", raw["seed"]);
  if (has("output")) c.output = raw["output"];
  if (has("format")) c.format = parse_format(raw["format"]);
  if (has("transfer")) c.transfer = parse_transfer(raw["transfer"]);
  validate(c);
  return c;
}

void validate(const RunConfig& c) {
  if (c.alphas.empty()) throw ConfigError("no alpha given", "alpha");
  if (uses_problem(c.command) && !is_known_problem(c.problem)) {
    throw ConfigError("unknown problem '" + c.problem + "'", c.problem);
  }
  if ((c.command == Command::Solve || c.command == Command::CqWeights) && c.alphas.size() != 1) {
    throw ConfigError(std::string(to_string(c.command)) + " takes a single alpha", "alpha");
  }
  for (double alpha : c.alphas) {
    if (uses_problem(c.command)) {
      (void)make_problem(c.problem, alpha);
    } else {
      (void)CQWeights(alpha, 1.0, 0);
    }
  }
  auto resolution = [](int n) {
    if (n < 1) {
      throw PreconditionError(ErrorCode::InvalidResolution,
                              "cells per direction must be >= 1, got " + std::to_string(n));
    }
  };
  resolution(c.n);
  for (int n : c.n_list) resolution(n);
  if (c.degree < 0) {
    throw PreconditionError(ErrorCode::InvalidDegree,
                            "degree must be >= 0, got " + std::to_string(c.degree));
  }
  if (c.theta <= 0.0) {
    throw PreconditionError(ErrorCode::InvalidPenalty, "penalty must be positive, got " + number(c.theta));
  }
  if (c.trials < 0) throw PreconditionError(ErrorCode::InvalidStep, "trial count must be >= 0");
  if (c.steps < 0) throw PreconditionError(ErrorCode::InvalidStep, "step count must be >= 0");
  if (c.tau <= 0.0) throw PreconditionError(ErrorCode::InvalidStep, "tau must be positive, got " + number(c.tau));

  switch (c.command) {
    case Command::StudyTime:
      for (int inv : c.tau_inverse) {
        if (inv <= 0) {
          throw PreconditionError(ErrorCode::InvalidStep,
                                  "inverse step must be positive, got " + std::to_string(inv));
        }
        check_steps(c.final_time, 1.0 / inv);
        check_steps(c.final_time, 0.5 / inv);
      }
      break;
    case Command::StudySpace:
      if (!make_problem(c.problem, c.alphas.front()).exact) {
        throw ConfigError("problem '" + c.problem + "' has no exact solution", c.problem);
      }
      check_steps(c.final_time, c.tau);
      break;
    case Command::Regularity:
      if (!make_problem(c.problem, c.alphas.front()).zero_source) {
        throw ConfigError("the regularity diagnostic needs a source-free problem", c.problem);
      }
      check_steps(c.final_time, c.tau);
      break;
    case Command::Solve:
    case Command::Stability:
      check_steps(c.final_time, c.tau);
      break;
    case Command::CqWeights:
      break;
  }
}

std::string render(const RunConfig& c) {
  std::string s;
  auto line = [&](const char* key, const std::string& value) {
    s += key;
    s += " = ";
    s += value;
    s += '\n';
  };
  line("command", std::string(to_string(c.command)));
  line("problem", c.problem);
  line("alpha", join(c.alphas, number));
  line("n", std::to_string(c.n));
  line("n-list", join(c.n_list, [](int v) { return std::to_string(v); }));
  line("k", std::to_string(c.degree));
  line("tau", number(c.tau));
  line("tau-inverse", join(c.tau_inverse, [](int v) { return std::to_string(v); }));
  line("T", number(c.final_time));
  line("theta", number(c.theta));
  line("steps", std::to_string(c.steps));
  line("trials", std::to_string(c.trials));
  line("seed", std::to_string(c.seed));
  if (!c.output.empty()) line("output", c.output);
  line("format", std::string(to_string(c.format)));
  line("transfer", std::string(to_string(c.transfer)));
  return s;
}

int exit_code(const std::exception& e) noexcept {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const SolverError*>(&e)) return 3;
  if (dynamic_cast<const Error*>(&e)) return 4;
  return 1;
}

namespace {

void write_tables(std::ostream& out, const RunConfig& c, const std::vector<ConvergenceTable>& tables,
                  const char* caption) {
  if (c.format == OutputFormat::Csv) {
    write_csv(out, tables);
    return;
  }
  out << caption << " (" << c.problem << ", " << tables.front().fixed << ")\n\n";
  write_markdown(out, tables);
}

void run_command(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (uses_problem(c.command)) {
    const ProblemSpec sample = make_problem(c.problem, c.alphas.front());
    if (!sample.note.empty()) err << "note: " << sample.note << '\n';
  }
  switch (c.command) {
    case Command::Solve: {
      const ProblemSpec problem = problem_for(c, c.alphas.front());
      const Trajectory tr = run(problem, RunParams{c.n, c.degree, c.tau, c.theta, c.transfer});
      const DGField final = tr.final_field();
      const double t = tr.time(tr.steps());
      err << "steps " << tr.steps() << ", t = " << label(t) << ", |G_h| = " << format_error(final.l2_norm());
      if (problem.exact) err << ", error = " << format_error(l2_error(final, *problem.exact, t));
      err << '\n';
      write_field_csv(out, final);
      break;
    }
    case Command::StudyTime: {
      std::vector<ConvergenceTable> tables;
      for (double alpha : c.alphas) {
        tables.push_back(temporal_study(problem_for(c, alpha),
                                        TemporalStudyParams{c.n, c.degree, c.theta, c.tau_inverse, c.transfer}));
      }
      write_tables(out, c, tables, "Temporal errors and convergence rates");
      break;
    }
    case Command::StudySpace: {
      std::vector<ConvergenceTable> tables;
      for (double alpha : c.alphas) {
        tables.push_back(spatial_study(problem_for(c, alpha),
                                       SpatialStudyParams{c.degree, c.tau, c.theta, c.n_list, c.transfer}));
      }
      write_tables(out, c, tables, "Spatial errors and convergence rates");
      break;
    }
    case Command::Stability: {
      if (c.format == OutputFormat::Csv) {
        out << "alpha,trial,max_ratio\n";
      } else {
        out << "| alpha | trials | constant |\n|-------|--------|----------|\n";
      }
      for (double alpha : c.alphas) {
        const StabilityResult r = stability_probe(
            StabilityParams{alpha, c.n, c.degree, c.tau, c.theta, c.final_time, c.trials, c.seed});
        if (c.format == OutputFormat::Csv) {
          for (std::size_t i = 0; i < r.trial_maxima.size(); ++i) {
            out << label(alpha) << ',' << i << ',' << format_error(r.trial_maxima[i]) << '\n';
          }
        } else {
          out << "| " << label(alpha) << " | " << c.trials << " | " << format_error(r.constant) << " |\n";
        }
      }
      break;
    }
    case Command::Regularity: {
      if (c.format == OutputFormat::Csv) {
        out << "alpha,slope,first_step,last_step,degenerate\n";
      } else {
        out << "| alpha | slope | window | degenerate |\n|-------|-------|--------|------------|\n";
      }
      for (double alpha : c.alphas) {
        const RegularityResult r = regularity_diagnostic(
            problem_for(c, alpha), RegularityParams{alpha, c.n, c.degree, c.tau, c.theta, c.transfer});
        const std::string slope = r.degenerate ? "nan" : format_rate(r.slope);
        if (c.format == OutputFormat::Csv) {
          out << label(alpha) << ',' << slope << ',' << r.first_step << ',' << r.last_step << ','
              << (r.degenerate ? 1 : 0) << '\n';
        } else {
          out << "| " << label(alpha) << " | " << slope << " | " << r.first_step << ".." << r.last_step
              << " | " << (r.degenerate ? "yes" : "no") << " |\n";
        }
      }
      break;
    }
    case Command::CqWeights: {
      const CQWeights w(c.alphas.front(), c.tau, static_cast<std::size_t>(c.steps));
      if (c.format == OutputFormat::Csv) {
        out << "j,weight,partial_sum\n";
      } else {
        out << "| j | weight | partial sum |\n|---|--------|-------------|\n";
      }
      for (std::size_t j = 0; j <= w.steps(); ++j) {
        if (c.format == OutputFormat::Csv) {
          out << j << ',' << format_error(w[j]) << ',' << format_error(w.partial_sum(j)) << '\n';
        } else {
          out << "| " << j << " | " << format_error(w[j]) << " | " << format_error(w.partial_sum(j)) << " |\n";
        }
      }
      break;
    }
  }
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    if (config.output.empty()) {
      run_command(config, out, err);
    } else {
      std::ostringstream buffer;
      run_command(config, buffer, err);
      std::ofstream file(config.output);
      if (!file) throw ConfigError("cannot write '" + config.output + "'", config.output);
      file << buffer.str();
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e);
  }
}

}  // namespace fkk
