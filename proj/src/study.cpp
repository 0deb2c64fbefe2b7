#include "fkk/study.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>

#include "fkk/error.hpp"

namespace fkk {

namespace {

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::vector<double> convergence_rates(const std::vector<double>& resolutions,
                                      const std::vector<double>& errors) {
  if (resolutions.size() != errors.size()) {
    throw PreconditionError(ErrorCode::ShapeMismatch,
                            std::to_string(resolutions.size()) + " resolutions vs " +
                                std::to_string(errors.size()) + " errors");
  }
  std::vector<double> rates;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    rates.push_back(std::log(errors[i] / errors[i + 1]) /
                    std::log(resolutions[i + 1] / resolutions[i]));
  }
  return rates;
}

void assign_rates(ConvergenceTable& table) {
  std::vector<double> res;
  std::vector<double> err;
  for (const auto& row : table.rows) {
    res.push_back(row.resolution);
    err.push_back(row.error);
  }
  const auto rates = convergence_rates(res, err);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    table.rows[i].rate = i == 0 ? std::nullopt : std::optional<double>(rates[i - 1]);
  }
}

double l2_error(const DGField& a, const DGField& b) { return l2_distance(a, b); }

double l2_error(const DGField& a, const SpaceTimeFunction& exact, double t) {
  return l2_distance(a, [&](double x, double v) { return exact(x, v, t); });
}

ConvergenceTable temporal_study(const ProblemSpec& problem, const TemporalStudyParams& params) {
  if (params.inverse_steps.empty()) {
    throw PreconditionError(ErrorCode::InvalidStep, "empty step list");
  }
  ConvergenceTable table;
  table.axis = "1/tau";
  table.problem = problem.id;
  table.alpha = problem.alpha;
  table.degree = params.degree;
  table.fixed = "N=" + std::to_string(params.n) + " k=" + std::to_string(params.degree) +
                " theta=" + compact(params.theta) + " T=" + compact(problem.final_time);

  auto final_field = [&](int inverse_step) {
    RunParams rp{params.n, params.degree, 1.0 / inverse_step, params.theta, params.transfer};
    return run(problem, rp).final_field();
  };

  // Consecutive entries of the usual list double, so each fine run is reused
  // as the next coarse one.
  std::optional<DGField> coarse;
  int coarse_inverse = 0;
  for (int inverse : params.inverse_steps) {
    if (inverse <= 0) {
      throw PreconditionError(ErrorCode::InvalidStep,
                              "inverse step must be positive, got " + std::to_string(inverse));
    }
    if (!coarse || coarse_inverse != inverse) {
      coarse = final_field(inverse);
      coarse_inverse = inverse;
    }
    DGField fine = final_field(2 * inverse);
    table.rows.push_back({static_cast<double>(inverse), l2_error(*coarse, fine), std::nullopt});
    coarse = std::move(fine);
    coarse_inverse = 2 * inverse;
  }
  assign_rates(table);
  return table;
}

ConvergenceTable spatial_study(const ProblemSpec& problem, const SpatialStudyParams& params) {
  if (!problem.exact) {
    throw PreconditionError(ErrorCode::InvalidProjection,
                            "problem '" + problem.id + "' has no exact solution");
  }
  ConvergenceTable table;
  table.axis = "1/h";
  table.problem = problem.id;
  table.alpha = problem.alpha;
  table.degree = params.degree;
  table.fixed = "k=" + std::to_string(params.degree) + " tau=" + compact(params.tau) +
                " theta=" + compact(params.theta) + " T=" + compact(problem.final_time);
  for (int n : params.cells) {
    RunParams rp{n, params.degree, params.tau, params.theta, params.transfer};
    const Trajectory tr = run(problem, rp);
    const double t = tr.time(tr.steps());
    table.rows.push_back({static_cast<double>(n), l2_error(tr.final_field(), *problem.exact, t),
                          std::nullopt});
  }
  assign_rates(table);
  return table;
}

std::vector<double> norm_ratios(const Trajectory& trajectory) {
  const auto& states = trajectory.states();
  std::vector<double> ratios(states.size(), 0.0);
  const double base = states.front().norm();
  if (base == 0.0) return ratios;
  for (std::size_t n = 0; n < states.size(); ++n) ratios[n] = states[n].norm() / base;
  return ratios;
}

StabilityResult stability_probe(const StabilityParams& params) {
  if (params.trials < 0) {
    throw PreconditionError(ErrorCode::InvalidStep, "trial count must be >= 0");
  }
  const Space space(params.n, params.degree);
  const std::size_t steps = step_count(params.final_time, params.tau);
  const CQWeights weights(params.alpha, params.tau, steps);
  const LDGSystem system(space, assemble_spatial(space, params.theta), weights[0]);

  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  StabilityResult result;
  for (int trial = 0; trial < params.trials; ++trial) {
    Eigen::VectorXd coeffs(space.dofs());
    for (auto& c : coeffs) c = normal(rng);
    const DGField initial(space, coeffs);
    double worst = 0.0;
    if (initial.l2_norm() > 0.0) {
      const auto ratios = norm_ratios(integrate(system, weights, initial, {}));
      for (double r : ratios) worst = std::max(worst, r);
    }
    result.trial_maxima.push_back(worst);
    result.constant = std::max(result.constant, worst);
  }
  return result;
}

RegularityResult regularity_fit(const Trajectory& trajectory) {
  RegularityResult result;
  const std::size_t steps = trajectory.steps();
  result.first_step = 2;
  result.last_step = steps / 2;
  if (result.last_step < result.first_step + 1) {
    result.degenerate = true;
    result.slope = std::nan("");
    return result;
  }
  const auto& states = trajectory.states();
  const double tau = trajectory.tau();
  const double scale = std::sqrt(trajectory.space().jacobian());
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t n = result.first_step; n <= result.last_step; ++n) {
    const double quotient = scale * (states[n] - states[n - 1]).norm() / tau;
    if (!(quotient > 0.0) || !std::isfinite(quotient)) {
      result.degenerate = true;
      result.slope = std::nan("");
      return result;
    }
    xs.push_back(std::log(trajectory.time(n)));
    ys.push_back(std::log(quotient));
  }
  const double count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  result.slope = sxy / sxx;
  return result;
}

RegularityResult regularity_diagnostic(const ProblemSpec& problem, const RegularityParams& params) {
  RunParams rp{params.n, params.degree, params.tau, params.theta, params.transfer};
  return regularity_fit(run(problem, rp));
}

std::string format_error(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3E", value);
  return buf;
}

std::string format_rate(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

namespace {

std::string format_resolution(double r) {
  char buf[32];
  if (r == std::round(r)) {
    std::snprintf(buf, sizeof buf, "%.0f", r);
  } else {
    std::snprintf(buf, sizeof buf, "%.6g", r);
  }
  return buf;
}

std::string format_alpha(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", a);
  return buf;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ConvergenceTable>& tables) {
  out << "alpha,resolution,error,rate\n";
  for (const auto& table : tables) {
    for (const auto& row : table.rows) {
      out << format_alpha(table.alpha) << ',' << format_resolution(row.resolution) << ','
          << format_error(row.error) << ',' << (row.rate ? format_rate(*row.rate) : "") << '\n';
    }
  }
}

void write_markdown(std::ostream& out, const std::vector<ConvergenceTable>& tables) {
  if (tables.empty()) return;
  const auto& first = tables.front();
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header{"alpha \\ " + first.axis};
  for (const auto& row : first.rows) header.push_back(format_resolution(row.resolution));
  cells.push_back(header);
  for (const auto& table : tables) {
    std::vector<std::string> errors{format_alpha(table.alpha)};
    std::vector<std::string> rates{"", "Rate"};
    for (const auto& row : table.rows) {
      errors.push_back(format_error(row.error));
      if (row.rate) rates.push_back(format_rate(*row.rate));
    }
    errors.resize(header.size());
    rates.resize(header.size());
    cells.push_back(errors);
    cells.push_back(rates);
  }
  std::vector<std::size_t> width(header.size(), 3);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  auto emit = [&](const std::vector<std::string>& line) {
    out << '|';
    for (std::size_t c = 0; c < line.size(); ++c) {
      out << ' ' << line[c] << std::string(width[c] - line[c].size(), ' ') << " |";
    }
    out << '\n';
  };
  emit(cells[0]);
  out << '|';
  for (std::size_t c = 0; c < header.size(); ++c) out << std::string(width[c] + 2, '-') << '|';
  out << '\n';
  for (std::size_t r = 1; r < cells.size(); ++r) emit(cells[r]);
}

}  // namespace fkk
