#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fkk/ldg.hpp"

namespace fkk {

struct ConvergenceRow {
  double resolution;  // 1/tau or N
  double error;
  std::optional<double> rate;  // empty on the first row
};

struct ConvergenceTable {
  std::string axis;  // "1/tau" or "1/h"
  std::string problem;
  double alpha = 0.0;
  int degree = 1;
  std::string fixed;  // human-readable record of the fixed parameters
  std::vector<ConvergenceRow> rows;
};

/// ln(e_i / e_{i+1}) / ln(r_{i+1} / r_i) for consecutive resolutions.
std::vector<double> convergence_rates(const std::vector<double>& resolutions,
                                      const std::vector<double>& errors);

/// Fills the rate column of the table from its errors.
void assign_rates(ConvergenceTable& table);

double l2_error(const DGField& a, const DGField& b);
/// Field against exact(., ., t), by quadrature with k + 3 points.
double l2_error(const DGField& a, const SpaceTimeFunction& exact, double t);

struct TemporalStudyParams {
  int n = 16;
  int degree = 1;
  double theta = 1.0;
  std::vector<int> inverse_steps = {10, 20, 40, 80, 160};
  DataTransfer transfer = DataTransfer::NodalInterpolation;
};

/// Self-convergence in time on a fixed mesh: E_tau = |G_tau - G_{tau/2}| at T.
ConvergenceTable temporal_study(const ProblemSpec& problem, const TemporalStudyParams& params);

struct SpatialStudyParams {
  int degree = 1;
  double tau = 0.01;
  double theta = 1.0;
  std::vector<int> cells = {4, 8, 12, 16, 20};
  DataTransfer transfer = DataTransfer::NodalInterpolation;
};

/// Error against the exact solution at T for a sequence of meshes.
ConvergenceTable spatial_study(const ProblemSpec& problem, const SpatialStudyParams& params);

/// |g^n| / |g^0| for n = 0..L; all zeros when g^0 = 0.
std::vector<double> norm_ratios(const Trajectory& trajectory);

struct StabilityParams {
  double alpha = 0.5;
  int n = 8;
  int degree = 1;
  double tau = 0.02;
  double theta = 1.0;
  double final_time = 1.0;
  int trials = 10;
  std::uint64_t seed = 0;
};

struct StabilityResult {
  double constant = 0.0;              // max over trials
  std::vector<double> trial_maxima;   // 0 for skipped (zero) trials
};

/// Source-free runs from random modal initial data (standard normal
/// coefficients); reports max_n |g^n| / |g^0|.
StabilityResult stability_probe(const StabilityParams& params);

struct RegularityParams {
  double alpha = 0.5;
  int n = 16;
  int degree = 1;
  double tau = 0.01;
  double theta = 1.0;
  DataTransfer transfer = DataTransfer::NodalInterpolation;
};

struct RegularityResult {
  double slope = 0.0;
  bool degenerate = false;
  std::size_t first_step = 0;
  std::size_t last_step = 0;
};

/// Least-squares slope of log |(g^n - g^{n-1}) / tau| against log t_n over
/// n in [2, L/2]. Flags a degenerate fit when a difference quotient vanishes.
RegularityResult regularity_fit(const Trajectory& trajectory);
RegularityResult regularity_diagnostic(const ProblemSpec& problem, const RegularityParams& params);

/// 4-significant-digit scientific format, e.g. 2.726E-04.
std::string format_error(double value);
std::string format_rate(double value);

/// CSV with header alpha,resolution,error,rate.
void write_csv(std::ostream& out, const std::vector<ConvergenceTable>& tables);
/// Markdown table: one row of errors per alpha followed by a Rate row.
void write_markdown(std::ostream& out, const std::vector<ConvergenceTable>& tables);

}  // namespace fkk
