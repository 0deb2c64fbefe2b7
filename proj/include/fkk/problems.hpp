#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fkk/dg_field.hpp"

namespace fkk {

enum class Axis { X, V };

/// A line x = c or v = c across which problem data jumps. Such lines must be
/// mesh lines for the cell-wise quadrature to stay exact.
struct Discontinuity {
  Axis axis;
  double at;
};

/// Data of one instance of the fractional Klein-Kramers problem on the unit
/// square, with homogeneous inflow/wall conditions
///   G(x, 0) = G(x, 1) = G(0, v) = 0.
struct ProblemSpec {
  std::string id;
  double alpha = 0.5;
  double final_time = 1.0;
  Function2D initial;
  SpaceTimeFunction source;
  std::optional<SpaceTimeFunction> exact;
  std::vector<Discontinuity> initial_breaks;
  std::vector<Discontinuity> source_breaks;
  bool zero_source = false;
  /// Printed once by the CLI when the problem is selected.
  std::string note;
};

enum class Example1Case { A, B, C };

/// Temporal-convergence problems, T = 1:
///   a: G0 = x sin(pi v), f = 0
///   b: G0 = indicator of (0.5,1)x(0,0.5), f = 0
///   c: G0 = 0, f = same indicator times t^0.8
/// On the closed square the indicator is 1 for x in (0.5, 1], v in [0, 0.5),
/// which only matters for nodal interpolation.
ProblemSpec example1(Example1Case which, double alpha);

/// Manufactured problem with exact solution (t^alpha + 1) sin(pi x) sin(pi v).
/// alpha = 1 is admitted for backward-Euler cross-checks.
ProblemSpec example2(double alpha);

/// Lookup by id: "ex1a", "ex1b", "ex1c", "ex2".
ProblemSpec make_problem(std::string_view id, double alpha);
bool is_known_problem(std::string_view id);

/// Throws MisalignedDiscontinuity naming the first offending line.
void check_alignment(const std::vector<Discontinuity>& breaks, const Mesh2D& mesh);

/// Modal load (f(., ., t), phi_m) over each cell, tensor Gauss with
/// `points` per direction (defaults to k + 2).
Eigen::VectorXd load_vector(const ProblemSpec& problem, double t, const Space& space,
                            int points = 0);

/// Modal load of the nodal interpolant of f(., ., t): M times its coefficients.
Eigen::VectorXd interpolated_load_vector(const ProblemSpec& problem, double t,
                                         const Space& space);

}  // namespace fkk
