#include "fkk/problems.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fkk/error.hpp"

namespace fkk {

namespace {

constexpr double kPi = std::numbers::pi;

// Indicator of (0.5, 1) x (0, 0.5), closed on the x = 1 and v = 0 walls.
double corner_indicator(double x, double v) {
  return (x > 0.5 && x <= 1.0 && v >= 0.0 && v < 0.5) ? 1.0 : 0.0;
}

void require_order(double alpha, bool allow_one) {
  const bool ok = alpha > 0.0 && (allow_one ? alpha <= 1.0 : alpha < 1.0);
  if (!ok) {
    throw PreconditionError(ErrorCode::OrderOutOfRange,
                            "fractional order must lie in (0, " +
                                std::string(allow_one ? "1]" : "1)") + ", got " +
                                std::to_string(alpha));
  }
}

const std::vector<Discontinuity> kCornerBreaks = {{Axis::X, 0.5}, {Axis::V, 0.5}};

}  // namespace

ProblemSpec example1(Example1Case which, double alpha) {
  require_order(alpha, false);
  ProblemSpec p;
  p.alpha = alpha;
  p.final_time = 1.0;
  switch (which) {
    case Example1Case::A:
      p.id = "ex1a";
      p.initial = [](double x, double v) { return x * std::sin(kPi * v); };
      p.source = [](double, double, double) { return 0.0; };
      p.zero_source = true;
      break;
    case Example1Case::B:
      p.id = "ex1b";
      p.initial = corner_indicator;
      p.source = [](double, double, double) { return 0.0; };
      p.zero_source = true;
      p.initial_breaks = kCornerBreaks;
      break;
    case Example1Case::C:
      p.id = "ex1c";
      p.initial = [](double, double) { return 0.0; };
      // The time exponent is 0.8 for every alpha.
      p.source = [](double x, double v, double t) {
        return corner_indicator(x, v) * std::pow(t, 0.8);
      };
      p.source_breaks = kCornerBreaks;
      break;
  }
  return p;
}

ProblemSpec example2(double alpha) {
  require_order(alpha, true);
  ProblemSpec p;
  p.id = "ex2";
  p.alpha = alpha;
  p.final_time = 1.0;
  p.initial = [](double x, double v) { return std::sin(kPi * x) * std::sin(kPi * v); };
  const double gamma = std::tgamma(alpha + 1.0);
  p.source = [alpha, gamma](double x, double v, double t) {
    const double sx = std::sin(kPi * x);
    const double cx = std::cos(kPi * x);
    const double sv = std::sin(kPi * v);
    const double cv = std::cos(kPi * v);
    const double bracket =
        kPi * kPi * sx * sv + v * kPi * cx * sv - v * kPi * sx * cv - sx * sv;
    return gamma * sx * sv + (std::pow(t, alpha) + 1.0) * bracket;
  };
  p.exact = [alpha](double x, double v, double t) {
    return (std::pow(t, alpha) + 1.0) * std::sin(kPi * x) * std::sin(kPi * v);
  };
  p.note =
      "ex2 source uses the time factor (t^alpha + 1), the one consistent with the exact "
      "solution (t^alpha + 1) sin(pi x) sin(pi v); the factor t^(alpha+1) would not reproduce "
      "it.";
  return p;
}

bool is_known_problem(std::string_view id) {
  return id == "ex1a" || id == "ex1b" || id == "ex1c" || id == "ex2";
}

ProblemSpec make_problem(std::string_view id, double alpha) {
  if (id == "ex1a") return example1(Example1Case::A, alpha);
  if (id == "ex1b") return example1(Example1Case::B, alpha);
  if (id == "ex1c") return example1(Example1Case::C, alpha);
  if (id == "ex2") return example2(alpha);
  throw ConfigError("unknown problem id '" + std::string(id) + "'", std::string(id));
}

void check_alignment(const std::vector<Discontinuity>& breaks, const Mesh2D& mesh) {
  for (const auto& line : breaks) {
    if (!mesh.is_mesh_line(line.at)) {
      throw PreconditionError(ErrorCode::MisalignedDiscontinuity,
                              std::string(line.axis == Axis::X ? "x" : "v") + " = " +
                                  std::to_string(line.at) + " is not a mesh line for N=" +
                                  std::to_string(mesh.n()));
    }
  }
}

Eigen::VectorXd load_vector(const ProblemSpec& problem, double t, const Space& space,
                            int points) {
  if (problem.zero_source) return Eigen::VectorXd::Zero(space.dofs());
  check_alignment(problem.source_breaks, space.mesh);
  const DGField moments = project_function(
      space, [&](double x, double v) { return problem.source(x, v, t); }, points);
  // project_function returns reference moments; the load carries the Jacobian.
  return space.jacobian() * moments.coeffs();
}

Eigen::VectorXd interpolated_load_vector(const ProblemSpec& problem, double t,
                                         const Space& space) {
  if (problem.zero_source) return Eigen::VectorXd::Zero(space.dofs());
  const DGField nodal =
      interpolate_function(space, [&](double x, double v) { return problem.source(x, v, t); });
  return space.jacobian() * nodal.coeffs();
}

}  // namespace fkk
