#include "fkk/ldg.hpp"

#include <cmath>
#include <regex>
#include <string>

#include <Eigen/SparseLU>

#include "fkk/error.hpp"

namespace fkk {

namespace {

using Triplet = Eigen::Triplet<double>;

SparseMatrix from_triplets(std::size_t n, const std::vector<Triplet>& entries) {
  SparseMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.setFromTriplets(entries.begin(), entries.end());
  m.makeCompressed();
  return m;
}

}  // namespace

SparseMatrix assemble_mass(const Space& space) {
  std::vector<Triplet> entries;
  entries.reserve(space.dofs());
  const double jac = space.jacobian();
  for (std::size_t d = 0; d < space.dofs(); ++d) {
    entries.emplace_back(static_cast<int>(d), static_cast<int>(d), jac);
  }
  return from_triplets(space.dofs(), entries);
}

SparseMatrix assemble_velocity_mass(const Space& space) {
  const auto& mesh = space.mesh;
  const auto& basis = space.basis;
  const int m = basis.modes_1d();
  const double h = mesh.h();
  const double jac = space.jacobian();
  std::vector<Triplet> entries;
  for (int i = 0; i < mesh.n(); ++i) {
    for (int j = 0; j < mesh.n(); ++j) {
      const auto cell = mesh.cell_index(i, j);
      // v = v_center + (h/2) eta on the cell.
      const double center = mesh.node(j) + 0.5 * h;
      for (int a = 0; a < m; ++a) {
        for (int bt = 0; bt < m; ++bt) {
          for (int b = 0; b < m; ++b) {
            double val = 0.5 * h * basis.first_moment(bt, b);
            if (bt == b) val += center;
            if (val == 0.0) continue;
            entries.emplace_back(static_cast<int>(space.dof(cell, basis.mode_index(a, bt))),
                                 static_cast<int>(space.dof(cell, basis.mode_index(a, b))),
                                 jac * val);
          }
        }
      }
    }
  }
  return from_triplets(space.dofs(), entries);
}

SparseMatrix assemble_penalty(const Space& space, double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw PreconditionError(ErrorCode::InvalidPenalty,
                            "penalty must be positive, got " + std::to_string(theta));
  }
  const auto& mesh = space.mesh;
  const auto& basis = space.basis;
  const int m = basis.modes_1d();
  // (theta / h) * (h / 2) from the face Jacobian.
  const double scale = 0.5 * theta;
  std::vector<Triplet> entries;
  for (int i = 0; i < mesh.n(); ++i) {
    const auto cell = mesh.cell_index(i, 0);
    for (int a = 0; a < m; ++a) {
      for (int bt = 0; bt < m; ++bt) {
        for (int b = 0; b < m; ++b) {
          entries.emplace_back(static_cast<int>(space.dof(cell, basis.mode_index(a, bt))),
                               static_cast<int>(space.dof(cell, basis.mode_index(a, b))),
                               scale * basis.left_trace(bt) * basis.left_trace(b));
        }
      }
    }
  }
  return from_triplets(space.dofs(), entries);
}

GradientOperators assemble_gradient(const Space& space) {
  const auto& mesh = space.mesh;
  const auto& basis = space.basis;
  const int n = mesh.n();
  const int m = basis.modes_1d();
  const double half_h = 0.5 * mesh.h();

  std::vector<Triplet> dx_entries;
  std::vector<Triplet> dv_entries;
  auto row = [&](std::size_t cell, int a, int b) {
    return static_cast<int>(space.dof(cell, basis.mode_index(a, b)));
  };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto cell = mesh.cell_index(i, j);
      for (int at = 0; at < m; ++at) {
        for (int bt = 0; bt < m; ++bt) {
          const int r = row(cell, at, bt);
          for (int s = 0; s < m; ++s) {
            // x direction: trial (s, bt). The right face flux is the own trace
            // and cancels; the left face sees the left neighbor (or 0).
            const double self_x =
                basis.stiffness(at, s) + basis.left_trace(s) * basis.left_trace(at);
            dx_entries.emplace_back(r, row(cell, s, bt), half_h * self_x);
            if (i > 0) {
              dx_entries.emplace_back(r, row(mesh.cell_index(i - 1, j), s, bt),
                                      -half_h * basis.right_trace(s) * basis.left_trace(at));
            }
            // v direction: trial (at, s). The bottom face flux is the own
            // trace except at v = 0; the top face sees the cell above (or 0).
            double self_v =
                basis.stiffness(bt, s) - basis.right_trace(s) * basis.right_trace(bt);
            if (j == 0) self_v += basis.left_trace(s) * basis.left_trace(bt);
            dv_entries.emplace_back(r, row(cell, at, s), half_h * self_v);
            if (j + 1 < n) {
              dv_entries.emplace_back(r, row(mesh.cell_index(i, j + 1), at, s),
                                      half_h * basis.left_trace(s) * basis.right_trace(bt));
            }
          }
        }
      }
    }
  }
  return {from_triplets(space.dofs(), dx_entries), from_triplets(space.dofs(), dv_entries)};
}

SparseMatrix assemble_spatial(const Space& space, double theta) {
  const SparseMatrix penalty = assemble_penalty(space, theta);
  const GradientOperators grad = assemble_gradient(space);
  const SparseMatrix mass = assemble_mass(space);
  const SparseMatrix vmass = assemble_velocity_mass(space);
  const double inv_jac = 1.0 / space.jacobian();

  const SparseMatrix px = inv_jac * grad.dx;
  const SparseMatrix pv = inv_jac * grad.dv;
  SparseMatrix convection = vmass * (px - pv);
  SparseMatrix diffusion = SparseMatrix(grad.dv.transpose()) * pv;
  SparseMatrix spatial = convection + diffusion + penalty - mass;
  spatial.prune(0.0);
  spatial.makeCompressed();
  return spatial;
}

struct LDGSystem::Factorization {
  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
};

LDGSystem::LDGSystem(Space space, SparseMatrix spatial, double d0)
    : space_(std::move(space)), d0_(d0), spatial_(std::move(spatial)) {
  if (!(d0 > 0.0) || !std::isfinite(d0)) {
    throw PreconditionError(ErrorCode::InvalidStep,
                            "leading CQ weight must be positive, got " + std::to_string(d0));
  }
  if (spatial_.rows() != static_cast<Eigen::Index>(space_.dofs()) ||
      spatial_.cols() != spatial_.rows()) {
    throw PreconditionError(ErrorCode::ShapeMismatch,
                            "spatial operator is " + std::to_string(spatial_.rows()) + "x" +
                                std::to_string(spatial_.cols()) + ", space has " +
                                std::to_string(space_.dofs()) + " dofs");
  }
  mass_ = assemble_mass(space_);
  matrix_ = d0_ * mass_ + spatial_;
  matrix_.makeCompressed();
  lu_ = std::make_unique<Factorization>();
  lu_->lu.analyzePattern(matrix_);
  lu_->lu.factorize(matrix_);
  if (lu_->lu.info() != Eigen::Success) {
    const std::string message = lu_->lu.lastErrorMessage();
    long pivot = -1;
    std::smatch match;
    if (std::regex_search(message, match, std::regex(R"((\d+)\s*$)"))) pivot = std::stol(match[1]);
    throw SolverError("sparse LU failed (" + message + "); pivot " + std::to_string(pivot) +
                          ", d0 = " + std::to_string(d0_),
                      pivot);
  }
}

LDGSystem::LDGSystem(LDGSystem&&) noexcept = default;
LDGSystem& LDGSystem::operator=(LDGSystem&&) noexcept = default;
LDGSystem::~LDGSystem() = default;

Eigen::VectorXd LDGSystem::solve(const Eigen::VectorXd& b) const {
  if (b.size() != matrix_.rows()) {
    throw PreconditionError(ErrorCode::ShapeMismatch,
                            "right-hand side has " + std::to_string(b.size()) +
                                " entries, system has " + std::to_string(matrix_.rows()));
  }
  Eigen::VectorXd x = lu_->lu.solve(b);
  const double residual = (matrix_ * x - b).norm();
  if (!(residual <= 1e-10 * b.norm())) {
    throw SolverError("solve residual " + std::to_string(residual) + " exceeds 1e-10 |b| = " +
                          std::to_string(1e-10 * b.norm()),
                      -1);
  }
  return x;
}

LDGSystem assemble_system(const Space& space, const SparseMatrix& spatial, double d0) {
  return LDGSystem(space, spatial, d0);
}

DGField project_initial(const ProblemSpec& problem, const Space& space) {
  check_alignment(problem.initial_breaks, space.mesh);
  return project_function(space, problem.initial);
}

DGField interpolate_initial(const ProblemSpec& problem, const Space& space) {
  check_alignment(problem.initial_breaks, space.mesh);
  return interpolate_function(space, problem.initial);
}

DGField step(const LDGSystem& system, const CQWeights& weights,
             std::span<const Eigen::VectorXd> history, const Eigen::VectorXd& load) {
  const std::size_t n = history.size();
  Eigen::VectorXd rhs = system.space().jacobian() * history_combination(weights, history, n);
  if (load.size() != 0) rhs += load;
  return DGField(system.space(), system.solve(rhs));
}

Trajectory integrate(const LDGSystem& system, const CQWeights& weights, const DGField& initial,
                     const LoadFunction& load) {
  if (!(initial.space() == system.space())) {
    throw PreconditionError(ErrorCode::IncompatibleMesh,
                            "initial field and system live on different spaces");
  }
  const std::size_t steps = weights.steps();
  std::vector<Eigen::VectorXd> states;
  states.reserve(steps + 1);
  states.push_back(initial.coeffs());
  const Eigen::VectorXd none;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t = static_cast<double>(n) * weights.tau();
    const Eigen::VectorXd f = load ? load(t) : none;
    DGField next = step(system, weights, states, f);
    states.push_back(std::move(next.coeffs()));
  }
  return Trajectory(system.space(), weights.tau(), std::move(states));
}

std::size_t step_count(double final_time, double tau) {
  if (!(tau > 0.0)) {
    throw PreconditionError(ErrorCode::InvalidStep,
                            "step size must be positive, got " + std::to_string(tau));
  }
  if (!(final_time >= 0.0)) {
    throw PreconditionError(ErrorCode::InvalidStep,
                            "final time must be >= 0, got " + std::to_string(final_time));
  }
  const double ratio = final_time / tau;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw PreconditionError(ErrorCode::NonIntegralSteps,
                            "T / tau = " + std::to_string(ratio) + " is not an integer");
  }
  return static_cast<std::size_t>(rounded);
}

Trajectory run(const ProblemSpec& problem, const RunParams& params) {
  const std::size_t steps = step_count(problem.final_time, params.tau);
  const Space space(params.n, params.degree);
  const CQWeights weights(problem.alpha, params.tau, steps);
  const LDGSystem system(space, assemble_spatial(space, params.theta), weights[0]);
  const bool nodal = params.transfer == DataTransfer::NodalInterpolation;
  const DGField initial =
      nodal ? interpolate_initial(problem, space) : project_initial(problem, space);
  LoadFunction load;
  if (!problem.zero_source) {
    check_alignment(problem.source_breaks, space.mesh);
    if (nodal) {
      load = [&](double t) { return interpolated_load_vector(problem, t, space); };
    } else {
      load = [&](double t) { return load_vector(problem, t, space); };
    }
  }
  return integrate(system, weights, initial, load);
}

}  // namespace fkk
