#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fkk/cq_time.hpp"
#include "fkk/dg_field.hpp"
#include "fkk/problems.hpp"

namespace fkk {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Discrete gradient of the LDG auxiliary equation,
///   (P, nu) = (grad G, nu) - (G - G_hat, n . nu)_boundary,
/// with G_hat taken from the left in x (0 at x = 0) and from above in v
/// (0 at v = 0 and v = 1). P_x = M^-1 dx g and P_v = M^-1 dv g.
struct GradientOperators {
  SparseMatrix dx;
  SparseMatrix dv;
};

/// Diagonal mass operator; (h/2)^2 times the identity.
SparseMatrix assemble_mass(const Space& space);
/// Block-diagonal mass weighted by the velocity coordinate, (v phi, mu).
SparseMatrix assemble_velocity_mass(const Space& space);
/// Bottom-wall penalty (theta / h) int g(v_0^+) mu(v_0^+) dx.
SparseMatrix assemble_penalty(const Space& space, double theta);

GradientOperators assemble_gradient(const Space& space);

/// All spatial terms of the step equation acting on the unknown,
///   V M^-1 Dx - V M^-1 Dv + Dv^T M^-1 Dv + penalty - M,
/// where the trailing -M carries the +(G, mu) term of the right side.
SparseMatrix assemble_spatial(const Space& space, double theta);

/// Step operator A = d0 M + L_h with a sparse LU computed once.
class LDGSystem {
 public:
  LDGSystem(Space space, SparseMatrix spatial, double d0);
  LDGSystem(LDGSystem&&) noexcept;
  LDGSystem& operator=(LDGSystem&&) noexcept;
  ~LDGSystem();

  const Space& space() const noexcept { return space_; }
  double d0() const noexcept { return d0_; }
  const SparseMatrix& mass() const noexcept { return mass_; }
  const SparseMatrix& spatial() const noexcept { return spatial_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }

  /// Solves A x = b; throws SolverError if the residual exceeds 1e-10 |b|.
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;

 private:
  struct Factorization;
  Space space_;
  double d0_;
  SparseMatrix mass_;
  SparseMatrix spatial_;
  SparseMatrix matrix_;
  std::unique_ptr<Factorization> lu_;
};

LDGSystem assemble_system(const Space& space, const SparseMatrix& spatial, double d0);

/// Cell-wise L2 projection of the initial datum, after checking that its
/// discontinuity lines are mesh lines.
DGField project_initial(const ProblemSpec& problem, const Space& space);

/// One CQ step: solves A g^n = M r + load, r the known history combination.
/// `history` holds g^0..g^{n-1}.
DGField step(const LDGSystem& system, const CQWeights& weights,
             std::span<const Eigen::VectorXd> history, const Eigen::VectorXd& load);

/// Nodal interpolation of the initial datum (see interpolate_function).
DGField interpolate_initial(const ProblemSpec& problem, const Space& space);

/// How G_0 and f enter the discrete problem.
enum class DataTransfer {
  /// Cell-wise L2 projection of G_0, Gauss quadrature of (f, mu).
  L2Projection,
  /// Nodal interpolation of G_0 and f at the equispaced element nodes. This
  /// is the representation that reproduces the reference convergence tables.
  NodalInterpolation,
};

struct RunParams {
  int n = 16;
  int degree = 1;
  double tau = 0.1;
  double theta = 1.0;
  DataTransfer transfer = DataTransfer::NodalInterpolation;
};

/// Fields g^0..g^L at t_n = n tau on one space.
class Trajectory {
 public:
  Trajectory(Space space, double tau, std::vector<Eigen::VectorXd> states)
      : space_(std::move(space)), tau_(tau), states_(std::move(states)) {}

  const Space& space() const noexcept { return space_; }
  double tau() const noexcept { return tau_; }
  std::size_t steps() const noexcept { return states_.size() - 1; }
  double time(std::size_t n) const noexcept { return static_cast<double>(n) * tau_; }
  DGField field(std::size_t n) const { return DGField(space_, states_.at(n)); }
  DGField final_field() const { return field(steps()); }
  const std::vector<Eigen::VectorXd>& states() const noexcept { return states_; }

 private:
  Space space_;
  double tau_;
  std::vector<Eigen::VectorXd> states_;
};

/// Modal load at time t; an empty function means a zero source.
using LoadFunction = std::function<Eigen::VectorXd(double t)>;

/// Time loop from a given initial field.
Trajectory integrate(const LDGSystem& system, const CQWeights& weights, const DGField& initial,
                     const LoadFunction& load);

/// Number of steps T / tau; throws NonIntegralSteps unless it is an integer.
std::size_t step_count(double final_time, double tau);

Trajectory run(const ProblemSpec& problem, const RunParams& params);

}  // namespace fkk
