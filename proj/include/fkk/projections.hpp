#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fkk/dg_field.hpp"

namespace fkk {

/// 1D projections onto polynomials of degree k on an interval:
///   Plain: L2 projection;
///   Plus:  moments against degree k-1 plus a match at the left endpoint;
///   Minus: moments against degree k-1 plus a match at the right endpoint.
enum class ProjectionKind { Plain, Plus, Minus };

/// Degree-k polynomial on [lo, hi] in the orthonormal Legendre basis of the
/// reference interval.
struct Polynomial1D {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> coeffs;

  double operator()(double x) const;
};

Polynomial1D project_1d(ProjectionKind kind, const std::function<double(double)>& u, double lo,
                        double hi, int k);

/// Tensor-product projections on a cell:
///   Pi       = minus in x, plus in v;
///   PiX      = plain in both directions;
///   PiVMinus = plain in x, minus in v.
enum class TensorProjection { Pi, PiX, PiVMinus };

/// Result of a tensor projection on one rectangle, coefficients indexed (a, b)
/// like the DG basis.
struct CellExpansion {
  double x0, x1, v0, v1;
  Eigen::MatrixXd coeffs;

  double operator()(double x, double v) const;
};

CellExpansion project_cell(TensorProjection which, const Function2D& u, double x0, double x1,
                           double v0, double v1, int k);

/// Cell-wise tensor projection onto V_{h,k}.
DGField project_tensor(TensorProjection which, const Function2D& u, const Space& space);

/// Polynomial sum c_pq x^p v^q with p + q <= degree.
class Polynomial2D {
 public:
  explicit Polynomial2D(int degree);

  int degree() const noexcept { return degree_; }
  /// Highest p + q carrying a nonzero coefficient (-1 for the zero polynomial).
  int effective_degree() const noexcept;
  double& coeff(int p, int q);
  double coeff(int p, int q) const;

  double operator()(double x, double v) const;
  double dx(double x, double v) const;
  double dv(double x, double v) const;

 private:
  int degree_;
  std::vector<double> c_;
};

/// Left-hand sides of the two superconvergence identities of Pi on cell (i, j):
///   (u - Pi u, d/dx nu_x) - int (u - hat(Pi u)) nu_x |_{x_{i-1}}^{x_i} dv,
///   (u - Pi u, d/dv nu_v) - int (u - hat(Pi u)) nu_v |_{v_{j-1}}^{v_j} dx,
/// where hats follow the scheme's traces: from the left in x, from above in v,
/// the neighbor's projection of u being used across a face. Requires u of
/// degree <= k + 1 and nu of degree <= k.
std::pair<double, double> projection_identity_residuals(const Polynomial2D& u, const Polynomial2D& nu_x,
                                                   const Polynomial2D& nu_v, const Mesh2D& mesh,
                                                   int i, int j, int k);

}  // namespace fkk
