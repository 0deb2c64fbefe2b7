#pragma once

#include <functional>
#include <iosfwd>

#include <Eigen/Dense>

#include "fkk/mesh_basis.hpp"

namespace fkk {

using Function2D = std::function<double(double x, double v)>;
using SpaceTimeFunction = std::function<double(double x, double v, double t)>;

/// Piecewise polynomial in V_{h,k}, stored as modal coefficients in the
/// orthonormal tensor Legendre basis, cell-major.
class DGField {
 public:
  explicit DGField(Space space);
  DGField(Space space, Eigen::VectorXd coeffs);

  const Space& space() const noexcept { return space_; }
  const Eigen::VectorXd& coeffs() const noexcept { return coeffs_; }
  Eigen::VectorXd& coeffs() noexcept { return coeffs_; }

  double coeff(int i, int j, int a, int b) const;

  /// Point evaluation; on a mesh line the cell with the larger index wins.
  double eval(double x, double v) const;
  /// Evaluation inside cell (i, j) at reference coordinates.
  double eval_reference(int i, int j, double xi, double eta) const;

  /// Exact L2 norm over the unit square.
  double l2_norm() const;

 private:
  Space space_;
  Eigen::VectorXd coeffs_;
};

/// Cell-wise L2 projection by tensor Gauss quadrature with `points` per
/// direction (defaults to k + 2).
DGField project_function(const Space& space, const Function2D& u, int points = 0);

/// Cell-wise nodal interpolation at the equispaced points -1 + 2p/k of each
/// reference direction (cell endpoints included), converted to modal form.
/// For k = 0 the single node is the cell midpoint.
DGField interpolate_function(const Space& space, const Function2D& u);

/// Exact L2 distance between two fields on the same space.
double l2_distance(const DGField& a, const DGField& b);

/// L2 distance between a field and a function, by tensor Gauss quadrature
/// with `points` per direction (defaults to k + 3).
double l2_distance(const DGField& a, const Function2D& u, int points = 0);

/// Writes (i, j, mode_a, mode_b, coefficient) rows with a header line.
void write_field_csv(std::ostream& out, const DGField& field);

}  // namespace fkk
