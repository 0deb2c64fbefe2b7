#pragma once

#include <cstddef>
#include <vector>

namespace fkk {

/// Uniform tensor partition of the unit square into N x N cells.
///
/// Cell (i, j), 0-based, covers (x_i, x_{i+1}) x (v_j, v_{j+1}); the first
/// index runs along x, the second along v.
class Mesh2D {
 public:
  explicit Mesh2D(int n);

  int n() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  std::size_t cell_count() const noexcept { return static_cast<std::size_t>(n_) * n_; }
  std::size_t cell_index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j);
  }
  /// Node coordinate i*h, shared by both directions.
  double node(int i) const noexcept { return i == n_ ? 1.0 : i * h_; }
  /// Cell containing coordinate c, clamped to [0, N-1].
  int locate(double c) const noexcept;

  /// True when c coincides with a mesh line (within a few ulps of h).
  bool is_mesh_line(double c) const noexcept;

  bool operator==(const Mesh2D& other) const noexcept { return n_ == other.n_; }

 private:
  int n_;
  double h_;
};

Mesh2D build_mesh(int n);

/// Orthonormal Legendre polynomial of the given degree on [-1, 1].
double legendre_eval(int degree, double xi);
/// First derivative of legendre_eval.
double legendre_derivative(int degree, double xi);

struct QuadRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// Gauss-Legendre rule with q points on [-1, 1], 1 <= q <= 32.
QuadRule gauss_rule(int q);

/// Tensor-product modal basis of degree k per direction on the reference
/// square. Mode (a, b) is phi_a(xi) * phi_b(eta), flattened as a * (k+1) + b.
class Basis {
 public:
  explicit Basis(int degree);

  int degree() const noexcept { return k_; }
  int modes_1d() const noexcept { return k_ + 1; }
  int modes() const noexcept { return (k_ + 1) * (k_ + 1); }
  int mode_index(int a, int b) const noexcept { return a * (k_ + 1) + b; }

  /// Values of all 1D modes at xi.
  std::vector<double> eval_1d(double xi) const;
  /// Endpoint traces phi_a(-1), phi_a(+1).
  double left_trace(int a) const noexcept { return left_[a]; }
  double right_trace(int a) const noexcept { return right_[a]; }

  /// Reference stiffness entry int phi_test * phi_trial' over [-1, 1].
  double stiffness(int test, int trial) const noexcept { return stiff_[test * (k_ + 1) + trial]; }
  /// Reference moment int xi * phi_test * phi_trial over [-1, 1].
  double first_moment(int test, int trial) const noexcept { return moment_[test * (k_ + 1) + trial]; }

  bool operator==(const Basis& other) const noexcept { return k_ == other.k_; }

 private:
  int k_;
  std::vector<double> left_;
  std::vector<double> right_;
  std::vector<double> stiff_;
  std::vector<double> moment_;
};

/// Mesh plus basis: the discrete space V_{h,k}.
struct Space {
  Mesh2D mesh;
  Basis basis;

  Space(int n, int degree) : mesh(n), basis(degree) {}

  std::size_t dofs() const noexcept { return mesh.cell_count() * basis.modes(); }
  std::size_t dof(std::size_t cell, int mode) const noexcept {
    return cell * static_cast<std::size_t>(basis.modes()) + static_cast<std::size_t>(mode);
  }
  /// Jacobian of the affine map from the reference square, (h/2)^2.
  double jacobian() const noexcept { return 0.25 * mesh.h() * mesh.h(); }

  bool operator==(const Space& other) const noexcept {
    return mesh == other.mesh && basis == other.basis;
  }
};

}  // namespace fkk
