#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fkk {

/// Backward-Euler convolution quadrature weights d_0..d_L, the power-series
/// coefficients of ((1 - zeta) / tau)^alpha.
class CQWeights {
 public:
  /// Requires 0 < alpha <= 1, tau > 0, steps >= 0. alpha = 1 reproduces
  /// classical backward Euler.
  CQWeights(double alpha, double tau, std::size_t steps);

  double alpha() const noexcept { return alpha_; }
  double tau() const noexcept { return tau_; }
  std::size_t steps() const noexcept { return d_.size() - 1; }

  double operator[](std::size_t j) const { return d_.at(j); }
  std::span<const double> weights() const noexcept { return d_; }
  /// S_n = d_0 + ... + d_n.
  double partial_sum(std::size_t n) const { return partial_.at(n); }

 private:
  double alpha_;
  double tau_;
  std::vector<double> d_;
  std::vector<double> partial_;
};

CQWeights cq_weights(double alpha, double tau, std::size_t steps);

/// Known part of the step-n CQ sum,
///   r = -sum_{j=1}^{n-1} d_j g^{n-j} + S_{n-1} g^0,
/// so that d_0 g^n + (spatial terms) = r + load.
///
/// `past` holds g^0..g^{n-1} (at least n entries); all must share one size.
Eigen::VectorXd history_combination(const CQWeights& w, std::span<const Eigen::VectorXd> past,
                                    std::size_t n);

}  // namespace fkk
