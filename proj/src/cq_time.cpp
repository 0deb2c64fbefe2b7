#include "fkk/cq_time.hpp"

#include <cmath>
#include <string>

#include "fkk/error.hpp"

namespace fkk {

CQWeights::CQWeights(double alpha, double tau, std::size_t steps) : alpha_(alpha), tau_(tau) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw PreconditionError(ErrorCode::OrderOutOfRange,
                            "fractional order must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw PreconditionError(ErrorCode::InvalidStep,
                            "step size must be positive, got " + std::to_string(tau));
  }
  d_.resize(steps + 1);
  partial_.resize(steps + 1);
  const double scale = std::pow(tau, -alpha);
  // d_j = tau^-alpha (-1)^j binom(alpha, j); the partial sums are the
  // coefficients of (1 - zeta)^(alpha - 1), generated by the same recurrence
  // instead of by cancelling summation.
  double coef = 1.0;
  double sum_coef = 1.0;
  d_[0] = scale;
  partial_[0] = scale;
  for (std::size_t j = 1; j <= steps; ++j) {
    const double jd = static_cast<double>(j);
    coef *= (jd - 1.0 - alpha) / jd;
    sum_coef *= (jd - alpha) / jd;
    d_[j] = scale * coef;
    partial_[j] = scale * sum_coef;
  }
}

CQWeights cq_weights(double alpha, double tau, std::size_t steps) {
  return CQWeights(alpha, tau, steps);
}

Eigen::VectorXd history_combination(const CQWeights& w, std::span<const Eigen::VectorXd> past,
                                    std::size_t n) {
  if (n < 1 || n > w.steps()) {
    throw PreconditionError(ErrorCode::InvalidStep,
                            "step index " + std::to_string(n) + " outside [1, " +
                                std::to_string(w.steps()) + "]");
  }
  if (past.size() < n) {
    throw PreconditionError(ErrorCode::ShapeMismatch,
                            "history holds " + std::to_string(past.size()) +
                                " fields, step " + std::to_string(n) + " needs " +
                                std::to_string(n));
  }
  const Eigen::Index size = past[0].size();
  for (std::size_t m = 1; m < n; ++m) {
    if (past[m].size() != size) {
      throw PreconditionError(ErrorCode::ShapeMismatch,
                              "history field " + std::to_string(m) + " has " +
                                  std::to_string(past[m].size()) + " coefficients, expected " +
                                  std::to_string(size));
    }
  }
  Eigen::VectorXd r = w.partial_sum(n - 1) * past[0];
  for (std::size_t j = 1; j < n; ++j) r.noalias() -= w[j] * past[n - j];
  return r;
}

}  // namespace fkk
