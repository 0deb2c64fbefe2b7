#include "fkk/mesh_basis.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fkk/error.hpp"

namespace fkk {

Mesh2D::Mesh2D(int n) : n_(n), h_(0.0) {
  if (n < 1) {
    throw PreconditionError(ErrorCode::InvalidResolution,
                            "cells per direction must be >= 1, got " + std::to_string(n));
  }
  h_ = 1.0 / n;
}

int Mesh2D::locate(double c) const noexcept {
  const int i = static_cast<int>(std::floor(c * n_));
  return std::clamp(i, 0, n_ - 1);
}

bool Mesh2D::is_mesh_line(double c) const noexcept {
  const double scaled = c * n_;
  return std::abs(scaled - std::round(scaled)) <= 64 * std::numeric_limits<double>::epsilon() * n_;
}

Mesh2D build_mesh(int n) { return Mesh2D(n); }

namespace {

// Classical Legendre P_n and P_n' by the three-term recurrence.
std::pair<double, double> legendre_pair(int degree, double xi) {
  if (degree == 0) return {1.0, 0.0};
  double p_prev = 1.0;
  double p = xi;
  for (int n = 1; n < degree; ++n) {
    const double p_next = ((2.0 * n + 1.0) * xi * p - n * p_prev) / (n + 1.0);
    p_prev = p;
    p = p_next;
  }
  double dp;
  if (std::abs(xi) < 1.0) {
    dp = degree * (xi * p - p_prev) / (xi * xi - 1.0);
  } else {
    // P_n'(+-1) = (+-1)^{n+1} n(n+1)/2
    dp = 0.5 * degree * (degree + 1.0) * ((xi > 0 || degree % 2 == 1) ? 1.0 : -1.0);
  }
  return {p, dp};
}

double normalization(int degree) { return std::sqrt((2.0 * degree + 1.0) / 2.0); }

}  // namespace

double legendre_eval(int degree, double xi) {
  assert(degree >= 0 && std::abs(xi) <= 1.0 + 1e-12);
  return normalization(degree) * legendre_pair(degree, xi).first;
}

double legendre_derivative(int degree, double xi) {
  assert(degree >= 0 && std::abs(xi) <= 1.0 + 1e-12);
  return normalization(degree) * legendre_pair(degree, xi).second;
}

QuadRule gauss_rule(int q) {
  if (q < 1 || q > 32) {
    throw PreconditionError(ErrorCode::InvalidQuadrature,
                            "point count must lie in [1, 32], got " + std::to_string(q));
  }
  QuadRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int m = 0; m < (q + 1) / 2; ++m) {
    // Chebyshev-like initial guess, refined by Newton on P_q.
    double x = std::cos(std::numbers::pi * (m + 0.75) / (q + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre_pair(q, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_pair(q, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[m] = -x;
    rule.nodes[q - 1 - m] = x;
    rule.weights[m] = w;
    rule.weights[q - 1 - m] = w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
  return rule;
}

Basis::Basis(int degree) : k_(degree) {
  if (degree < 0) {
    throw PreconditionError(ErrorCode::InvalidDegree,
                            "polynomial degree must be >= 0, got " + std::to_string(degree));
  }
  const int m = k_ + 1;
  left_.resize(m);
  right_.resize(m);
  for (int a = 0; a < m; ++a) {
    left_[a] = legendre_eval(a, -1.0);
    right_[a] = legendre_eval(a, 1.0);
  }
  stiff_.assign(m * m, 0.0);
  moment_.assign(m * m, 0.0);
  const QuadRule rule = gauss_rule(k_ + 2);
  for (std::size_t p = 0; p < rule.size(); ++p) {
    const double xi = rule.nodes[p];
    const double w = rule.weights[p];
    for (int test = 0; test < m; ++test) {
      const double phi = legendre_eval(test, xi);
      for (int trial = 0; trial < m; ++trial) {
        stiff_[test * m + trial] += w * phi * legendre_derivative(trial, xi);
        moment_[test * m + trial] += w * xi * phi * legendre_eval(trial, xi);
      }
    }
  }
}

std::vector<double> Basis::eval_1d(double xi) const {
  std::vector<double> out(k_ + 1);
  for (int a = 0; a <= k_; ++a) out[a] = legendre_eval(a, xi);
  return out;
}

}  // namespace fkk
