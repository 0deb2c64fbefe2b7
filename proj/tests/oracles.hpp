#pragma once

// Reference computations written independently of the library.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// Orthonormal Legendre value by the three-term recurrence in long double.
inline long double legendre(int n, long double x) {
  long double p0 = 1.0L;
  if (n == 0) return std::sqrt(0.5L);
  long double p1 = x;
  for (int m = 1; m < n; ++m) {
    const long double p2 = ((2.0L * m + 1.0L) * x * p1 - m * p0) / (m + 1.0L);
    p0 = p1;
    p1 = p2;
  }
  return p1 * std::sqrt((2.0L * n + 1.0L) / 2.0L);
}

/// (-1)^j binom(alpha, j) from the Gamma function.
inline long double signed_binomial(long double alpha, int j) {
  // binom(alpha, j) = Gamma(alpha+1) / (Gamma(j+1) Gamma(alpha-j+1)); the
  // reflection formula keeps Gamma away from its poles for alpha - j + 1 < 0.
  const long double pi = 3.141592653589793238462643383279502884L;
  const long double z = alpha - j + 1.0L;
  long double inv_gamma_z;
  if (z > 0) {
    inv_gamma_z = 1.0L / std::tgamma(z);
  } else {
    inv_gamma_z = std::sin(pi * z) * std::tgamma(1.0L - z) / pi;
  }
  const long double b = std::tgamma(alpha + 1.0L) / std::tgamma(j + 1.0L) * inv_gamma_z;
  return (j % 2 == 0) ? b : -b;
}

/// Composite Simpson rule in long double with `panels` (even) subintervals.
inline long double simpson(const std::function<long double(long double)>& f, long double a,
                           long double b, int panels) {
  const long double h = (b - a) / panels;
  long double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * ((i % 2) ? 4.0L : 2.0L);
  return s * h / 3.0L;
}

/// Caputo derivative of order alpha in (0, 1) at t. The caller passes the
/// bounded weighted derivative w(s) = s^(1 - alpha) * phi'(s). The integral
/// splits at t/2 and each half is made smooth by a graded change of
/// variables; 10^4 Simpson points in total.
inline long double caputo(const std::function<long double(long double)>& weighted, long double alpha,
                          long double t) {
  const long double half = t / 2.0L;
  // s = u^(1/alpha): ds = s^(1-alpha) du / alpha.
  auto left = [&](long double u) {
    const long double s = std::pow(u, 1.0L / alpha);
    return weighted(s) / alpha * std::pow(t - s, -alpha);
  };
  // t - s = r^(1/(1-alpha)): (t-s)^(-alpha) ds = dr / (1 - alpha).
  auto right = [&](long double r) {
    const long double s = t - std::pow(r, 1.0L / (1.0L - alpha));
    return weighted(s) * std::pow(s, alpha - 1.0L) / (1.0L - alpha);
  };
  const long double a = simpson(left, 0.0L, std::pow(half, alpha), 5000);
  const long double b = simpson(right, 0.0L, std::pow(half, 1.0L - alpha), 5000);
  return (a + b) / std::tgamma(1.0L - alpha);
}

}  // namespace oracle
