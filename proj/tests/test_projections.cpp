#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fkk/error.hpp"
#include "fkk/projections.hpp"

using namespace fkk;

namespace {

const double kPi = std::acos(-1.0);

Polynomial2D random_polynomial(int degree, std::mt19937& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Polynomial2D p(degree);
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) p.coeff(a, b) = coef(rng);
  }
  return p;
}

// Monomial-basis oracle for the minus projection of x^(k+1) on [0, 1]:
// p(x) = sum c_m x^m with int (p - x^(k+1)) x^r = 0 for r < k and p(1) = 1.
std::vector<double> minus_projection_monomial(int k) {
  Eigen::MatrixXd a(k + 1, k + 1);
  Eigen::VectorXd rhs(k + 1);
  for (int r = 0; r < k; ++r) {
    for (int m = 0; m <= k; ++m) a(r, m) = 1.0 / (m + r + 1);
    rhs[r] = 1.0 / (k + 1 + r + 1);
  }
  for (int m = 0; m <= k; ++m) a(k, m) = 1.0;
  rhs[k] = 1.0;
  const Eigen::VectorXd c = a.fullPivLu().solve(rhs);
  return {c.data(), c.data() + c.size()};
}

}  // namespace

TEST(Project1D, ReproducesPolynomials) {
  const auto cubic = [](double x) { return 2.0 - x + 0.5 * x * x * x; };
  for (auto kind : {ProjectionKind::Plain, ProjectionKind::Plus, ProjectionKind::Minus}) {
    const Polynomial1D p = project_1d(kind, cubic, 0.2, 0.7, 3);
    for (double x : {0.2, 0.33, 0.5, 0.7}) EXPECT_NEAR(p(x), cubic(x), 1e-13);
  }
}

TEST(Project1D, MinusMatchesMonomialSolve) {
  for (int k : {1, 2, 3}) {
    const auto u = [k](double x) { return std::pow(x, k + 1); };
    const Polynomial1D p = project_1d(ProjectionKind::Minus, u, 0.0, 1.0, k);
    const auto c = minus_projection_monomial(k);
    for (double x : {0.0, 0.21, 0.5, 0.86, 1.0}) {
      double ref = 0.0;
      for (int m = k; m >= 0; --m) ref = ref * x + c[m];
      EXPECT_NEAR(p(x), ref, 1e-12) << k << " " << x;
    }
  }
}

TEST(Project1D, EndpointConditions) {
  const auto u = [](double x) { return std::exp(x) * std::sin(3 * x); };
  for (int k : {1, 2, 4}) {
    const Polynomial1D plus = project_1d(ProjectionKind::Plus, u, 0.3, 0.55, k);
    EXPECT_NEAR(plus(0.3) - u(0.3), 0.0, 1e-13);
    const Polynomial1D minus = project_1d(ProjectionKind::Minus, u, 0.3, 0.55, k);
    EXPECT_NEAR(minus(0.55) - u(0.55), 0.0, 1e-13);
  }
}

TEST(Project1D, MomentConditions) {
  const auto u = [](double x) { return std::cos(5 * x) + x; };
  const double lo = -0.4;
  const double hi = 0.1;
  const QuadRule rule = gauss_rule(20);
  for (int k : {1, 2, 3}) {
    for (auto kind : {ProjectionKind::Plain, ProjectionKind::Plus, ProjectionKind::Minus}) {
      const Polynomial1D p = project_1d(kind, u, lo, hi, k);
      const int moments = kind == ProjectionKind::Plain ? k + 1 : k;
      for (int r = 0; r < moments; ++r) {
        double s = 0.0;
        for (std::size_t q = 0; q < rule.size(); ++q) {
          const double x = lo + 0.5 * (hi - lo) * (rule.nodes[q] + 1.0);
          s += rule.weights[q] * (p(x) - u(x)) * std::pow(x - lo, r);
        }
        EXPECT_NEAR(s, 0.0, 1e-12) << k << " " << r;
      }
    }
  }
}

TEST(Project1D, OneSidedNeedsPositiveDegree) {
  const auto u = [](double x) { return x; };
  for (auto kind : {ProjectionKind::Plus, ProjectionKind::Minus}) {
    try {
      project_1d(kind, u, 0.0, 1.0, 0);
      FAIL();
    } catch (const PreconditionError& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidProjection);
    }
  }
  EXPECT_NO_THROW(project_1d(ProjectionKind::Plain, u, 0.0, 1.0, 0));
}

TEST(Project1D, ApproximationOrder) {
  const auto u = [](double x) { return std::sin(2.0 * x) + x * x; };
  for (int k : {1, 2}) {
    for (auto kind : {ProjectionKind::Plain, ProjectionKind::Plus, ProjectionKind::Minus}) {
      std::vector<double> errors;
      for (int n : {4, 8, 16}) {
        double sq = 0.0;
        const QuadRule rule = gauss_rule(k + 6);
        for (int c = 0; c < n; ++c) {
          const double lo = static_cast<double>(c) / n;
          const double hi = static_cast<double>(c + 1) / n;
          const Polynomial1D p = project_1d(kind, u, lo, hi, k);
          for (std::size_t q = 0; q < rule.size(); ++q) {
            const double x = lo + 0.5 * (hi - lo) * (rule.nodes[q] + 1.0);
            sq += 0.5 * (hi - lo) * rule.weights[q] * std::pow(p(x) - u(x), 2);
          }
        }
        errors.push_back(std::sqrt(sq));
      }
      for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        EXPECT_NEAR(std::log2(errors[i] / errors[i + 1]), k + 1, 0.1) << k;
      }
    }
  }
}

TEST(ProjectTensor, ConstantsAndBilinears) {
  const Space space(3, 1);
  for (auto which : {TensorProjection::Pi, TensorProjection::PiX, TensorProjection::PiVMinus}) {
    const DGField one = project_tensor(which, [](double, double) { return 1.0; }, space);
    EXPECT_LT(l2_distance(one, [](double, double) { return 1.0; }), 1e-13);
  }
  const auto bilinear = [](double x, double v) { return 1.0 + 2.0 * x - v + 3.0 * x * v; };
  EXPECT_LT(l2_distance(project_tensor(TensorProjection::PiX, bilinear, space), bilinear), 1e-13);
}

TEST(ProjectTensor, PlainTensorEqualsCellwiseProjection) {
  const Space space(4, 2);
  const auto u = [](double x, double v) { return std::exp(x - v) * std::cos(2 * v); };
  const DGField a = project_tensor(TensorProjection::PiX, u, space);
  const DGField b = project_function(space, u, 8);
  EXPECT_LT((a.coeffs() - b.coeffs()).lpNorm<Eigen::Infinity>(), 1e-13);
}

TEST(ProjectTensor, ConvergesAtOrderKPlusOne) {
  const auto u = [](double x, double v) { return std::sin(kPi * x) * std::sin(kPi * v); };
  for (int k : {1, 2}) {
    for (auto which : {TensorProjection::Pi, TensorProjection::PiX, TensorProjection::PiVMinus}) {
      std::vector<double> errors;
      for (int n : {4, 8, 16}) errors.push_back(l2_distance(project_tensor(which, u, Space(n, k)), u, k + 4));
      for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        EXPECT_NEAR(std::log2(errors[i] / errors[i + 1]), k + 1, 0.1) << k;
      }
    }
  }
}

TEST(Polynomial2D, DegreeBookkeeping) {
  Polynomial2D p(3);
  EXPECT_EQ(p.effective_degree(), -1);
  p.coeff(1, 1) = 2.0;
  p.coeff(0, 2) = -1.0;
  EXPECT_EQ(p.effective_degree(), 2);
  EXPECT_DOUBLE_EQ(p(0.5, 2.0), 2.0 * 0.5 * 2.0 - 4.0);
  EXPECT_DOUBLE_EQ(p.dx(0.5, 2.0), 4.0);
  EXPECT_DOUBLE_EQ(p.dv(0.5, 2.0), 1.0 - 4.0);
  EXPECT_THROW(p.coeff(2, 2) = 1.0, PreconditionError);
  EXPECT_THROW(Polynomial2D(-1), PreconditionError);
}

TEST(ProjectionIdentities, VanishForDegreeKPlusOne) {
  std::mt19937 rng(2024);
  const Mesh2D mesh(4);
  for (int k : {1, 2, 3}) {
    for (int trial = 0; trial < 20; ++trial) {
      const Polynomial2D u = random_polynomial(k + 1, rng);
      const Polynomial2D nx = random_polynomial(k, rng);
      const Polynomial2D nv = random_polynomial(k, rng);
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          const auto [rx, rv] = projection_identity_residuals(u, nx, nv, mesh, i, j, k);
          ASSERT_LE(std::abs(rx), 1e-11) << k << " " << i << " " << j;
          ASSERT_LE(std::abs(rv), 1e-11) << k << " " << i << " " << j;
        }
      }
    }
  }
}

TEST(ProjectionIdentities, TrivialCases) {
  std::mt19937 rng(5);
  const Mesh2D mesh(3);
  const Polynomial2D low = random_polynomial(1, rng);
  const Polynomial2D nu = random_polynomial(1, rng);
  const auto [a, b] = projection_identity_residuals(low, nu, nu, mesh, 1, 2, 1);
  EXPECT_NEAR(a, 0.0, 1e-14);
  EXPECT_NEAR(b, 0.0, 1e-14);
  const Polynomial2D u = random_polynomial(2, rng);
  const Polynomial2D zero(1);
  const auto [c, d] = projection_identity_residuals(u, zero, zero, mesh, 0, 0, 1);
  EXPECT_EQ(c, 0.0);
  EXPECT_EQ(d, 0.0);
}

TEST(ProjectionIdentities, DetectsDegreeViolations) {
  std::mt19937 rng(9);
  const Mesh2D mesh(2);
  const Polynomial2D too_high = random_polynomial(3, rng);
  const Polynomial2D nu = random_polynomial(1, rng);
  try {
    projection_identity_residuals(too_high, nu, nu, mesh, 0, 0, 1);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeViolation);
  }
  const Polynomial2D u = random_polynomial(2, rng);
  EXPECT_THROW(projection_identity_residuals(u, u, nu, mesh, 0, 0, 1), PreconditionError);
  EXPECT_THROW(projection_identity_residuals(u, nu, nu, mesh, 2, 0, 1), PreconditionError);
}

TEST(ProjectTensor, PiMatchesOnlyRightFaceInX) {
  Polynomial2D u(2);
  u.coeff(2, 0) = 1.0;
  const Mesh2D mesh(4);
  const int k = 1;
  const double x0 = mesh.node(1);
  const double x1 = mesh.node(2);
  const CellExpansion own = project_cell(TensorProjection::Pi, [&](double x, double v) { return u(x, v); }, x0, x1,
                                         mesh.node(1), mesh.node(2), k);
  // Pi u differs from u at the left face (minus projection only matches on the right).
  EXPECT_GT(std::abs(own(x0, 0.3) - u(x0, 0.3)), 1e-4);
}
