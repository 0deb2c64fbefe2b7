#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "fkk/cq_time.hpp"
#include "fkk/error.hpp"
#include "oracles.hpp"

using namespace fkk;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::Config;
}

std::vector<Eigen::VectorXd> scalars(std::initializer_list<double> values) {
  std::vector<Eigen::VectorXd> out;
  for (double v : values) out.push_back(Eigen::VectorXd::Constant(1, v));
  return out;
}

}  // namespace

TEST(CQWeights, FirstOrderIsBackwardDifference) {
  const CQWeights w(1.0, 1.0, 3);
  EXPECT_EQ(w[0], 1.0);
  EXPECT_EQ(w[1], -1.0);
  EXPECT_EQ(w[2], 0.0);
  EXPECT_EQ(w[3], 0.0);
}

TEST(CQWeights, HalfOrderBinomialSeries) {
  const CQWeights w = cq_weights(0.5, 1.0, 3);
  EXPECT_DOUBLE_EQ(w[0], 1.0);
  EXPECT_DOUBLE_EQ(w[1], -0.5);
  EXPECT_DOUBLE_EQ(w[2], -0.125);
  EXPECT_DOUBLE_EQ(w[3], -0.0625);
}

TEST(CQWeights, LeadingWeightOnly) {
  const CQWeights w(0.5, 0.1, 0);
  EXPECT_EQ(w.steps(), 0u);
  EXPECT_NEAR(w[0], 3.16227766, 1e-8);
  EXPECT_THROW(w[1], std::out_of_range);
}

TEST(CQWeights, MatchGammaFunctionBinomials) {
  for (double alpha : {0.1, 0.35, 0.5, 0.77, 0.9}) {
    const double tau = 0.03;
    const CQWeights w(alpha, tau, 40);
    for (int j = 0; j <= 40; ++j) {
      const long double ref = std::pow(static_cast<long double>(tau), -alpha) * oracle::signed_binomial(alpha, j);
      EXPECT_NEAR(w[j], static_cast<double>(ref), 1e-12 * std::abs(static_cast<double>(ref))) << alpha << " " << j;
    }
  }
}

TEST(CQWeights, RejectsBadParameters) {
  EXPECT_EQ(code_of([] { CQWeights(0.0, 0.1, 3); }), ErrorCode::OrderOutOfRange);
  EXPECT_EQ(code_of([] { CQWeights(1.2, 0.1, 3); }), ErrorCode::OrderOutOfRange);
  EXPECT_EQ(code_of([] { CQWeights(0.5, 0.0, 3); }), ErrorCode::InvalidStep);
  EXPECT_EQ(code_of([] { CQWeights(0.5, -1.0, 3); }), ErrorCode::InvalidStep);
}

TEST(CQWeights, SignPatternAndPartialSums) {
  for (int a = 1; a <= 9; ++a) {
    const CQWeights w(a / 10.0, 0.01, 10000);
    ASSERT_GT(w[0], 0.0);
    for (std::size_t j = 1; j <= 10000; ++j) {
      ASSERT_LT(w[j], 0.0) << a << " " << j;
      ASSERT_GT(w.partial_sum(j), 0.0) << a << " " << j;
      ASSERT_LT(w.partial_sum(j), w.partial_sum(j - 1)) << a << " " << j;
    }
  }
}

TEST(CQWeights, PartialSumsAreCoefficientsOfShiftedSeries) {
  // sum_{j<=n} (-1)^j binom(alpha, j) = (-1)^n binom(alpha - 1, n).
  for (double alpha : {0.2, 0.5, 0.8}) {
    const double tau = 0.5;
    const CQWeights w(alpha, tau, 2000);
    long double direct = 0.0L;
    long double coefficient = 1.0L;
    for (std::size_t n = 0; n <= 2000; ++n) {
      direct += static_cast<long double>(w[n]);
      if (n > 0) coefficient *= (static_cast<long double>(n) - alpha) / n;
      const double expected = static_cast<double>(std::pow(static_cast<long double>(tau), -alpha) * coefficient);
      ASSERT_NEAR(w.partial_sum(n), expected, 1e-13 * expected) << alpha << " " << n;
      ASSERT_NEAR(w.partial_sum(n), static_cast<double>(direct), 1e-12 * expected) << alpha << " " << n;
    }
  }
}

TEST(CQWeights, PartialSumsTendToZero) {
  const CQWeights w(0.5, 1.0, 10000);
  EXPECT_LT(w.partial_sum(10000), 0.01);
}

TEST(CQWeights, CaputoOfLinearFunctionIsFirstOrder) {
  // For g(t) = t the CQ sum approximates t^(1-alpha) / Gamma(2-alpha).
  for (double alpha : {0.3, 0.6, 0.9}) {
    std::vector<double> errors;
    for (int steps : {20, 40, 80}) {
      const double tau = 1.0 / steps;
      const CQWeights w(alpha, tau, steps);
      double approx = 0.0;
      for (int j = 0; j <= steps; ++j) approx += w[j] * (steps - j) * tau;
      errors.push_back(std::abs(approx - 1.0 / std::tgamma(2.0 - alpha)));
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
      EXPECT_GE(std::log2(errors[i] / errors[i + 1]), 0.9) << alpha;
    }
  }
}

TEST(History, FirstStepIsLeadingWeightTimesInitial) {
  const CQWeights w(0.4, 0.1, 5);
  const auto past = scalars({3.0});
  EXPECT_DOUBLE_EQ(history_combination(w, past, 1)[0], w[0] * 3.0);
}

TEST(History, FirstOrderRecoversBackwardEuler) {
  const double tau = 0.25;
  const CQWeights w(1.0, tau, 6);
  const auto past = scalars({1.0, 4.0, -2.0, 7.0});
  EXPECT_NEAR(history_combination(w, past, 4)[0], 7.0 / tau, 1e-14);
}

TEST(History, DirectSummation) {
  const CQWeights w(0.5, 1.0, 3);
  const auto past = scalars({0.0, 1.0, 4.0});
  // 0.5 g^2 + 0.125 g^1 + S_2 g^0 with g^j = j^2.
  EXPECT_DOUBLE_EQ(history_combination(w, past, 3)[0], 0.5 * 4.0 + 0.125 * 1.0 + 0.375 * 0.0);
  const auto shifted = scalars({2.0, 3.0, 6.0});
  EXPECT_DOUBLE_EQ(history_combination(w, shifted, 3)[0], 0.5 * 6.0 + 0.125 * 3.0 + 0.375 * 2.0);
}

TEST(History, ValidatesInputs) {
  const CQWeights w(0.5, 1.0, 3);
  const auto past = scalars({1.0, 2.0});
  EXPECT_EQ(code_of([&] { history_combination(w, past, 0); }), ErrorCode::InvalidStep);
  EXPECT_EQ(code_of([&] { history_combination(w, past, 4); }), ErrorCode::InvalidStep);
  EXPECT_EQ(code_of([&] { history_combination(w, past, 3); }), ErrorCode::ShapeMismatch);
  std::vector<Eigen::VectorXd> ragged{Eigen::VectorXd::Zero(2), Eigen::VectorXd::Zero(3)};
  EXPECT_EQ(code_of([&] { history_combination(w, ragged, 2); }), ErrorCode::ShapeMismatch);
}
