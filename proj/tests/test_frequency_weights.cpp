#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dkg/frequency_weights.hpp"

using dkg::FrequencyPoint;

TEST(Weights, Examples) {
  auto w = dkg::weights({0, 0, 0, 0});
  EXPECT_EQ(w.gamma_w, 0.0);
  EXPECT_EQ(w.theta_plus, 0.0);
  EXPECT_EQ(w.sigma_minus, 0.0);

  w = dkg::weights({1, 1, 2, 3});
  EXPECT_EQ(w.gamma_w, 0.0);
  EXPECT_EQ(w.theta_plus, 5.0);
  EXPECT_EQ(w.sigma_minus, -1.0);

  w = dkg::weights({-2, 1, 0, 0});
  EXPECT_EQ(w.gamma_w, 1.0);
  EXPECT_EQ(w.theta_plus, 0.0);
  EXPECT_EQ(w.sigma_minus, 3.0);
}

TEST(WeightInequality, MarginExamples) {
  EXPECT_DOUBLE_EQ(dkg::lemma3_margin({0, 0, 0, 1}), 0.5);
  EXPECT_DOUBLE_EQ(dkg::lemma3_margin({0, 0, 0, 0}), 0.0);
}

TEST(WeightInequality, SignSplitExamples) {
  EXPECT_EQ(dkg::sign_split_identity_residual({1, 1, 2, 3}), 0.0);
  EXPECT_EQ(dkg::sign_split_identity_residual({-2, 1, 0, 0}), 0.0);
  // tau = 0 exercises both branches.
  EXPECT_EQ(dkg::sign_split_identity_residual({0, -3, 4, 7}), 0.0);
}

// Independent oracle: the inequality written out directly from the weight
// definitions, no shared helpers.
TEST(WeightInequality, BruteForceOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 200000; ++i) {
    const double tau = u(rng), xi = u(rng), lambda = u(rng), eta = u(rng);
    const double G = std::abs(tau) - std::abs(xi);
    const double T = lambda + eta;
    const double S = lambda - tau - (eta - xi);
    const double lhs = std::min(std::abs(eta), std::abs(eta - xi));
    const double rhs = 1.5 * std::max({std::abs(G), std::abs(T), std::abs(S)});
    ASSERT_LE(lhs, rhs + 1e-9 * 51.0);
    EXPECT_NEAR(dkg::lemma3_margin({tau, xi, lambda, eta}), rhs - lhs, 1e-12 * 100.0);
  }
}

TEST(WeightInequality, IntegerCornerGrid) {
  // Exact arithmetic on small integers: margins must be exactly nonnegative.
  for (int tau = -6; tau <= 6; ++tau)
    for (int xi = -6; xi <= 6; ++xi)
      for (int lambda = -6; lambda <= 6; ++lambda)
        for (int eta = -6; eta <= 6; ++eta) {
          const FrequencyPoint p{double(tau), double(xi), double(lambda), double(eta)};
          ASSERT_GE(dkg::lemma3_margin(p), 0.0);
          ASSERT_EQ(dkg::sign_split_identity_residual(p), 0.0);
          ASSERT_GE(dkg::sum_bound_margin(p), 0.0);
        }
}

TEST(WeightInequality, SweepWithinTolerance) {
  const auto sw = dkg::sweep_lemma3(100000, 9);
  EXPECT_GT(sw.samples, 100000u);
  EXPECT_GE(sw.min_scaled_margin, -1e-9);
  EXPECT_LE(sw.max_scaled_residual, 1e-12);
  // The corner manifolds include points where the bound is attained.
  EXPECT_LE(sw.min_margin, 1e-9);
}

TEST(WeightInequality, PointScale) { EXPECT_EQ(dkg::point_scale({-3, 2, 1, 0}), 4.0); }
