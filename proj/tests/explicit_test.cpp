#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "support/oracles.hpp"
#include "turnpike/certify.hpp"
#include "turnpike/datum.hpp"
#include "turnpike/explicit.hpp"
#include "turnpike/wavecore.hpp"

namespace tp = turnpike;
using tp::testing::kPi;

TEST(Weight, RootSolvesCharacteristicPolynomial) {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    double const lambda = U(rng);
    auto const w = tp::weight_from_lambda(lambda);
    ASSERT_GT(w.z, -1.0);
    ASSERT_LE(w.z, 0.0);
    ASSERT_NEAR(tp::char_poly(lambda, w.z), 0.0, 1e-14) << lambda;
    ASSERT_NEAR(tp::lambda_from_z(w.z), lambda, 1e-12) << lambda;
  }
}

TEST(Weight, EndpointsAndKnownValues) {
  EXPECT_EQ(tp::weight_from_lambda(0.0).z, 0.0);
  EXPECT_EQ(tp::weight_from_lambda(1.0).z, -1.0);
  EXPECT_NEAR(tp::weight_from_lambda(24.0 / 25.0).z, -2.0 / 3.0, 1e-15);
  EXPECT_NEAR(tp::weight_from_lambda(99.0 / 100.0).z, -9.0 / 11.0, 1e-15);
  // the two roots multiply to 1, so the other root is 1/z
  double const z = tp::weight_from_lambda(0.3).z;
  EXPECT_NEAR(tp::char_poly(0.3, 1.0 / z), 0.0, 1e-12);
}

TEST(Weight, RejectsOutOfRangeInput) {
  EXPECT_THROW(tp::weight_from_lambda(-0.1), tp::InvalidInput);
  EXPECT_THROW(tp::weight_from_lambda(1.5), tp::InvalidInput);
  EXPECT_THROW(tp::weight_from_lambda(std::nan("")), tp::InvalidInput);
  EXPECT_THROW(tp::lambda_from_z(-1.0), tp::InvalidInput);
  EXPECT_THROW(tp::lambda_from_z(0.2), tp::InvalidInput);
}

TEST(Truncation, SmallestWindowCountBelowThreshold) {
  for (double z : {-0.1, -0.5, -2.0 / 3.0, -9.0 / 11.0}) {
    auto const t = tp::default_truncation(z);
    EXPECT_FALSE(t.capped);
    EXPECT_LE(std::pow(std::abs(z), double(t.windows)), 1e-14);
    EXPECT_GT(std::pow(std::abs(z), double(t.windows - 1)), 1e-14);
  }
  EXPECT_EQ(tp::default_truncation(0.0).windows, 1u);
  auto const slow = tp::default_truncation(-0.999);
  EXPECT_TRUE(slow.capped);
  EXPECT_EQ(slow.windows, 200u);
}

TEST(HUM, WindowsAlternateWithEqualWeight) {
  auto const init = tp::testing::random_smooth_datum(1, 64);
  auto const F = tp::build_F(init);
  auto const u = tp::hum_control(init, 8.0);
  ASSERT_EQ(u.window_count(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    double const c = (k % 2 == 0 ? 1.0 : -1.0) / 4.0;
    EXPECT_LE((u.window(k) - F.relocated(2.0 * k).scaled(c)).max_abs(), 1e-15);
  }
  EXPECT_EQ(u.meta()->kind, tp::ControlKind::hum);
}

TEST(HUM, SineCostMatchesClosedForm) {
  auto const init = tp::sine_datum(512);
  for (double T : {2.0, 6.0, 20.0}) {
    auto const u = tp::hum_control(init, T);
    auto const alpha = tp::propagate_alpha(tp::build_F(init), u);
    EXPECT_NEAR(tp::cost(alpha, u, 1.0), 2.0 * kPi * kPi / T, 1e-5) << T;
  }
}

TEST(FiniteHorizon, LambdaOneDelegatesToHUM) {
  auto const init = tp::testing::random_smooth_datum(2, 32);
  auto const a = tp::finite_horizon_control(init, 1.0, 10.0);
  auto const b = tp::hum_control(init, 10.0);
  EXPECT_EQ(a.combined(1.0, b, -1.0).max_abs(), 0.0);
}

TEST(FiniteHorizon, ContinuousInLambdaAtOne) {
  auto const init = tp::sine_datum(64);
  auto const near = tp::finite_horizon_control(init, 1.0 - 1e-12, 8.0);
  auto const hum = tp::hum_control(init, 8.0);
  EXPECT_LE(near.combined(1.0, hum, -1.0).max_abs(), 1e-4 * hum.max_abs());
}

TEST(FiniteHorizon, LambdaZeroActsOnFirstWindowOnly) {
  auto const init = tp::testing::random_smooth_datum(3, 32);
  auto const F = tp::build_F(init);
  auto const u = tp::finite_horizon_control(init, 0.0, 6.0);
  EXPECT_EQ((u.window(0) - F.relocated(0.0)).max_abs(), 0.0);
  EXPECT_EQ(u.window(1).max_abs(), 0.0);
  EXPECT_EQ(u.window(2).max_abs(), 0.0);
  auto const alpha = tp::propagate_alpha(F, u);
  EXPECT_EQ(alpha.window(1).max_abs(), 0.0);
}

TEST(FiniteHorizon, MetadataProfilesReconstructWindows) {
  auto const init = tp::testing::random_smooth_datum(4, 32);
  double const lambda = 0.7;
  auto const u = tp::finite_horizon_control(init, lambda, 8.0);
  auto const& meta = *u.meta();
  ASSERT_TRUE(meta.f_plus && meta.f_minus);
  double const z = meta.z;
  for (std::size_t k = 0; k < 4; ++k) {
    auto const expect = meta.f_plus->combined(std::pow(z, double(k)), *meta.f_minus, std::pow(z, -double(k)));
    EXPECT_LE((u.window(k) - expect.relocated(2.0 * k)).max_abs(), 1e-12 * u.max_abs());
  }
}

TEST(FiniteHorizon, DrivesStateToRest) {
  for (double lambda : {0.0, 0.25, 0.5, 0.9, 24.0 / 25.0, 1.0}) {
    for (double T : {2.0, 4.0, 12.0}) {
      auto const init = tp::testing::random_smooth_datum(10, 64);
      auto const alpha = tp::propagate_alpha(tp::build_F(init), tp::finite_horizon_control(init, lambda, T));
      auto const s = tp::evaluate_state(alpha, T);
      EXPECT_LE(s.yx.max_abs() + s.yt.max_abs(), 1e-12) << lambda << " " << T;
      EXPECT_LE(s.y.max_abs(), 1e-12);
    }
  }
}

TEST(FiniteHorizon, IsStationaryAlongAdmissibleDirections) {
  // Two exact controls for the same data differ by a direction h that keeps
  // the terminal state at rest. At the optimum J is flat to first order along
  // h and curves upward.
  auto const init = tp::testing::random_smooth_datum(6, 64);
  auto const F = tp::build_F(init);
  double const lambda = 0.5, T = 8.0;
  auto const u = tp::finite_horizon_control(init, lambda, T);
  auto const h = tp::finite_horizon_control(init, 0.9, T).combined(1.0, u, -1.0);
  auto J = [&](double eps) {
    auto const v = u.combined(1.0, h, eps);
    return tp::cost(tp::propagate_alpha(F, v), v, lambda);
  };
  double const J0 = J(0.0);
  for (double eps : {1e-3, 1e-1, 1.0}) {
    double const up = J(eps), down = J(-eps);
    EXPECT_GT(up, J0);
    EXPECT_GT(down, J0);
    EXPECT_LE(std::abs(up - down), 1e-10 * J0 + 1e-12) << eps;
  }
}

TEST(FiniteHorizon, RejectsBadArguments) {
  auto const init = tp::sine_datum(16);
  EXPECT_THROW(tp::finite_horizon_control(init, 0.5, 7.0), tp::InvalidHorizon);
  EXPECT_THROW(tp::finite_horizon_control(init, 0.5, 0.0), tp::InvalidHorizon);
  EXPECT_THROW(tp::finite_horizon_control(init, 1.01, 4.0), tp::InvalidInput);
  EXPECT_THROW(tp::hum_control(init, 3.0), tp::InvalidHorizon);
}

TEST(InfiniteHorizon, WindowsDecayGeometrically) {
  auto const init = tp::sine_datum(64);
  auto const F = tp::build_F(init);
  double const lambda = 24.0 / 25.0;
  double const z = -2.0 / 3.0;
  auto const u = tp::infinite_horizon_control(init, lambda, 12);
  EXPECT_TRUE(u.truncated());
  for (std::size_t k = 0; k < 12; ++k) {
    double const c = std::pow(z, double(k)) * (1.0 + z);
    EXPECT_LE((u.window(k) - F.relocated(2.0 * k).scaled(c)).max_abs(), 1e-14);
  }
  auto const alpha = tp::propagate_alpha(F, u);
  for (std::size_t k = 1; k < 6; ++k) {
    EXPECT_NEAR(alpha.window(k).l2_norm() / alpha.window(k - 1).l2_norm(), 2.0 / 3.0, 1e-12);
  }
}

TEST(InfiniteHorizon, RejectsUnsupportedArguments) {
  auto const init = tp::sine_datum(16);
  EXPECT_THROW(tp::infinite_horizon_control(init, 1.0, 10), tp::InvalidInput);
  EXPECT_THROW(tp::infinite_horizon_control(init, 0.5, 0), tp::InvalidInput);
}

TEST(InfiniteHorizon, FiniteHorizonApproachesItAwayFromTheEnd) {
  // |u_T - u_inf| on window k is bounded by the reflected wave from t = T,
  // of size (1+|z|) |z|^(2n-1-k) / (1 - |z|^2n) max|F|.
  auto const init = tp::testing::random_smooth_datum(8, 64);
  double const Fmax = tp::build_F(init).max_abs();
  double const lambda = 24.0 / 25.0;
  double const az = 2.0 / 3.0;
  for (std::size_t n : {3u, 6u, 10u}) {
    auto const fin = tp::finite_horizon_control(init, lambda, 2.0 * n);
    auto const inf = tp::infinite_horizon_control(init, lambda, n);
    double const C = (1.0 + az) / (1.0 - std::pow(az, 2.0 * n));
    for (std::size_t k = 0; k < n; ++k) {
      double const gap = (fin.window(k) - inf.window(k)).max_abs();
      double const env = C * std::pow(az, double(2 * n - 1 - k)) * Fmax + C * std::pow(az, double(k + 2 * n)) * Fmax;
      EXPECT_LE(gap, env * (1.0 + 1e-12) + 1e-15) << n << " " << k;
    }
  }
}

TEST(Feedback, GainReproducesRootAsReflection) {
  for (double lambda : {0.0, 0.3, 24.0 / 25.0, 99.0 / 100.0}) {
    auto const w = tp::weight_from_lambda(lambda);
    double const kappa = tp::feedback_gain(w);
    EXPECT_NEAR((1.0 + kappa) / (kappa - 1.0), w.z, 1e-15);
  }
}

TEST(Feedback, ClosedLoopMatchesInfiniteHorizonOptimum) {
  auto const init = tp::testing::random_smooth_datum(9, 64);
  auto const F = tp::build_F(init);
  for (double lambda : {0.2, 24.0 / 25.0, 99.0 / 100.0}) {
    auto const w = tp::weight_from_lambda(lambda);
    auto const loop = tp::simulate_feedback(F, tp::feedback_gain(w), 15);
    auto const ref = tp::propagate_alpha(F, tp::infinite_horizon_control(init, lambda, 15));
    for (std::size_t k = 0; k < ref.window_count(); ++k) {
      ASSERT_LE((loop.alpha.window(k) - ref.window(k)).max_abs(), 1e-13) << lambda << " " << k;
    }
  }
  EXPECT_THROW(tp::simulate_feedback(F, 1.0, 3), tp::NumericalFailure);
  EXPECT_THROW(tp::simulate_feedback(F, 0.5, 0), tp::InvalidInput);
}

TEST(Similarity, WeightForHorizon) {
  auto const w6 = tp::similarity_weight(6.0);
  EXPECT_NEAR(w6.z, -2.0 / 3.0, 1e-15);
  EXPECT_NEAR(w6.lambda, 24.0 / 25.0, 1e-14);
  auto const w2 = tp::similarity_weight(2.0);
  EXPECT_EQ(w2.z, 0.0);
  EXPECT_EQ(w2.lambda, 0.0);
  EXPECT_THROW(tp::similarity_weight(5.0), tp::InvalidHorizon);
}

TEST(Similarity, FirstWindowsCoincide) {
  auto const init = tp::testing::random_smooth_datum(12, 64);
  for (double T : {4.0, 6.0, 10.0, 40.0}) {
    auto const w = tp::similarity_weight(T);
    auto const hum = tp::hum_control(init, T);
    auto const inf = tp::infinite_horizon_control(init, w.lambda, 2);
    EXPECT_LE((hum.window(0) - inf.window(0)).max_abs(), 1e-13 * hum.max_abs()) << T;
  }
}

TEST(SteadyState, ShiftRemovesLinearProfile) {
  double const sigma = 0.75;
  auto const init = tp::linear_datum(32, sigma);
  auto const shifted = tp::steady_state_shift(init, sigma);
  EXPECT_EQ(tp::build_F(shifted).max_abs(), 0.0);
  auto const u = tp::finite_horizon_control(shifted, 0.5, 4.0);
  EXPECT_EQ(u.max_abs(), 0.0);
  auto const alpha = tp::propagate_alpha(tp::build_F(shifted), u);
  auto const s = tp::unshift(tp::evaluate_state(alpha, 2.0), sigma);
  for (std::size_t i = 0; i < s.y.size(); ++i) {
    EXPECT_NEAR(s.y[i], sigma * s.y.point(i), 1e-15);
    EXPECT_NEAR(s.yx[i], sigma, 1e-15);
    EXPECT_EQ(s.yt[i], 0.0);
  }
}
