#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "turnpike/modal.hpp"

namespace tp = turnpike;
using tp::complex;

namespace {

std::vector<tp::ModeSpec> random_batch(std::mt19937& rng, double lambda, std::size_t count) {
  std::uniform_real_distribution<double> freq(-10.0, 10.0), b(1.0, 4.0), amp(-1.0, 1.0);
  std::vector<tp::ModeSpec> modes;
  for (std::size_t k = 0; k < count; ++k) {
    modes.push_back({complex(0.0, freq(rng)), b(rng), lambda, complex(amp(rng), amp(rng))});
  }
  return modes;
}

}  // namespace

TEST(Modal, UnitModeRoots) {
  auto const [dm, dp] = tp::modal_roots({complex(0.0, 1.0), 1.0, 0.5, complex(1.0, 0.0)});
  EXPECT_NEAR(dm.real(), -1.0, 1e-12);
  EXPECT_NEAR(dp.real(), 1.0, 1e-12);
  EXPECT_NEAR(dm.imag(), 1.0, 1e-12);
  EXPECT_NEAR(dp.imag(), 1.0, 1e-12);
}

TEST(Modal, RootsSolveTheCharacteristicEquation) {
  std::mt19937 rng(5);
  for (auto const& m : random_batch(rng, 0.3, 20)) {
    auto const [dm, dp] = tp::modal_roots(m);
    double const l = tp::mode_l(m);
    for (complex d : {dm, dp}) EXPECT_LE(std::abs(d * d - 2.0 * m.a * d - l), 1e-12 * (1.0 + l));
    EXPECT_NEAR(dm.real(), -dp.real(), 1e-12);
  }
}

TEST(Modal, BoundaryValueProblemMeetsBothEnds) {
  std::mt19937 rng(6);
  for (double T : {0.5, 3.0, 40.0, 400.0}) {
    for (auto const& m : random_batch(rng, 0.6, 5)) {
      auto const s = tp::solve_mode_bvp(m, T);
      EXPECT_LE(std::abs(tp::mode_state(m, s, 0.0) - m.y0), 1e-12) << T;
      EXPECT_LE(std::abs(tp::mode_state(m, s, T)), 1e-12) << T;
    }
  }
}

TEST(Modal, MultiplierSolvesTheSecondOrderEquation) {
  tp::ModeSpec const m{complex(0.0, 2.5), 1.5, 0.4, complex(0.3, -0.7)};
  auto const s = tp::solve_mode_bvp(m, 5.0);
  double const l = tp::mode_l(m);
  double const h = 1e-5;
  for (double t : {0.3, 1.7, 4.2}) {
    complex const ddp = (s.dp(t + h) - s.dp(t - h)) / (2.0 * h);
    complex const rhs = l * s.p(t) + 2.0 * m.a * s.dp(t);
    EXPECT_LE(std::abs(ddp - rhs), 1e-6 * (1.0 + std::abs(rhs))) << t;
  }
}

TEST(Modal, RejectsInvalidModes) {
  EXPECT_THROW(tp::modal_roots({complex(0.1, 1.0), 1.0, 0.5, complex(1.0, 0.0)}), tp::InvalidInput);
  EXPECT_THROW(tp::modal_roots({complex(0.0, 1.0), 1.0, 1.0, complex(1.0, 0.0)}), tp::InvalidInput);
  EXPECT_THROW(tp::modal_roots({complex(0.0, 1.0), 0.0, 0.5, complex(1.0, 0.0)}), tp::InvalidInput);
  EXPECT_THROW(tp::solve_mode_bvp({complex(0.0, 1.0), 1.0, 0.5, complex(1.0, 0.0)}, 0.0), tp::InvalidInput);
}

TEST(ModalTurnpike, InequalityHoldsOnRandomBatches) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> lam(0.05, 0.95), horizon(1.0, 30.0);
  for (int batch = 0; batch < 10; ++batch) {
    auto const modes = random_batch(rng, lam(rng), 5);
    auto const run = tp::modal_turnpike_check(modes, horizon(rng), 1.0);
    EXPECT_TRUE(run.report.pass) << batch << " " << run.report.residual;
    ASSERT_EQ(run.times.size(), 1000u);
    for (std::size_t j = 0; j < run.times.size(); ++j) {
      ASSERT_LE(run.p_norm[j], run.bound[j] * (1.0 + 1e-12) + 1e-15);
    }
  }
}

TEST(ModalTurnpike, LongHorizonMultiplierIsSmallInTheMiddle) {
  std::vector<tp::ModeSpec> modes{{complex(0.0, 1.0), 1.0, 0.5, complex(1.0, 0.0)},
                                  {complex(0.0, -3.0), 2.0, 0.5, complex(0.0, 0.5)}};
  auto const run = tp::modal_turnpike_check(modes, 60.0, 1.0, 601);
  EXPECT_TRUE(run.report.pass);
  EXPECT_LT(run.p_norm[300], 1e-10 * run.p_norm[0]);
}

TEST(ModalTurnpike, ValidatesBatch) {
  std::vector<tp::ModeSpec> mixed{{complex(0.0, 1.0), 1.0, 0.5, complex(1.0, 0.0)},
                                  {complex(0.0, 2.0), 1.0, 0.4, complex(1.0, 0.0)}};
  EXPECT_THROW(tp::modal_turnpike_check(mixed, 5.0, 1.0), tp::InvalidInput);
  std::vector<tp::ModeSpec> weak{{complex(0.0, 1.0), 0.25, 0.5, complex(1.0, 0.0)}};
  EXPECT_THROW(tp::modal_turnpike_check(weak, 5.0, 1.0), tp::InvalidInput);
  EXPECT_THROW(tp::modal_turnpike_check({}, 5.0, 1.0), tp::InvalidInput);
}
