#include <gtest/gtest.h>

#include <random>

#include "lrmetro/exact_engine.hpp"
#include "lrmetro/ising_analytic.hpp"
#include "lrmetro/random_states.hpp"
#include "lrmetro/verify.hpp"

using namespace lrmetro;

namespace {

CollectiveMoments oracle_moments(std::size_t n, double alpha, double t) {
  const auto h = build_power_law_ising(build_chain(static_cast<int>(n)), alpha);
  return detail::dense_moments(evolve(coherent_spin_state(n, Vec3::UnitX()), h, t), t);
}

}  // namespace

TEST(IsingAnalytic, InitialMoments) {
  const auto m = collective_moments(10, 0.7, 0.0);
  EXPECT_NEAR(m.mean.x(), 5.0, 1e-14);
  EXPECT_NEAR(m.mean.y(), 0.0, 1e-14);
  const auto cov = m.covariance();
  EXPECT_NEAR(cov(0, 0), 0.0, 1e-12);
  EXPECT_NEAR(cov(1, 1), 2.5, 1e-12);
  EXPECT_NEAR(cov(2, 2), 2.5, 1e-12);
  EXPECT_THROW(collective_moments(1, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(collective_moments(4, 0.0, -1.0), std::invalid_argument);
}

TEST(IsingAnalytic, TwoSpinsMatchOracle) {
  for (double alpha : {0.0, 0.5, 2.0})
    for (double t : {0.1, 0.77, 2.5, 9.0}) {
      const auto a = collective_moments(2, alpha, t);
      const auto o = oracle_moments(2, alpha, t);
      EXPECT_LT((a.mean - o.mean).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT((a.second - o.second).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(IsingAnalytic, EightSpinsMatchOracle) {
  for (double alpha : {0.0, 0.5, 1.5, 3.0})
    for (int k = 1; k <= 10; ++k) {
      const double t = 0.43 * k;
      const auto a = collective_moments(8, alpha, t);
      const auto o = oracle_moments(8, alpha, t);
      EXPECT_LT((a.second - o.second).cwiseAbs().maxCoeff(), 1e-8) << alpha << " " << t;
      EXPECT_LT((a.mean - o.mean).cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST(IsingAnalytic, HarmonicNormalizationMatchesOracle) {
  const auto h = build_power_law_ising(build_chain(6), 1.0, AlphaOneNormalization::Harmonic);
  const auto psi = evolve(coherent_spin_state(6, Vec3::UnitX()), h, 1.3);
  const auto o = detail::dense_moments(psi, 1.3);
  const auto a = collective_moments(6, 1.0, 1.3, AlphaOneNormalization::Harmonic);
  EXPECT_LT((a.second - o.second).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(IsingAnalytic, OptimalQfiAtTimeZero) {
  const auto opt = optimal_collective_qfi(collective_moments(12, 0.5, 0.0));
  EXPECT_NEAR(opt.qfi, 12.0, 1e-12);
  EXPECT_NEAR(opt.direction.x(), 0.0, 1e-12);
  // Degenerate y-z plane: lexicographic tie-break picks +y.
  EXPECT_NEAR(opt.direction.y(), 1.0, 1e-12);
}

TEST(IsingAnalytic, OptimalQfiMatchesGridOracle) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> time(0.05, 6.0);
  for (std::size_t n : {3u, 5u, 8u})
    for (double alpha : {0.0, 1.0, 3.0}) {
      const double t = time(rng);
      const auto h = build_power_law_ising(build_chain(static_cast<int>(n)), alpha);
      const auto psi = evolve(coherent_spin_state(n, Vec3::UnitX()), h, t);
      const auto oracle = max_qfi_over_directions(psi);
      const auto analytic = optimal_collective_qfi(collective_moments(n, alpha, t));
      EXPECT_NEAR(analytic.qfi, oracle.qfi, 1e-6);
      EXPECT_NEAR(qfi_pure(psi, CollectiveOperator(n, analytic.direction)), analytic.qfi, 1e-9);
    }
}

TEST(IsingAnalytic, EigenOptimumDominatesRandomDirections) {
  std::mt19937_64 rng(29);
  for (double t : {0.3, 1.1, 4.0}) {
    const auto m = collective_moments(20, 0.5, t);
    const auto opt = optimal_collective_qfi(m);
    const Eigen::Matrix3d gamma = m.covariance();
    for (int k = 0; k < 1000; ++k) {
      const Vec3 d = random_direction(rng);
      EXPECT_GE(opt.qfi + 1e-9, 4.0 * d.dot(gamma * d));
    }
  }
}

TEST(IsingAnalytic, TimeSeriesShape) {
  const auto s = qfi_time_series(30, 0.5, 10.0, 0.05);
  ASSERT_EQ(s.times.size(), 201u);
  EXPECT_EQ(s.times.front(), 0.0);
  EXPECT_EQ(s.qfi.front(), 30.0);
  EXPECT_NEAR(s.times.back(), 10.0, 1e-12);
  for (std::size_t k = 0; k < s.qfi.size(); ++k) {
    EXPECT_GE(s.qfi[k], 0.0);
    EXPECT_LE(s.qfi[k], 900.0 + 1e-9);
    EXPECT_NEAR(s.directions[k].norm(), 1.0, 1e-12);
  }
  EXPECT_THROW(qfi_time_series(30, 0.5, 10.0, 0.0), std::invalid_argument);
  EXPECT_THROW(qfi_time_series(30, 0.5, -1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(qfi_time_series(1, 0.5, 1.0, 0.1), std::invalid_argument);
}

TEST(IsingAnalytic, TimeSeriesThreadingIsDeterministic) {
  const auto a = qfi_time_series(25, 1.5, 5.0, 0.05, AlphaOneNormalization::Unity, 1);
  const auto b = qfi_time_series(25, 1.5, 5.0, 0.05, AlphaOneNormalization::Unity, 4);
  EXPECT_EQ(a.qfi, b.qfi);
  EXPECT_EQ(a.times, b.times);
}

TEST(IsingAnalytic, SmallSeriesMatchesOracle) {
  const auto s = qfi_time_series(4, 2.0, 3.0, 0.25);
  const auto h = build_power_law_ising(build_chain(4), 2.0);
  const auto psi0 = coherent_spin_state(4, Vec3::UnitX());
  for (std::size_t k = 0; k < s.times.size(); ++k)
    EXPECT_NEAR(s.qfi[k], max_qfi_over_directions(evolve(psi0, h, s.times[k])).qfi, 1e-6);
}

TEST(IsingAnalytic, AllToAllGrowsSlowestEarly) {
  const auto s0 = qfi_time_series(60, 0.0, 1.0, 0.05);
  const auto s5 = qfi_time_series(60, 0.5, 1.0, 0.05);
  for (std::size_t k = 1; k < s0.qfi.size(); ++k) EXPECT_LT(s0.qfi[k], s5.qfi[k]);
  EXPECT_GT(s0.qfi[10], s0.qfi[0]);
}

TEST(IsingAnalytic, EnhancementPointSynthetic) {
  QfiSeries linear;
  linear.n_spins = 8;
  for (int k = 0; k <= 10; ++k) {
    linear.times.push_back(0.5 * k);
    linear.qfi.push_back(8.0 * 0.5 * k);
  }
  const auto p = optimal_enhancement_point(linear);
  EXPECT_DOUBLE_EQ(p.t_p, 0.5);
  EXPECT_DOUBLE_EQ(p.ratio, 8.0);

  QfiSeries peaked;
  peaked.times = {0.0, 1.0, 2.0, 3.0, 4.0};
  peaked.qfi = {4.0, 2.0, 8.0, 6.0, 4.0};
  EXPECT_DOUBLE_EQ(optimal_enhancement_point(peaked).t_p, 2.0);
  EXPECT_DOUBLE_EQ(optimal_enhancement_point(peaked, 3.0).t_p, 3.0);

  QfiSeries empty;
  EXPECT_THROW(optimal_enhancement_point(empty), std::invalid_argument);
}

TEST(IsingAnalytic, EnhancementPointInteriorForAlphaHalf) {
  const auto s = qfi_time_series(60, 0.5, 50.0, 0.05);
  const auto p = optimal_enhancement_point(s, 1.0);
  EXPECT_GT(p.t_p, 0.0);
  EXPECT_LT(p.t_p, 50.0);
  const auto k = static_cast<std::size_t>(std::lround(p.t_p / 0.05));
  EXPECT_GE(p.ratio, s.qfi[k + 1] / s.times[k + 1]);
  EXPECT_GE(p.ratio, s.qfi.back() / s.times.back());
}

TEST(IsingAnalytic, FirstMaximumTime) {
  const double t = first_qfi_maximum_time(60, 0.5, 0.01, 100.0);
  EXPECT_GT(t, 1.0);
  EXPECT_LT(t, 3.0);
  const auto s = qfi_time_series(60, 0.5, t + 0.05, 0.01);
  const auto k = static_cast<std::size_t>(std::lround(t / 0.01));
  EXPECT_GE(s.qfi[k], s.qfi[k - 1]);
  EXPECT_GT(s.qfi[k], s.qfi[k + 1]);
}
