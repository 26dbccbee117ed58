#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "lrmetro/exact_engine.hpp"
#include "lrmetro/random_states.hpp"

using namespace lrmetro;

namespace {

// Oracle: scaling-and-squaring Taylor series for exp(-i H t).
CMatrix expm_oracle(const CMatrix& h, double t) {
  CMatrix a = cplx(0.0, -t) * h;
  int squarings = 0;
  while (a.cwiseAbs().maxCoeff() > 0.25) {
    a /= 2.0;
    ++squarings;
  }
  CMatrix term = CMatrix::Identity(h.rows(), h.cols()), sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// Oracle: 4 Var(K) from explicit <K> and <K^2>.
double variance_qfi(const PureState& psi, const CMatrix& k) {
  const double mean = expectation(psi.amplitudes, k);
  const double square = expectation(psi.amplitudes, k * k);
  return 4.0 * (square - mean * mean);
}

double total_sx(const PureState& psi) {
  return expectation(psi.amplitudes, CollectiveOperator(psi.n_spins, Vec3::UnitX()).matrix());
}

}  // namespace

TEST(ExactEngine, CoherentStates) {
  const auto up = coherent_spin_state(1, Vec3::UnitZ());
  EXPECT_NEAR(std::abs(up.amplitudes[0] - cplx(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(up.amplitudes[1]), 0.0, 1e-15);
  const auto plus2 = coherent_spin_state(2, Vec3::UnitX());
  for (Eigen::Index k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(plus2.amplitudes[k] - cplx(0.5)), 0.0, 1e-15);
  EXPECT_NEAR(total_sx(coherent_spin_state(3, Vec3::UnitX())), 1.5, 1e-14);
  EXPECT_THROW(coherent_spin_state(15, Vec3::UnitX()), std::length_error);
  EXPECT_THROW(coherent_spin_state(2, Vec3(1.0, 1.0, 0.0)), std::invalid_argument);
}

TEST(ExactEngine, GhzState) {
  const auto g1 = ghz_state(1);
  EXPECT_NEAR(g1.amplitudes[0].real(), 1.0 / std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(g1.amplitudes[1].real(), 1.0 / std::numbers::sqrt2, 1e-15);
  const auto g4 = ghz_state(4);
  const CollectiveOperator kz(4, Vec3::UnitZ());
  EXPECT_NEAR(variance_qfi(g4, kz.matrix()), 16.0, 1e-12);
  EXPECT_NEAR(qfi_pure(g4, kz), 16.0, 1e-12);
  EXPECT_NEAR(expectation(ghz_state(3).amplitudes, CollectiveOperator(3, Vec3::UnitZ()).matrix()), 0.0, 1e-15);
  EXPECT_THROW(ghz_state(15), std::length_error);
}

TEST(ExactEngine, SpinOperatorAlgebra) {
  // [S^x, S^y] = i S^z on every site.
  const std::size_t n = 3;
  for (std::size_t s = 0; s < n; ++s) {
    const CMatrix x = CollectiveOperator(n, Vec3::UnitX()).site_matrix(s);
    const CMatrix y = CollectiveOperator(n, Vec3::UnitY()).site_matrix(s);
    const CMatrix z = CollectiveOperator(n, Vec3::UnitZ()).site_matrix(s);
    EXPECT_LT((x * y - y * x - cplx(0, 1) * z).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(ExactEngine, EvolveIdentityAndGroupProperty) {
  std::mt19937_64 rng(3);
  const auto psi = random_pure_state(5, rng);
  for (const auto& h : {build_power_law_ising(build_chain(5), 0.8),
                        build_dipolar_xx(build_chain(5))}) {
    EXPECT_LT((evolve(psi, h, 0.0).amplitudes - psi.amplitudes).norm(), 1e-14);
    const auto two_step = evolve(evolve(psi, h, 0.4), h, 1.1);
    EXPECT_LT((two_step.amplitudes - evolve(psi, h, 1.5).amplitudes).norm(), 1e-10);
  }
}

TEST(ExactEngine, EvolveMatchesMatrixExponential) {
  std::mt19937_64 rng(5);
  const auto psi = random_pure_state(4, rng);
  for (const auto& h : {build_power_law_ising(build_chain(4), 0.5), build_dipolar_xx(build_chain(4))}) {
    const CVector expected = expm_oracle(dense_hamiltonian(h), 0.9) * psi.amplitudes;
    EXPECT_LT((evolve(psi, h, 0.9).amplitudes - expected).norm(), 1e-10);
  }
}

TEST(ExactEngine, TwoSpinRevival) {
  for (double alpha : {0.0, 1.5, 3.0}) {
    const auto h = build_power_law_ising(build_chain(2), alpha);
    const double j = h.terms()[0].coefficient;
    const auto plus = coherent_spin_state(2, Vec3::UnitX());
    const double t = 4.0 * std::numbers::pi / j;  // S^z S^z eigenvalues are +-1/4
    const CVector oracle = expm_oracle(dense_hamiltonian(h), t) * plus.amplitudes;
    const double overlap = std::abs(plus.amplitudes.dot(oracle));
    EXPECT_NEAR(overlap, 1.0, 1e-10);
    EXPECT_NEAR(std::abs(plus.amplitudes.dot(evolve(plus, h, t).amplitudes)), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(plus.amplitudes.dot(evolve(plus, h, t / 2).amplitudes)), 0.0, 1e-10);
  }
}

TEST(ExactEngine, HeisenbergOperator) {
  const std::size_t n = 4;
  const auto ising = build_power_law_ising(build_chain(4), 0.5);
  const auto dipolar = build_dipolar_xx(build_chain(4));
  const CollectiveOperator kz(n, Vec3::UnitZ());
  const CollectiveOperator kn(n, Vec3(0.6, 0.0, 0.8));
  EXPECT_LT((heisenberg_op(dipolar, 0.0, kn, 1) - kn.site_matrix(1)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((heisenberg_op(ising, 2.3, kz, 2) - kz.site_matrix(2)).cwiseAbs().maxCoeff(), 1e-13);
  const CMatrix evolved = heisenberg_op(dipolar, 1.7, kn, 0);
  EXPECT_LT((evolved - evolved.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(evolved);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    EXPECT_NEAR(es.eigenvalues()[k], k < 8 ? -0.5 : 0.5, 1e-12);
}

TEST(ExactEngine, QfiPureBasics) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto plus = coherent_spin_state(n, Vec3::UnitX());
    EXPECT_NEAR(qfi_pure(plus, CollectiveOperator(n, Vec3::UnitZ())), double(n), 1e-12);
    EXPECT_NEAR(qfi_pure(plus, CollectiveOperator(n, Vec3::UnitX())), 0.0, 1e-12);
    EXPECT_NEAR(qfi_pure(ghz_state(n), CollectiveOperator(n, Vec3::UnitZ())), double(n * n), 1e-12);
  }
}

TEST(ExactEngine, QfiSpectralBasics) {
  const std::size_t n = 3;
  const DensityMatrix mixed(CMatrix::Identity(8, 8) / 8.0, n);
  EXPECT_NEAR(qfi_spectral(mixed, CollectiveOperator(n, Vec3(0.0, 0.6, 0.8))), 0.0, 1e-14);
  EXPECT_NEAR(qfi_spectral(DensityMatrix::from_pure(ghz_state(4)), CollectiveOperator(4, Vec3::UnitZ())), 16.0,
              1e-10);
  EXPECT_NEAR(qfi_spectral(DensityMatrix::from_pure(coherent_spin_state(5, Vec3::UnitX())),
                           CollectiveOperator(5, Vec3::UnitZ())),
              5.0, 1e-10);
}

TEST(ExactEngine, DensityMatrixValidation) {
  CMatrix m = CMatrix::Identity(4, 4) / 4.0;
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix(m, 2), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(CMatrix::Identity(4, 4) / 2.0, 2), std::invalid_argument);
  CMatrix neg = CMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix(neg, 1), std::invalid_argument);
  EXPECT_THROW(DensityMatrix(CMatrix::Identity(512, 512) / 512.0, 9), std::length_error);
  EXPECT_THROW(PureState(CVector::Ones(4), 2), std::invalid_argument);
}

TEST(ExactEngine, SpectralEqualsPureOnRandomStates) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const auto psi = random_pure_state(n, rng);
    const CollectiveOperator k(n, random_direction(rng));
    EXPECT_NEAR(qfi_spectral(DensityMatrix::from_pure(psi), k), qfi_pure(psi, k), 1e-8);
  }
}

TEST(ExactEngine, UnitaryCovariance) {
  std::mt19937_64 rng(13);
  for (const auto& h : {build_power_law_ising(build_chain(5), 1.5), build_dipolar_xx(build_chain(5))}) {
    const auto psi = random_pure_state(5, rng);
    const CollectiveOperator k(5, random_direction(rng));
    CMatrix evolved = CMatrix::Zero(32, 32);
    for (std::size_t s = 0; s < 5; ++s) evolved += heisenberg_op(h, 0.8, k, s);
    EXPECT_NEAR(qfi_pure(evolve(psi, h, 0.8), k), qfi_pure(psi, evolved), 1e-8);
  }
}

TEST(ExactEngine, QfiCaps) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 7;
    const auto psi = random_pure_state(n, rng);
    EXPECT_LE(qfi_pure(psi, CollectiveOperator(n, random_direction(rng))), double(n * n) + 1e-9);
    // Product states: each spin contributes 4 Var = 1 for a perpendicular direction.
    const Vec3 d = random_direction(rng);
    const Vec3 perp = d.unitOrthogonal();
    EXPECT_NEAR(qfi_pure(coherent_spin_state(n, d), CollectiveOperator(n, perp)), double(n), 1e-10);
  }
}

TEST(ExactEngine, SkewInformation) {
  std::mt19937_64 rng(19);
  const std::size_t n = 3;
  const CollectiveOperator k(n, random_direction(rng));
  std::vector<CMatrix> ops;
  for (std::size_t s = 0; s < n; ++s) ops.push_back(k.site_matrix(s));

  const DensityMatrix mixed(CMatrix::Identity(8, 8) / 8.0, n);
  EXPECT_NEAR(skew_information_sum(mixed, ops), 0.0, 1e-14);

  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = random_pure_state(n, rng);
    EXPECT_NEAR(skew_information_sum(DensityMatrix::from_pure(psi), ops), qfi_pure(psi, k), 1e-10);
    const auto rho = random_density_matrix(n, 2 + trial % 7, rng);
    const double ratio = qfi_spectral(rho, k) / skew_information_sum(rho, ops);
    EXPECT_GE(ratio, 1.0 - 1e-8);
    EXPECT_LE(ratio, 2.0 + 1e-8);
  }
  EXPECT_THROW(skew_information_sum(mixed, {CMatrix::Identity(4, 4)}), std::invalid_argument);
}

TEST(ExactEngine, DirectionSearchFindsAnalyticOptimum) {
  // For a product state along d the best direction is any perpendicular one.
  const auto psi = coherent_spin_state(4, Vec3(0.0, 0.6, 0.8));
  const auto best = max_qfi_over_directions(psi);
  EXPECT_NEAR(best.qfi, 4.0, 1e-10);
  EXPECT_NEAR(best.direction.dot(Vec3(0.0, 0.6, 0.8)), 0.0, 1e-5);
}
