#pragma once

// Cross-checks of the closed-form Ising engine and the QFI identities against
// the dense engine. Each check reports its worst deviation and tolerance.

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lrmetro/exact_engine.hpp"
#include "lrmetro/ising_analytic.hpp"
#include "lrmetro/random_states.hpp"

namespace lrmetro {

struct CheckResult {
  std::string name;
  bool passed = false;
  double worst = 0.0;      // worst observed deviation (or bound violation)
  double tolerance = 0.0;
  std::string detail;
};

struct VerifySettings {
  std::size_t n_max = 8;
  std::vector<double> alphas{0.0, 0.5, 1.5, 3.0};
  std::size_t time_points = 20;
  double time_step = 0.35;
  std::size_t random_samples = 200;
  std::uint64_t seed = 20240611;
};

namespace detail {

inline CheckResult finish(std::string name, double worst, double tol, std::string detail) {
  return {std::move(name), worst <= tol, worst, tol, std::move(detail)};
}

// Oracle moments from the dense state: <S_a> and Re <S_a psi | S_b psi>.
inline CollectiveMoments dense_moments(const PureState& psi, double t) {
  CollectiveMoments m;
  m.t = t;
  m.n_spins = psi.n_spins;
  std::vector<CVector> applied;
  for (int axis = 0; axis < 3; ++axis)
    applied.push_back(CollectiveOperator(psi.n_spins, Vec3::Unit(axis)).apply(psi.amplitudes));
  for (int a = 0; a < 3; ++a) {
    m.mean[a] = psi.amplitudes.dot(applied[static_cast<std::size_t>(a)]).real();
    for (int b = 0; b < 3; ++b)
      m.second(a, b) = applied[static_cast<std::size_t>(a)].dot(applied[static_cast<std::size_t>(b)]).real();
  }
  return m;
}

}  // namespace detail

// Analytic direction-optimized QFI vs brute-force direction search on the
// dense evolved state; tolerance 1e-6 N^2.
inline CheckResult check_analytic_vs_oracle(const VerifySettings& s) {
  double worst = 0.0;
  std::ostringstream where;
  for (std::size_t n = 2; n <= s.n_max; ++n)
    for (double alpha : s.alphas) {
      const auto h = build_power_law_ising(build_chain(static_cast<int>(n)), alpha);
      const Propagator prop(h);
      const auto psi0 = coherent_spin_state(n, Vec3::UnitX());
      for (std::size_t k = 1; k <= s.time_points; ++k) {
        const double t = s.time_step * static_cast<double>(k);
        const double oracle = max_qfi_over_directions(prop.evolve(psi0, t)).qfi;
        const double analytic = optimal_collective_qfi(collective_moments(n, alpha, t)).qfi;
        const double dev = std::abs(oracle - analytic) / static_cast<double>(n * n);
        if (dev > worst) {
          worst = dev;
          where.str("");
          where << "N=" << n << " alpha=" << alpha << " t=" << t;
        }
      }
    }
  return detail::finish("analytic_vs_oracle_qfi", worst, 1e-6, where.str());
}

inline CheckResult check_moments_vs_oracle(const VerifySettings& s) {
  double worst = 0.0;
  for (std::size_t n = 2; n <= s.n_max; ++n)
    for (double alpha : s.alphas) {
      const Propagator prop(build_power_law_ising(build_chain(static_cast<int>(n)), alpha));
      const auto psi0 = coherent_spin_state(n, Vec3::UnitX());
      for (std::size_t k = 0; k <= s.time_points; ++k) {
        const double t = s.time_step * static_cast<double>(k);
        const auto oracle = detail::dense_moments(prop.evolve(psi0, t), t);
        const auto analytic = collective_moments(n, alpha, t);
        worst = std::max({worst, (oracle.mean - analytic.mean).cwiseAbs().maxCoeff(),
                          (oracle.second - analytic.second).cwiseAbs().maxCoeff()});
      }
    }
  return detail::finish("analytic_vs_oracle_moments", worst, 1e-8, "");
}

inline CheckResult check_spectral_vs_pure(const VerifySettings& s) {
  std::mt19937_64 rng(s.seed);
  const std::size_t n_top = std::min<std::size_t>(6, s.n_max);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.random_samples; ++i) {
    const std::size_t n = 1 + i % n_top;
    const auto psi = random_pure_state(n, rng);
    const CollectiveOperator k(n, random_direction(rng));
    worst = std::max(worst, std::abs(qfi_spectral(DensityMatrix::from_pure(psi), k) - qfi_pure(psi, k)));
  }
  return detail::finish("qfi_spectral_equals_pure", worst, 1e-8, "");
}

inline CheckResult check_ghz_heisenberg(const VerifySettings& s) {
  double worst = 0.0;
  for (std::size_t n = 2; n <= s.n_max; ++n) {
    const auto ghz = ghz_state(n);
    const CollectiveOperator kz(n, Vec3::UnitZ());
    const double n2 = static_cast<double>(n * n);
    worst = std::max({worst, std::abs(qfi_pure(ghz, kz) - n2),
                      std::abs(qfi_spectral(DensityMatrix::from_pure(ghz), kz) - n2)});
  }
  return detail::finish("ghz_qfi_equals_n_squared", worst, 1e-8, "");
}

inline CheckResult check_product_state(const VerifySettings& s) {
  double worst = 0.0;
  for (std::size_t n = 1; n <= s.n_max; ++n) {
    const auto psi = coherent_spin_state(n, Vec3::UnitX());
    const CollectiveOperator kz(n, Vec3::UnitZ());
    worst = std::max({worst, std::abs(qfi_pure(psi, kz) - static_cast<double>(n)),
                      std::abs(qfi_spectral(DensityMatrix::from_pure(psi), kz) - static_cast<double>(n))});
  }
  return detail::finish("product_state_qfi_equals_n", worst, 1e-8, "");
}

// F_Q / S must lie in [1, 2] for mixed states and equal 1 for pure states.
// Reported deviation is the largest excursion outside the allowed interval.
inline CheckResult check_wigner_yanase_sandwich(const VerifySettings& s) {
  std::mt19937_64 rng(s.seed + 1);
  const std::size_t n_top = std::min<std::size_t>(5, s.n_max);
  double worst = 0.0;
  double lo = 2.0, hi = 1.0;
  for (std::size_t i = 0; i < s.random_samples; ++i) {
    const std::size_t n = 1 + i % n_top;
    const Eigen::Index dim = Eigen::Index{1} << n;
    std::uniform_int_distribution<Eigen::Index> rank_dist(2, dim);
    const auto rho = random_density_matrix(n, rank_dist(rng), rng);
    const CollectiveOperator k(n, random_direction(rng));
    std::vector<CMatrix> ops;
    for (std::size_t site = 0; site < n; ++site) ops.push_back(k.site_matrix(site));
    const double skew = skew_information_sum(rho, ops);
    if (skew < 1e-12) continue;
    const double ratio = qfi_spectral(rho, k) / skew;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    worst = std::max({worst, 1.0 - ratio, ratio - 2.0});

    const auto psi = random_pure_state(n, rng);
    const double pure_ratio = qfi_pure(psi, k) / skew_information_sum(DensityMatrix::from_pure(psi), ops);
    worst = std::max(worst, std::abs(pure_ratio - 1.0));
  }
  std::ostringstream d;
  d << "mixed-state ratio range [" << lo << ", " << hi << "]";
  return detail::finish("wigner_yanase_sandwich", worst, 1e-8, d.str());
}

// QFI(U psi, K) == QFI(psi, U^dagger K U).
inline CheckResult check_unitary_covariance(const VerifySettings& s) {
  std::mt19937_64 rng(s.seed + 2);
  double worst = 0.0;
  const std::size_t n_top = std::min<std::size_t>(6, s.n_max);
  for (std::size_t n = 2; n <= n_top; ++n)
    for (double alpha : s.alphas) {
      const auto h = build_power_law_ising(build_chain(static_cast<int>(n)), alpha);
      const auto psi = random_pure_state(n, rng);
      const CollectiveOperator k(n, random_direction(rng));
      const double t = 0.7;
      CMatrix evolved_k = CMatrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
      for (std::size_t site = 0; site < n; ++site) evolved_k += heisenberg_op(h, t, k, site);
      worst = std::max(worst, std::abs(qfi_pure(evolve(psi, h, t), k) - qfi_pure(psi, evolved_k)));
    }
  return detail::finish("unitary_covariance", worst, 1e-8, "");
}

inline std::vector<CheckResult> run_verification(const VerifySettings& s) {
  if (s.n_max < 2 || s.n_max > kMaxDensitySpins)
    throw std::invalid_argument("verify needs 2 <= n_max <= " + std::to_string(kMaxDensitySpins));
  return {check_analytic_vs_oracle(s),   check_moments_vs_oracle(s), check_spectral_vs_pure(s),
          check_ghz_heisenberg(s),       check_product_state(s),     check_wigner_yanase_sandwich(s),
          check_unitary_covariance(s)};
}

}  // namespace lrmetro
