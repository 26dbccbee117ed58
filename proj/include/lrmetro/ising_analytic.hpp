#pragma once

// Closed-form collective-spin moments for the power-law Ising chain started
// from the x-polarized coherent state.
//
// Writing H = sum_{k<l} g_kl sigma^z_k sigma^z_l (g = J/4), the Heisenberg
// raising operator is sigma^+_k(t) = sigma^+_k exp(2it sum_j g_kj sigma^z_j),
// and every expectation in |+>^N factorizes over sites:
//
//   <sigma^+_k>               = 1/2 prod_{j!=k}    cos(2 g_kj t)
//   <sigma^+_k sigma^+_l>     = 1/4 prod_{j!=k,l}  cos(2 (g_kj + g_lj) t)
//   <sigma^+_k sigma^-_l>     = 1/4 prod_{j!=k,l}  cos(2 (g_kj - g_lj) t)
//   <sigma^+_k sigma^z_l>     = i/2 sin(2 g_kl t) prod_{j!=k,l} cos(2 g_kj t)
//
// <S_y> = <S_z> = 0 and the xy, xz second moments vanish by symmetry.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "lrmetro/hamiltonian.hpp"

namespace lrmetro {

struct CollectiveMoments {
  double t = 0.0;
  std::size_t n_spins = 0;
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  Eigen::Matrix3d second = Eigen::Matrix3d::Zero();  // 1/2 <{S_a, S_b}>

  Eigen::Matrix3d covariance() const { return second - mean * mean.transpose(); }
};

struct QfiSeries {
  double alpha = 0.0;
  std::size_t n_spins = 0;
  std::vector<double> times;
  std::vector<double> qfi;
  std::vector<Eigen::Vector3d> directions;
};

struct EnhancementPoint {
  double t_p = 0.0;
  double ratio = 0.0;
  double qfi = 0.0;
};

// Pauli-basis couplings g(r) = J(r)/4 = 1 / (N_alpha r^alpha), indexed by
// separation r (g[0] unused).
inline std::vector<double> ising_pauli_couplings(
    std::size_t n, double alpha, AlphaOneNormalization at_one = AlphaOneNormalization::Unity) {
  std::vector<double> g(n, 0.0);
  for (std::size_t r = 1; r < n; ++r) g[r] = ising_coupling(n, alpha, r, at_one) / 4.0;
  return g;
}

// Moments for a translation-invariant coupling profile g(|k-l|).
inline CollectiveMoments collective_moments_from_couplings(const std::vector<double>& g, double t) {
  const std::size_t n = g.size();
  if (n < 2) throw std::invalid_argument("collective moments need N >= 2");
  if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");

  // cos/sin by separation, and cos of sums/differences indexed by pairs of
  // separations so that the triple loop is multiplications only.
  std::vector<double> c1(n), s1(n);
  for (std::size_t r = 0; r < n; ++r) {
    c1[r] = std::cos(2.0 * g[r] * t);
    s1[r] = std::sin(2.0 * g[r] * t);
  }
  Eigen::MatrixXd c_sum(n, n), c_diff(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      c_sum(a, b) = c_sum(b, a) = std::cos(2.0 * (g[a] + g[b]) * t);
      c_diff(a, b) = c_diff(b, a) = std::cos(2.0 * (g[a] - g[b]) * t);
    }
  auto sep = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };

  double mean_x = 0.0;
  double sum_pp = 0.0, sum_pm = 0.0, sum_yz = 0.0;
  std::vector<double> prefix(n + 1), suffix(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    // prod_{j != k, l} cos(2 g_kj t) via prefix/suffix products.
    prefix[0] = 1.0;
    for (std::size_t j = 0; j < n; ++j) prefix[j + 1] = prefix[j] * (j == k ? 1.0 : c1[sep(k, j)]);
    suffix[n] = 1.0;
    for (std::size_t j = n; j-- > 0;) suffix[j] = suffix[j + 1] * (j == k ? 1.0 : c1[sep(k, j)]);
    mean_x += 0.5 * prefix[n];

    for (std::size_t l = 0; l < n; ++l) {
      if (l == k) continue;
      sum_yz += s1[sep(k, l)] * prefix[l] * suffix[l + 1];
      if (l < k) continue;
      double pp = 1.0, pm = 1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k || j == l) continue;
        const std::size_t a = sep(k, j), b = sep(l, j);
        pp *= c_sum(a, b);
        pm *= c_diff(a, b);
      }
      sum_pp += 2.0 * pp;  // ordered pairs (k,l) and (l,k)
      sum_pm += 2.0 * pm;
    }
  }

  const double nd = static_cast<double>(n);
  CollectiveMoments m;
  m.t = t;
  m.n_spins = n;
  m.mean = {mean_x, 0.0, 0.0};
  m.second(0, 0) = nd / 4.0 + (sum_pp + sum_pm) / 8.0;
  m.second(1, 1) = nd / 4.0 + (sum_pm - sum_pp) / 8.0;
  m.second(2, 2) = nd / 4.0;
  m.second(1, 2) = m.second(2, 1) = sum_yz / 4.0;
  return m;
}

inline CollectiveMoments collective_moments(
    std::size_t n, double alpha, double t,
    AlphaOneNormalization at_one = AlphaOneNormalization::Unity) {
  if (n < 2) throw std::invalid_argument("collective moments need N >= 2");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  return collective_moments_from_couplings(ising_pauli_couplings(n, alpha, at_one), t);
}

struct OptimalQfi {
  double qfi = 0.0;
  Eigen::Vector3d direction = Eigen::Vector3d::UnitX();
};

// F_Q(n) = 4 n^T Gamma n is maximized by the top eigenvector of the
// covariance Gamma. Within a degenerate top eigenspace the lexicographically
// largest unit vector is returned: the normalized projection of the first
// basis axis with non-vanishing projection.
inline OptimalQfi optimal_collective_qfi(const CollectiveMoments& m) {
  const Eigen::Matrix3d gamma = m.covariance();
  const double scale = std::max(1.0, gamma.cwiseAbs().maxCoeff());
  if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::logic_error("covariance matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(0.5 * (gamma + gamma.transpose()));
  const Eigen::Vector3d& lambda = es.eigenvalues();  // ascending
  const double top = lambda[2];
  const double tol = 1e-10 * scale;
  Eigen::Matrix3d projector = Eigen::Matrix3d::Zero();
  for (int k = 0; k < 3; ++k)
    if (top - lambda[k] <= tol) projector += es.eigenvectors().col(k) * es.eigenvectors().col(k).transpose();

  Eigen::Vector3d dir = es.eigenvectors().col(2);
  for (int axis = 0; axis < 3; ++axis) {
    Eigen::Vector3d p = projector.col(axis);
    if (p.norm() > 1e-6) {
      dir = p.normalized();
      break;
    }
  }
  return {4.0 * std::max(0.0, top), dir};
}

inline std::size_t grid_steps(double t_max, double dt) {
  if (!(dt > 0.0) || !(t_max > 0.0) || !std::isfinite(t_max / dt))
    throw std::invalid_argument("time grid needs t_max > 0 and dt > 0");
  const double steps = std::round(t_max / dt);
  if (steps < 1.0) throw std::invalid_argument("t_max shorter than one time step");
  return static_cast<std::size_t>(steps);
}

// Evaluates `fn(index)` for index in [begin, end) over up to `threads` workers.
inline void parallel_for(std::size_t begin, std::size_t end, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(end - begin)));
  if (threads <= 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = begin + w; i < end; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

// Series over {0, dt, 2dt, ..., steps*dt}; F_Q(0) = N is set analytically.
inline QfiSeries qfi_time_series(std::size_t n, double alpha, double t_max, double dt,
                                 AlphaOneNormalization at_one = AlphaOneNormalization::Unity,
                                 unsigned threads = 1) {
  if (n < 2) throw std::invalid_argument("QFI series needs N >= 2");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  const std::size_t steps = grid_steps(t_max, dt);
  const auto g = ising_pauli_couplings(n, alpha, at_one);

  QfiSeries s;
  s.alpha = alpha;
  s.n_spins = n;
  s.times.resize(steps + 1);
  s.qfi.resize(steps + 1);
  s.directions.resize(steps + 1);
  s.times[0] = 0.0;
  s.qfi[0] = static_cast<double>(n);
  s.directions[0] = optimal_collective_qfi(collective_moments_from_couplings(g, 0.0)).direction;
  parallel_for(1, steps + 1, threads, [&](std::size_t k) {
    const double t = static_cast<double>(k) * dt;
    const auto opt = optimal_collective_qfi(collective_moments_from_couplings(g, t));
    s.times[k] = t;
    s.qfi[k] = opt.qfi;
    s.directions[k] = opt.direction;
  });
  return s;
}

// Time of the first local maximum of the optimal QFI on the grid k*dt, or
// t_cap if none is found before it.
inline double first_qfi_maximum_time(std::size_t n, double alpha, double dt, double t_cap,
                                     AlphaOneNormalization at_one = AlphaOneNormalization::Unity) {
  if (n < 2) throw std::invalid_argument("QFI series needs N >= 2");
  grid_steps(t_cap, dt);
  const auto g = ising_pauli_couplings(n, alpha, at_one);
  auto qfi_at = [&](double t) { return optimal_collective_qfi(collective_moments_from_couplings(g, t)).qfi; };
  double prev = static_cast<double>(n);
  double cur = qfi_at(dt);
  for (std::size_t k = 1;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t + dt > t_cap) return t_cap;
    const double next = qfi_at(t + dt);
    if (cur >= prev && cur > next) return t;
    prev = cur;
    cur = next;
  }
}

// argmax of F_Q(t)/t over sampled t >= t_min (t_min > 0); ties keep the
// earliest time.
inline EnhancementPoint optimal_enhancement_point(const QfiSeries& s, double t_min) {
  if (!(t_min > 0.0)) throw std::invalid_argument("t_min must be positive");
  EnhancementPoint best{0.0, -1.0, 0.0};
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    const double t = s.times[k];
    if (t <= 0.0 || t < t_min * (1.0 - 1e-12)) continue;
    const double r = s.qfi[k] / t;
    if (r > best.ratio) best = {t, r, s.qfi[k]};
  }
  if (best.ratio < 0.0) throw std::invalid_argument("series has no time point at or after t_min");
  return best;
}

// Default: any positive time qualifies.
inline EnhancementPoint optimal_enhancement_point(const QfiSeries& s) {
  return optimal_enhancement_point(s, std::numeric_limits<double>::min());
}

}  // namespace lrmetro
