#pragma once

// (alpha, N) sweeps of the optimal preparation point F_Q / t_p and the
// scaling fits built on them.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "lrmetro/ising_analytic.hpp"
#include "lrmetro/limits.hpp"

namespace lrmetro {

struct SweepSettings {
  double dt = 0.05;
  double tau = 1.0;      // t_p is searched over t >= tau
  double t_cap = 1e4;    // hard stop for the scan
  AlphaOneNormalization at_one = AlphaOneNormalization::Unity;
  unsigned threads = 1;

  void validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    if (!(t_cap >= tau)) throw std::invalid_argument("t_cap must be at least tau");
  }
};

struct SweepRow {
  double alpha = 0.0;
  std::size_t n = 0;
  double t_p = 0.0;
  double qfi = 0.0;
  double ratio = 0.0;
};

// Scans t = dt, 2dt, ... and returns the grid maximum of F_Q(t)/t over
// t >= tau. Because F_Q <= N^2, no point beyond t = N^2 / best_ratio can win,
// so the scan stops there and the result is the global grid optimum.
inline SweepRow scan_enhancement_point(std::size_t n, double alpha, const SweepSettings& s) {
  s.validate();
  if (n < 2) throw std::invalid_argument("sweep needs N >= 2");
  const auto g = ising_pauli_couplings(n, alpha, s.at_one);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  SweepRow best{alpha, n, 0.0, 0.0, -1.0};
  for (std::size_t k = 1;; ++k) {
    const double t = static_cast<double>(k) * s.dt;
    if (t > s.t_cap) break;
    if (best.ratio > 0.0 && t * best.ratio > n2) break;
    if (t < s.tau * (1.0 - 1e-12)) continue;
    const double f = optimal_collective_qfi(collective_moments_from_couplings(g, t)).qfi;
    if (f / t > best.ratio) best = {alpha, n, t, f, f / t};
  }
  if (best.ratio < 0.0) throw std::runtime_error("no grid point in [tau, t_cap]");
  return best;
}

// Rows ordered alpha-major, N in the given order, regardless of threading.
inline std::vector<SweepRow> run_sweep(const std::vector<double>& alphas,
                                       const std::vector<std::size_t>& ns,
                                       const SweepSettings& s) {
  s.validate();
  std::vector<SweepRow> rows(alphas.size() * ns.size());
  parallel_for(0, rows.size(), s.threads, [&](std::size_t idx) {
    rows[idx] = scan_enhancement_point(ns[idx % ns.size()], alphas[idx / ns.size()], s);
  });
  return rows;
}

inline std::vector<EnhancementFit> fit_sweep(const std::vector<SweepRow>& rows,
                                             const std::vector<double>& alphas, double tau) {
  std::vector<EnhancementFit> fits;
  for (double a : alphas) {
    std::vector<ScalingPoint> pts;
    for (const auto& r : rows)
      if (r.alpha == a) pts.push_back({r.n, r.qfi, r.t_p});
    fits.push_back(fit_scaling(pts, tau, a));
  }
  return fits;
}

}  // namespace lrmetro
