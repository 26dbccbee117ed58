#pragma once

#include <random>

#include "lrmetro/exact_engine.hpp"

namespace lrmetro {

// Haar-random pure state (normalized complex Gaussian vector).
template <class Rng>
PureState random_pure_state(std::size_t n, Rng& rng) {
  detail::check_cap(n, kMaxPureSpins, "random pure state");
  std::normal_distribution<double> g;
  CVector v(Eigen::Index{1} << n);
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = cplx(g(rng), g(rng));
  v.normalize();
  return {std::move(v), n};
}

// Induced-measure mixed state G G^dagger / tr with G of shape 2^N x rank.
template <class Rng>
DensityMatrix random_density_matrix(std::size_t n, Eigen::Index rank, Rng& rng) {
  detail::check_cap(n, kMaxDensitySpins, "random density matrix");
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (rank < 1 || rank > dim) throw std::invalid_argument("rank must lie in [1, 2^N]");
  std::normal_distribution<double> g;
  CMatrix m(dim, rank);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < rank; ++c) m(r, c) = cplx(g(rng), g(rng));
  CMatrix rho = m * m.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return {std::move(rho), n};
}

template <class Rng>
Vec3 random_direction(Rng& rng) {
  std::normal_distribution<double> g;
  Vec3 v;
  do {
    v = {g(rng), g(rng), g(rng)};
  } while (v.norm() < 1e-6);
  return v.normalized();
}

}  // namespace lrmetro
