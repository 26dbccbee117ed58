#pragma once

// Dense state-vector / density-matrix engine for small spin-1/2 systems.
//
// Basis convention: bit s of a basis index is the state of site s, with
// bit 0 = spin up (S^z = +1/2) and bit 1 = spin down.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lrmetro/hamiltonian.hpp"

namespace lrmetro {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

inline constexpr std::size_t kMaxPureSpins = 14;
inline constexpr std::size_t kMaxOperatorSpins = 10;
inline constexpr std::size_t kMaxDensitySpins = 8;

inline constexpr double kProbabilityFloor = 1e-12;
inline constexpr double kHermitianTol = 1e-10;

namespace detail {

inline void check_cap(std::size_t n, std::size_t cap, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": need at least one spin");
  if (n > cap)
    throw std::length_error(std::string(what) + ": " + std::to_string(n) +
                            " spins exceeds cap of " + std::to_string(cap));
}

inline std::size_t spins_for_dim(Eigen::Index dim) {
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || n == 0)
    throw std::invalid_argument("dimension is not a power of two");
  return n;
}

// h = (0.5 * (nx, ny, nz)) . sigma acting on `site`, accumulated into out.
inline void add_site_spin(const CVector& in, std::size_t site, const Vec3& n, cplx scale,
                          CVector& out) {
  const Eigen::Index mask = Eigen::Index{1} << site;
  const cplx flip_from_up(0.5 * n.x(), 0.5 * n.y());
  const cplx flip_from_down(0.5 * n.x(), -0.5 * n.y());
  for (Eigen::Index b = 0; b < in.size(); ++b) {
    const cplx a = scale * in[b];
    if (a == cplx{}) continue;
    const bool up = (b & mask) == 0;
    out[b] += (up ? 0.5 : -0.5) * n.z() * a;
    out[b ^ mask] += (up ? flip_from_up : flip_from_down) * a;
  }
}

inline Vec3 axis_vector(Axis a) {
  switch (a) {
    case Axis::X: return Vec3::UnitX();
    case Axis::Y: return Vec3::UnitY();
    case Axis::Z: return Vec3::UnitZ();
  }
  return Vec3::Zero();
}

}  // namespace detail

struct PureState {
  CVector amplitudes;
  std::size_t n_spins = 0;

  PureState() = default;
  PureState(CVector amps, std::size_t n) : amplitudes(std::move(amps)), n_spins(n) {
    if (amplitudes.size() != (Eigen::Index{1} << n))
      throw std::invalid_argument("amplitude vector length must be 2^N");
    if (std::abs(amplitudes.norm() - 1.0) > 1e-12)
      throw std::invalid_argument("pure state is not normalized");
  }
};

struct DensityMatrix {
  CMatrix matrix;
  std::size_t n_spins = 0;

  DensityMatrix() = default;
  DensityMatrix(CMatrix m, std::size_t n) : matrix(std::move(m)), n_spins(n) {
    detail::check_cap(n, kMaxDensitySpins, "density matrix");
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (matrix.rows() != dim || matrix.cols() != dim)
      throw std::invalid_argument("density matrix must be 2^N x 2^N");
    if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
      throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(matrix.trace() - cplx(1.0)) > kHermitianTol)
      throw std::invalid_argument("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kHermitianTol)
      throw std::invalid_argument("density matrix has negative eigenvalue");
  }

  static DensityMatrix from_pure(const PureState& psi) {
    return {psi.amplitudes * psi.amplitudes.adjoint(), psi.n_spins};
  }
};

// K = sum_i S^{n_i}_i. One shared direction or one per site.
class CollectiveOperator {
 public:
  CollectiveOperator(std::size_t n_spins, const Vec3& direction)
      : n_spins_(n_spins), directions_{direction} {
    validate();
  }
  CollectiveOperator(std::size_t n_spins, std::vector<Vec3> per_site)
      : n_spins_(n_spins), directions_(std::move(per_site)) {
    if (directions_.size() != n_spins_)
      throw std::invalid_argument("per-site directions must match spin count");
    validate();
  }

  std::size_t n_spins() const { return n_spins_; }
  const Vec3& direction(std::size_t site) const {
    return directions_.size() == 1 ? directions_.front() : directions_.at(site);
  }

  CVector apply(const CVector& psi) const {
    CVector out = CVector::Zero(psi.size());
    for (std::size_t s = 0; s < n_spins_; ++s) detail::add_site_spin(psi, s, direction(s), 1.0, out);
    return out;
  }

  CVector apply_site(const CVector& psi, std::size_t site) const {
    CVector out = CVector::Zero(psi.size());
    detail::add_site_spin(psi, site, direction(site), 1.0, out);
    return out;
  }

  CMatrix matrix() const {
    detail::check_cap(n_spins_, kMaxOperatorSpins, "collective operator matrix");
    const Eigen::Index dim = Eigen::Index{1} << n_spins_;
    CMatrix m(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) m.col(c) = apply(CVector::Unit(dim, c));
    return m;
  }

  CMatrix site_matrix(std::size_t site) const {
    detail::check_cap(n_spins_, kMaxOperatorSpins, "site operator matrix");
    if (site >= n_spins_) throw std::out_of_range("site outside collective operator");
    const Eigen::Index dim = Eigen::Index{1} << n_spins_;
    CMatrix m(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) m.col(c) = apply_site(CVector::Unit(dim, c), site);
    return m;
  }

 private:
  void validate() const {
    if (n_spins_ < 1) throw std::invalid_argument("collective operator needs spins");
    for (const auto& d : directions_)
      if (std::abs(d.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("interrogation direction must be a unit vector");
  }

  std::size_t n_spins_;
  std::vector<Vec3> directions_;
};

inline PureState coherent_spin_state(std::size_t n, const Vec3& direction) {
  detail::check_cap(n, kMaxPureSpins, "coherent spin state");
  if (std::abs(direction.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("coherent state direction must be a unit vector");
  const double theta = std::acos(std::clamp(direction.z(), -1.0, 1.0));
  const double phi = std::atan2(direction.y(), direction.x());
  const cplx up(std::cos(theta / 2), 0.0);
  const cplx down = std::polar(std::sin(theta / 2), phi);
  const Eigen::Index dim = Eigen::Index{1} << n;
  CVector amps(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    cplx a(1.0);
    for (std::size_t s = 0; s < n; ++s) a *= (b >> s) & 1 ? down : up;
    amps[b] = a;
  }
  amps.normalize();
  return {std::move(amps), n};
}

inline PureState ghz_state(std::size_t n) {
  detail::check_cap(n, kMaxPureSpins, "GHZ state");
  const Eigen::Index dim = Eigen::Index{1} << n;
  CVector amps = CVector::Zero(dim);
  amps[0] = amps[dim - 1] = 1.0 / std::numbers::sqrt2;
  return {std::move(amps), n};
}

// Dense matrix of H in the computational basis.
inline CMatrix dense_hamiltonian(const KLocalHamiltonian& h) {
  const std::size_t n = h.n_sites();
  detail::check_cap(n, kMaxOperatorSpins, "dense Hamiltonian");
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (const auto& t : h.terms()) {
      CVector v = CVector::Unit(dim, c);
      for (std::size_t k = 0; k < t.support.size(); ++k) {
        CVector w = CVector::Zero(dim);
        detail::add_site_spin(v, t.support[k], detail::axis_vector(t.axes[k]), 1.0, w);
        v = std::move(w);
      }
      m.col(c) += t.coefficient * v;
    }
  }
  return m;
}

// Diagonal energies of an all-z Hamiltonian.
inline Eigen::VectorXd diagonal_energies(const KLocalHamiltonian& h) {
  if (!h.diagonal()) throw std::invalid_argument("Hamiltonian has off-diagonal terms");
  const std::size_t n = h.n_sites();
  detail::check_cap(n, kMaxPureSpins, "diagonal energies");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index b = 0; b < dim; ++b)
    for (const auto& t : h.terms()) {
      double v = t.coefficient;
      for (auto s : t.support) v *= (b >> s) & 1 ? -0.5 : 0.5;
      e[b] += v;
    }
  return e;
}

// Time evolution e^{-iHt}. All-z Hamiltonians use exact diagonal phases;
// anything else goes through a dense Hermitian eigendecomposition.
class Propagator {
 public:
  explicit Propagator(const KLocalHamiltonian& h) : n_spins_(h.n_sites()) {
    if (h.diagonal()) {
      energies_ = diagonal_energies(h);
      diagonal_ = true;
      return;
    }
    CMatrix m = dense_hamiltonian(h);
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
      throw std::logic_error("assembled Hamiltonian is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    energies_ = es.eigenvalues();
    basis_ = es.eigenvectors();
  }

  std::size_t n_spins() const { return n_spins_; }
  bool diagonal() const { return diagonal_; }

  CVector phases(double t) const {
    CVector p(energies_.size());
    for (Eigen::Index k = 0; k < p.size(); ++k) p[k] = std::polar(1.0, -energies_[k] * t);
    return p;
  }

  PureState evolve(const PureState& psi, double t) const {
    if (psi.n_spins != n_spins_) throw std::invalid_argument("state and Hamiltonian sizes differ");
    CVector out;
    if (diagonal_) {
      out = phases(t).cwiseProduct(psi.amplitudes);
    } else {
      out = basis_ * phases(t).cwiseProduct(basis_.adjoint() * psi.amplitudes);
    }
    out.normalize();
    return {std::move(out), n_spins_};
  }

  CMatrix unitary(double t) const {
    detail::check_cap(n_spins_, kMaxOperatorSpins, "dense propagator");
    if (diagonal_) return phases(t).asDiagonal();
    return basis_ * phases(t).asDiagonal() * basis_.adjoint();
  }

 private:
  std::size_t n_spins_;
  bool diagonal_ = false;
  Eigen::VectorXd energies_;
  CMatrix basis_;
};

inline PureState evolve(const PureState& psi, const KLocalHamiltonian& h, double t) {
  detail::check_cap(psi.n_spins, h.diagonal() ? kMaxPureSpins : kMaxOperatorSpins, "evolve");
  return Propagator(h).evolve(psi, t);
}

// K_i(t) = U^dagger(t) K_i U(t).
inline CMatrix heisenberg_op(const KLocalHamiltonian& h, double t, const CollectiveOperator& k,
                             std::size_t site) {
  detail::check_cap(h.n_sites(), kMaxOperatorSpins, "Heisenberg operator");
  if (k.n_spins() != h.n_sites()) throw std::invalid_argument("operator and Hamiltonian sizes differ");
  const CMatrix u = Propagator(h).unitary(t);
  return u.adjoint() * k.site_matrix(site) * u;
}

inline double expectation(const CVector& psi, const CMatrix& op) {
  return psi.dot(op * psi).real();
}

// 4 Var(K) for a pure state and Hermitian K.
inline double qfi_pure(const PureState& psi, const CMatrix& op) {
  const CVector k_psi = op * psi.amplitudes;
  const double mean = psi.amplitudes.dot(k_psi).real();
  return 4.0 * std::max(0.0, k_psi.squaredNorm() - mean * mean);
}

inline double qfi_pure(const PureState& psi, const CollectiveOperator& k) {
  if (k.n_spins() != psi.n_spins) throw std::invalid_argument("operator and state sizes differ");
  const CVector k_psi = k.apply(psi.amplitudes);
  const double mean = psi.amplitudes.dot(k_psi).real();
  return 4.0 * std::max(0.0, k_psi.squaredNorm() - mean * mean);
}

// F_Q = 2 sum_{n,m} (p_n - p_m)^2 / (p_n + p_m) |<n|K|m>|^2 over p_n + p_m > 0.
inline double qfi_spectral(const DensityMatrix& rho, const CMatrix& op) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix);
  Eigen::VectorXd p = es.eigenvalues();
  for (Eigen::Index n = 0; n < p.size(); ++n)
    if (p[n] < kProbabilityFloor) p[n] = 0.0;
  const CMatrix k = es.eigenvectors().adjoint() * op * es.eigenvectors();
  double f = 0.0;
  for (Eigen::Index n = 0; n < p.size(); ++n)
    for (Eigen::Index m = 0; m < p.size(); ++m) {
      const double s = p[n] + p[m];
      if (s <= kProbabilityFloor) continue;
      const double d = p[n] - p[m];
      f += d * d / s * std::norm(k(n, m));
    }
  return 2.0 * f;
}

inline double qfi_spectral(const DensityMatrix& rho, const CollectiveOperator& k) {
  if (k.n_spins() != rho.n_spins) throw std::invalid_argument("operator and state sizes differ");
  return qfi_spectral(rho, k.matrix());
}

// Square root of a PSD matrix. Eigenvalues below the probability floor are
// set to zero and the spectrum renormalized to unit trace.
inline CMatrix psd_sqrt(const CMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sigma);
  Eigen::VectorXd p = es.eigenvalues();
  if (p.minCoeff() < -kHermitianTol) throw std::invalid_argument("matrix is not positive semidefinite");
  for (Eigen::Index k = 0; k < p.size(); ++k)
    if (p[k] < kProbabilityFloor) p[k] = 0.0;
  p /= p.sum();
  return es.eigenvectors() * p.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

// S = 2 sum_{i,j} tr([K_i, sqrt(sigma)]^dagger [K_j, sqrt(sigma)]), i.e. four
// times the Wigner-Yanase skew information of sum_i K_i.
inline double skew_information_sum(const DensityMatrix& sigma, const std::vector<CMatrix>& ops) {
  if (ops.empty()) return 0.0;
  const CMatrix root = psd_sqrt(sigma.matrix);
  CMatrix k = CMatrix::Zero(root.rows(), root.cols());
  for (const auto& op : ops) {
    if (op.rows() != root.rows() || op.cols() != root.cols())
      throw std::invalid_argument("operator dimension mismatch");
    if ((op - op.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
      throw std::invalid_argument("operator is not Hermitian");
    k += op;
  }
  const CMatrix c = k * root - root * k;
  return 2.0 * (c.adjoint() * c).trace().real();
}

inline Vec3 spherical_direction(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

struct DirectionalQfi {
  double qfi = 0.0;
  Vec3 direction = Vec3::UnitX();
};

// Brute-force maximization of qfi_pure over uniform directions: a
// theta x phi grid followed by a shrinking compass search in (theta, phi).
inline DirectionalQfi max_qfi_over_directions(const PureState& psi, int theta_points = 24,
                                              int phi_points = 30) {
  auto eval = [&](double th, double ph) {
    return qfi_pure(psi, CollectiveOperator(psi.n_spins, spherical_direction(th, ph)));
  };
  double best_th = 0.0, best_ph = 0.0, best = -1.0;
  for (int a = 0; a < theta_points; ++a) {
    const double th = std::numbers::pi * (a + 0.5) / theta_points;
    for (int b = 0; b < phi_points; ++b) {
      const double ph = 2.0 * std::numbers::pi * b / phi_points;
      const double f = eval(th, ph);
      if (f > best) best = f, best_th = th, best_ph = ph;
    }
  }
  double step = std::numbers::pi / theta_points;
  while (step > 1e-10) {
    bool moved = false;
    for (auto [dt, dp] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
      const double th = best_th + dt * step, ph = best_ph + dp * step;
      const double f = eval(th, ph);
      if (f > best) {
        best = f, best_th = th, best_ph = ph;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return {best, spherical_direction(best_th, best_ph)};
}

}  // namespace lrmetro
