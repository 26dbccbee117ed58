#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lrmetro/lattice.hpp"

namespace lrmetro {

enum class Axis : char { X = 'x', Y = 'y', Z = 'z' };

inline Axis axis_from_char(char c) {
  switch (c) {
    case 'x': return Axis::X;
    case 'y': return Axis::Y;
    case 'z': return Axis::Z;
    default: throw std::invalid_argument(std::string("unknown spin axis '") + c + "'");
  }
}

// coefficient * prod_{s in support} S^{axis_s}_s, with S = sigma / 2.
struct PauliTerm {
  std::vector<std::size_t> support;
  std::vector<Axis> axes;
  double coefficient = 0.0;

  // Operator norm of a product of spin-1/2 operators is 2^{-|X|}.
  double norm() const { return std::abs(coefficient) * std::ldexp(1.0, -static_cast<int>(support.size())); }
  bool diagonal() const {
    return std::all_of(axes.begin(), axes.end(), [](Axis a) { return a == Axis::Z; });
  }
  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

// N_alpha at alpha == 1. Unity is the common limit of N^{1-alpha} and 1;
// Harmonic uses the Kac sum H_{N-1} = sum_{r<N} 1/r.
enum class AlphaOneNormalization { Unity, Harmonic };

class KLocalHamiltonian {
 public:
  KLocalHamiltonian(Lattice lattice, std::size_t locality, std::vector<PauliTerm> terms = {})
      : lattice_(std::move(lattice)), locality_(locality) {
    if (locality_ < 1) throw std::invalid_argument("locality k must be >= 1");
    for (auto& t : terms) add_term(std::move(t));
    canonicalize();
  }

  const Lattice& lattice() const { return lattice_; }
  std::size_t locality() const { return locality_; }
  std::size_t n_sites() const { return lattice_.n_sites(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  bool diagonal() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const PauliTerm& t) { return t.diagonal(); });
  }

  // Optional metadata for serialization.
  std::optional<double> alpha;

 private:
  void add_term(PauliTerm t) {
    if (t.support.empty()) throw std::invalid_argument("term support must be non-empty");
    if (t.support.size() != t.axes.size())
      throw std::invalid_argument("term support and axes differ in length");
    if (t.support.size() > locality_)
      throw std::invalid_argument("term acts on " + std::to_string(t.support.size()) +
                                  " sites, exceeding locality " + std::to_string(locality_));
    if (!std::isfinite(t.coefficient)) throw std::invalid_argument("term coefficient not finite");
    for (auto s : t.support) lattice_.check_site(s);
    std::vector<std::size_t> order(t.support.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return t.support[a] < t.support[b]; });
    PauliTerm sorted{{}, {}, t.coefficient};
    for (auto o : order) {
      if (!sorted.support.empty() && sorted.support.back() == t.support[o])
        throw std::invalid_argument("term support has repeated site");
      sorted.support.push_back(t.support[o]);
      sorted.axes.push_back(t.axes[o]);
    }
    terms_.push_back(std::move(sorted));
  }

  // Sort by (support, axes) and merge duplicates.
  void canonicalize() {
    using Key = std::pair<std::vector<std::size_t>, std::vector<Axis>>;
    std::map<Key, double> merged;
    for (const auto& t : terms_) merged[{t.support, t.axes}] += t.coefficient;
    terms_.clear();
    for (auto& [key, c] : merged) terms_.push_back({key.first, key.second, c});
  }

  Lattice lattice_;
  std::size_t locality_;
  std::vector<PauliTerm> terms_;
};

// max_i sum_{X containing i} ||h_X||, exact for spin-operator strings.
inline double one_site_energy(const KLocalHamiltonian& h) {
  std::vector<double> per_site(h.n_sites(), 0.0);
  for (const auto& t : h.terms())
    for (auto s : t.support) per_site[s] += t.norm();
  return per_site.empty() ? 0.0 : *std::max_element(per_site.begin(), per_site.end());
}

inline double normalize_factor(std::size_t n, double alpha,
                               AlphaOneNormalization at_one = AlphaOneNormalization::Unity) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  if (n == 1) return 1.0;
  if (alpha < 1.0) return std::pow(static_cast<double>(n), 1.0 - alpha);
  if (alpha > 1.0) return 1.0;
  if (at_one == AlphaOneNormalization::Unity) return 1.0;
  double h = 0.0;
  for (std::size_t r = 1; r < n; ++r) h += 1.0 / static_cast<double>(r);
  return h;
}

// Coefficient of S^z_i S^z_j at separation r in the power-law Ising chain.
inline double ising_coupling(std::size_t n, double alpha, std::size_t r,
                             AlphaOneNormalization at_one = AlphaOneNormalization::Unity) {
  return 4.0 / (normalize_factor(n, alpha, at_one) * std::pow(static_cast<double>(r), alpha));
}

inline KLocalHamiltonian build_power_law_ising(
    const Lattice& lat, double alpha,
    AlphaOneNormalization at_one = AlphaOneNormalization::Unity) {
  if (lat.dim() != 1) throw std::invalid_argument("power-law Ising builder requires a 1D chain");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  const std::size_t n = lat.n_sites();
  std::vector<double> by_distance(n, 0.0);
  for (std::size_t r = 1; r < n; ++r) by_distance[r] = ising_coupling(n, alpha, r, at_one);
  std::vector<PauliTerm> terms;
  terms.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      terms.push_back({{i, j}, {Axis::Z, Axis::Z}, by_distance[j - i]});
  KLocalHamiltonian h(lat, 2, std::move(terms));
  h.alpha = alpha;
  return h;
}

// -sum_{i<j} (S^x_i S^x_j + S^y_i S^y_j) / d_ij^3 with the lattice's metric.
// Builder only; no dynamics for it beyond the dense engine.
inline KLocalHamiltonian build_dipolar_xx(const Lattice& lat) {
  std::vector<PauliTerm> terms;
  for (std::size_t i = 0; i < lat.n_sites(); ++i)
    for (std::size_t j = i + 1; j < lat.n_sites(); ++j) {
      double c = -1.0 / std::pow(lat.distance(i, j), 3);
      terms.push_back({{i, j}, {Axis::X, Axis::X}, c});
      terms.push_back({{i, j}, {Axis::Y, Axis::Y}, c});
    }
  KLocalHamiltonian h(lat, 2, std::move(terms));
  h.alpha = 3.0;
  return h;
}

}  // namespace lrmetro
