#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lrmetro {

enum class DistanceMetric { Manhattan, Euclidean };

// D-dimensional hypercubic lattice with open boundaries and row-major site
// indexing (last coordinate varies fastest).
class Lattice {
 public:
  Lattice(int dim, std::vector<int> extents,
          DistanceMetric metric = DistanceMetric::Manhattan)
      : dim_(dim), extents_(std::move(extents)), metric_(metric) {
    if (dim_ < 1) throw std::invalid_argument("lattice dimension must be >= 1");
    if (static_cast<int>(extents_.size()) != dim_)
      throw std::invalid_argument("lattice: dim " + std::to_string(dim_) +
                                  " does not match " + std::to_string(extents_.size()) +
                                  " extents");
    n_sites_ = 1;
    for (int e : extents_) {
      if (e < 1) throw std::invalid_argument("lattice extents must be >= 1");
      n_sites_ *= static_cast<std::size_t>(e);
    }
  }

  int dim() const { return dim_; }
  const std::vector<int>& extents() const { return extents_; }
  std::size_t n_sites() const { return n_sites_; }
  DistanceMetric metric() const { return metric_; }

  std::vector<int> coordinates(std::size_t site) const {
    check_site(site);
    std::vector<int> c(static_cast<std::size_t>(dim_));
    for (int d = dim_ - 1; d >= 0; --d) {
      auto e = static_cast<std::size_t>(extents_[static_cast<std::size_t>(d)]);
      c[static_cast<std::size_t>(d)] = static_cast<int>(site % e);
      site /= e;
    }
    return c;
  }

  std::size_t site_index(const std::vector<int>& coords) const {
    if (static_cast<int>(coords.size()) != dim_)
      throw std::invalid_argument("coordinate rank does not match lattice dim");
    std::size_t idx = 0;
    for (int d = 0; d < dim_; ++d) {
      int e = extents_[static_cast<std::size_t>(d)];
      int c = coords[static_cast<std::size_t>(d)];
      if (c < 0 || c >= e) throw std::out_of_range("coordinate outside lattice");
      idx = idx * static_cast<std::size_t>(e) + static_cast<std::size_t>(c);
    }
    return idx;
  }

  double distance(std::size_t i, std::size_t j) const {
    auto a = coordinates(i);
    auto b = coordinates(j);
    double acc = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
      double diff = std::abs(a[d] - b[d]);
      acc += metric_ == DistanceMetric::Manhattan ? diff : diff * diff;
    }
    return metric_ == DistanceMetric::Manhattan ? acc : std::sqrt(acc);
  }

  // Largest pairwise distance.
  double diameter() const {
    double acc = 0.0;
    for (int e : extents_) {
      double span = e - 1;
      acc += metric_ == DistanceMetric::Manhattan ? span : span * span;
    }
    return metric_ == DistanceMetric::Manhattan ? acc : std::sqrt(acc);
  }

  void check_site(std::size_t site) const {
    if (site >= n_sites_)
      throw std::out_of_range("site " + std::to_string(site) + " outside lattice of " +
                              std::to_string(n_sites_) + " sites");
  }

 private:
  int dim_;
  std::vector<int> extents_;
  std::size_t n_sites_ = 0;
  DistanceMetric metric_;
};

inline Lattice build_lattice(int dim, const std::vector<int>& extents) {
  return Lattice(dim, extents);
}

inline Lattice build_chain(int n_sites) { return Lattice(1, {n_sites}); }

struct BallRegion {
  std::size_t center = 0;
  double radius = 0.0;
  std::vector<std::size_t> members;  // sorted
};

inline BallRegion ball(const Lattice& lat, std::size_t center, double radius) {
  lat.check_site(center);
  if (!(radius >= 0.0)) throw std::invalid_argument("ball radius must be non-negative");
  BallRegion b{center, radius, {}};
  for (std::size_t j = 0; j < lat.n_sites(); ++j)
    if (lat.distance(center, j) <= radius) b.members.push_back(j);
  return b;
}

// Smallest gamma with |i[R]| <= 1 + gamma (2R)^D for every site i and every
// integer R >= 1. Radii beyond the diameter only shrink the ratio, so the scan
// stops there.
inline double geometry_constant(const Lattice& lat) {
  const std::size_t n = lat.n_sites();
  const auto r_max = static_cast<std::size_t>(std::ceil(lat.diameter()));
  double gamma = 0.0;
  std::vector<std::size_t> shell(r_max + 2);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(shell.begin(), shell.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      auto d = static_cast<std::size_t>(std::ceil(lat.distance(i, j)));
      ++shell[std::min(d, r_max + 1)];
    }
    std::size_t count = shell[0];
    for (std::size_t r = 1; r <= r_max; ++r) {
      count += shell[r];
      double ratio = static_cast<double>(count - 1) / std::pow(2.0 * r, lat.dim());
      gamma = std::max(gamma, ratio);
    }
  }
  return gamma;
}

}  // namespace lrmetro
