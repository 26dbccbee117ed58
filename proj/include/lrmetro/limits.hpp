#pragma once

// Light-cone models, the light-cone bound on QFI growth, Cramer-Rao
// bookkeeping and the regime-dependent ceiling on the enhancing exponent.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lrmetro {

enum class LightConeRegime { Linear, Polynomial, Logarithmic, Nonlocal };

inline std::string_view to_string(LightConeRegime r) {
  switch (r) {
    case LightConeRegime::Linear: return "linear";
    case LightConeRegime::Polynomial: return "polynomial";
    case LightConeRegime::Logarithmic: return "logarithmic";
    case LightConeRegime::Nonlocal: return "nonlocal";
  }
  return "unknown";
}

struct RegimeInfo {
  LightConeRegime regime = LightConeRegime::Linear;
  double xi = 0.0;  // only meaningful for Polynomial
};

inline void check_alpha(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
}

inline void check_dim(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
}

// Linear for alpha > 2D+1, polynomial (xi = alpha - 2D) on (2D, 2D+1],
// logarithmic on (D, 2D], no light cone on [0, D].
inline RegimeInfo regime_for(double alpha, int dim) {
  check_alpha(alpha);
  check_dim(dim);
  const double d = dim;
  if (alpha > 2 * d + 1) return {LightConeRegime::Linear, 0.0};
  if (alpha > 2 * d) return {LightConeRegime::Polynomial, alpha - 2 * d};
  if (alpha > d) return {LightConeRegime::Logarithmic, 0.0};
  return {LightConeRegime::Nonlocal, 0.0};
}

// R_L(t) for one of the four regimes:
//   Linear       R = v t
//   Polynomial   R = c t^{1/xi}
//   Logarithmic  R = a (e^{b t} - 1)
//   Nonlocal     R = 0 before t_s = c0 ln N, the full diameter afterwards
class LightConeModel {
 public:
  static LightConeModel linear(double velocity) {
    LightConeModel m(LightConeRegime::Linear);
    m.velocity_ = positive(velocity, "v_LR");
    return m;
  }
  static LightConeModel polynomial(double c, double xi) {
    LightConeModel m(LightConeRegime::Polynomial);
    m.c_ = positive(c, "c");
    if (!(xi > 0.0 && xi <= 1.0)) throw std::invalid_argument("xi must lie in (0, 1]");
    m.xi_ = xi;
    return m;
  }
  static LightConeModel logarithmic(double a, double b) {
    LightConeModel m(LightConeRegime::Logarithmic);
    m.a_ = positive(a, "a");
    m.b_ = positive(b, "b");
    return m;
  }
  static LightConeModel nonlocal(double signal_coeff, std::size_t n_sites, double diameter) {
    LightConeModel m(LightConeRegime::Nonlocal);
    m.signal_coeff_ = positive(signal_coeff, "c0");
    if (n_sites < 1) throw std::invalid_argument("nonlocal light cone needs N >= 1");
    if (!(diameter >= 0.0)) throw std::invalid_argument("diameter must be non-negative");
    m.n_sites_ = n_sites;
    m.diameter_ = diameter;
    return m;
  }

  LightConeRegime regime() const { return regime_; }
  double velocity() const { return velocity_; }
  double c() const { return c_; }
  double xi() const { return xi_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double signal_coeff() const { return signal_coeff_; }
  std::size_t n_sites() const { return n_sites_; }
  double diameter() const { return diameter_; }

  double signal_time() const { return signal_coeff_ * std::log(static_cast<double>(n_sites_)); }

  double radius(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be non-negative");
    switch (regime_) {
      case LightConeRegime::Linear: return velocity_ * t;
      case LightConeRegime::Polynomial: return c_ * std::pow(t, 1.0 / xi_);
      case LightConeRegime::Logarithmic: return a_ * std::expm1(b_ * t);
      case LightConeRegime::Nonlocal: return t > 0.0 && t >= signal_time() ? diameter_ : 0.0;
    }
    return 0.0;
  }

  // Earliest t with radius(t) >= r.
  double time_to_reach(double r) const {
    if (!(r >= 0.0)) throw std::invalid_argument("radius must be non-negative");
    if (r == 0.0) return 0.0;
    switch (regime_) {
      case LightConeRegime::Linear: return r / velocity_;
      case LightConeRegime::Polynomial: return std::pow(r / c_, xi_);
      case LightConeRegime::Logarithmic: return std::log1p(r / a_) / b_;
      case LightConeRegime::Nonlocal:
        if (r > diameter_) return std::numeric_limits<double>::infinity();
        return signal_time();
    }
    return 0.0;
  }

 private:
  explicit LightConeModel(LightConeRegime r) : regime_(r) {}
  static double positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(name) + " must be positive and finite");
    return v;
  }

  LightConeRegime regime_;
  double velocity_ = 1.0;
  double c_ = 1.0, xi_ = 1.0;
  double a_ = 1.0, b_ = 1.0;
  double signal_coeff_ = 1.0;
  std::size_t n_sites_ = 1;
  double diameter_ = 0.0;
};

inline double light_cone_radius(const LightConeModel& model, double t) { return model.radius(t); }

// Constants hidden behind the "<~" of the growth bound. kappa is the
// per-site spectrum width, used linearly as written.
struct GrowthBoundConstants {
  double kappa = 1.0;
  double c_wy = 1.0;
  double gamma = 1.0;
  double prefactor = 1.0;

  void validate() const {
    if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
    if (!(c_wy >= 1.0 && c_wy <= 2.0)) throw std::invalid_argument("c_WY must lie in [1, 2]");
    if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be non-negative");
    if (!(prefactor > 0.0)) throw std::invalid_argument("prefactor must be positive");
  }
  double base(std::size_t n) const { return prefactor * kappa * c_wy * static_cast<double>(n); }
};

// C kappa c_WY [1 + gamma 2^D R_L(t)^D] N, optionally clamped at kappa^2 N^2.
inline double qfi_growth_bound(const GrowthBoundConstants& k, int dim, const LightConeModel& model,
                               double t, std::size_t n, bool cap = false) {
  k.validate();
  check_dim(dim);
  const double r = model.radius(t);
  const double bound = k.base(n) * (1.0 + k.gamma * std::pow(2.0 * r, dim));
  if (!cap) return bound;
  const double ceiling = k.kappa * k.kappa * static_cast<double>(n) * static_cast<double>(n);
  return std::min(bound, ceiling);
}

// Closed-form inverse of the unclamped growth bound.
inline double min_preparation_time(double target_qfi, std::size_t n, const LightConeModel& model,
                                   int dim, const GrowthBoundConstants& k = {}) {
  k.validate();
  check_dim(dim);
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  const double nd = static_cast<double>(n);
  if (target_qfi > k.kappa * k.kappa * nd * nd * (1.0 + 1e-12))
    throw std::domain_error("target QFI exceeds kappa^2 N^2 and is unreachable");
  const double base = k.base(n);
  if (target_qfi <= base) return 0.0;
  if (k.gamma <= 0.0) throw std::domain_error("gamma = 0: the bound never grows");
  const double radius = 0.5 * std::pow((target_qfi / base - 1.0) / k.gamma, 1.0 / dim);
  const double t = model.time_to_reach(radius);
  if (!std::isfinite(t)) throw std::domain_error("target QFI beyond the light cone's reach");
  return t;
}

// Minimal time for F_Q / N >= k with a linear light cone in 1D.
inline double k_partite_min_time(std::size_t k, double v_lr) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(v_lr > 0.0)) throw std::invalid_argument("v_LR must be positive");
  return static_cast<double>(k) / v_lr;
}

// log_N(F_Q tau / (N t_p)).
inline double enhancing_exponent(double qfi, double t_p, double tau, std::size_t n) {
  if (n < 2) throw std::invalid_argument("enhancing exponent needs N >= 2");
  if (!(qfi > 0.0 && t_p > 0.0 && tau > 0.0))
    throw std::invalid_argument("QFI and times must be positive");
  const double nd = static_cast<double>(n);
  return std::log(qfi * tau / (nd * t_p)) / std::log(nd);
}

struct MetrologyReport {
  double qfi = 0.0;
  double t_p = 0.0;
  double tau = 0.0;
  double total_time = 0.0;
  std::size_t n = 0;
  double repetitions = 0.0;
  double delta_lambda = 0.0;
  double delta_lambda_sql = 0.0;
  double delta = 0.0;
};

// Phase lambda*tau per shot, T / t_p repetitions.
inline MetrologyReport cramer_rao(double qfi, double total_time, double t_p, double tau,
                                  std::size_t n) {
  if (!(t_p > 0.0 && tau > 0.0)) throw std::invalid_argument("times must be positive");
  if (!(total_time >= t_p)) throw std::invalid_argument("total time must be at least t_p");
  if (!(qfi > 0.0)) throw std::invalid_argument("QFI must be positive");
  MetrologyReport r;
  r.qfi = qfi;
  r.t_p = t_p;
  r.tau = tau;
  r.total_time = total_time;
  r.n = n;
  r.repetitions = total_time / t_p;
  r.delta_lambda = 1.0 / std::sqrt(qfi * tau * tau * r.repetitions);
  r.delta_lambda_sql = 1.0 / std::sqrt(static_cast<double>(n) * total_time * tau);
  r.delta = enhancing_exponent(qfi, t_p, tau, n);
  return r;
}

struct PrecisionLimit {
  double value = 0.0;
  bool asymptotic = false;  // value is the N -> infinity limit
  LightConeRegime regime = LightConeRegime::Linear;
};

inline PrecisionLimit delta_max(double alpha, int dim) {
  const auto info = regime_for(alpha, dim);
  const double d = dim;
  switch (info.regime) {
    case LightConeRegime::Linear: return {(d - 1.0) / d, false, info.regime};
    case LightConeRegime::Polynomial: return {(3.0 * d - alpha) / d, false, info.regime};
    default: return {1.0, true, info.regime};
  }
}

// 1 - log_N (ln N)^p, the finite-N ceiling when the polylog power p is known.
inline double delta_max_polylog(std::size_t n, double polylog_power) {
  if (n < 3) throw std::invalid_argument("polylog ceiling needs N >= 3");
  const double nd = static_cast<double>(n);
  return 1.0 - polylog_power * std::log(std::log(nd)) / std::log(nd);
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<double> residuals;
};

// Unweighted least squares y = intercept + slope x.
inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit needs >= 2 paired points");
  const double m = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / m;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("fit abscissae are degenerate");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    f.residuals.push_back(r);
    ss_res += r * r;
  }
  f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return f;
}

// Slope of log y against log x.
inline LinearFit power_law_fit(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw std::invalid_argument("power-law fit needs positive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return least_squares(lx, ly);
}

struct ScalingPoint {
  std::size_t n = 0;
  double qfi = 0.0;
  double t_p = 0.0;
};

struct EnhancementFit {
  double alpha = 0.0;
  std::vector<std::size_t> n_values;
  double delta = 0.0;
  double delta_f = 0.0;
  double r2_delta = 0.0;
  double r2_delta_f = 0.0;
  std::vector<double> residuals_delta;
  std::vector<double> residuals_delta_f;
};

// Delta = slope(log(F tau / t_p) vs log N) - 1, Delta_f = slope(log F vs log N) - 1.
inline EnhancementFit fit_scaling(std::vector<ScalingPoint> points, double tau, double alpha = 0.0) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].n == points[i - 1].n) throw std::invalid_argument("fit has repeated N");
  if (points.size() < 3) throw std::invalid_argument("fit needs at least 3 distinct N");
  std::vector<double> ns, rate, qfi;
  EnhancementFit fit;
  fit.alpha = alpha;
  for (const auto& p : points) {
    if (!(p.qfi > 0.0 && p.t_p > 0.0)) throw std::invalid_argument("fit points need positive F_Q and t_p");
    fit.n_values.push_back(p.n);
    ns.push_back(static_cast<double>(p.n));
    rate.push_back(p.qfi * tau / p.t_p);
    qfi.push_back(p.qfi);
  }
  const auto with_time = power_law_fit(ns, rate);
  const auto without_time = power_law_fit(ns, qfi);
  fit.delta = with_time.slope - 1.0;
  fit.delta_f = without_time.slope - 1.0;
  fit.r2_delta = with_time.r_squared;
  fit.r2_delta_f = without_time.r_squared;
  fit.residuals_delta = with_time.residuals;
  fit.residuals_delta_f = without_time.residuals;
  return fit;
}

}  // namespace lrmetro
