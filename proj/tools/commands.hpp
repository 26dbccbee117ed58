#pragma once

// Subcommand implementations for the lrmetro CLI. Each command takes a fully
// merged config, writes its artifacts, and returns a process exit code.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "lrmetro/io.hpp"
#include "lrmetro/lrmetro.hpp"
#include "lrmetro/verify.hpp"

namespace lrmetro::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kRuntime = 3, kVerifyFailed = 4 };

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline unsigned thread_count() {
  if (const char* env = std::getenv("LRMETRO_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw ValidationError("LRMETRO_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline AlphaOneNormalization parse_alpha_one(const std::string& s) {
  if (s == "unity") return AlphaOneNormalization::Unity;
  if (s == "harmonic") return AlphaOneNormalization::Harmonic;
  throw ValidationError("alpha1-norm must be 'unity' or 'harmonic'");
}

// Rejects keys outside `allowed`.
inline void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ValidationError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ValidationError("unknown config key '" + key + "'");
}

inline nlohmann::json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config file '" + path + "': " + e.what());
  }
}

template <class T>
void take(const nlohmann::json& j, const char* key, T& field) {
  if (!j.contains(key)) return;
  try {
    field = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("config key '") + key + "': " + e.what());
  }
}

template <class T>
void take(const nlohmann::json& j, const char* key, std::optional<T>& field) {
  if (!j.contains(key)) return;
  T v{};
  take(j, key, v);
  field = v;
}

// "a:b:s" (inclusive), "a,b,c", or a single value.
inline std::vector<double> parse_alpha_grid(const std::string& spec) {
  auto to_double = [](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ValidationError("bad number '" + s + "' in alpha grid");
    return v;
  };
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ValidationError("alpha range must be start:stop:step");
    const double a = to_double(parts[0]), b = to_double(parts[1]), step = to_double(parts[2]);
    if (!(step > 0.0) || b < a) throw ValidationError("alpha range needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) out.push_back(a + static_cast<double>(k) * step);
  } else {
    std::stringstream ss(spec);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(to_double(p));
  }
  if (out.empty()) throw ValidationError("alpha grid is empty");
  return out;
}

// ---------------------------------------------------------------- ising-qfi

struct IsingQfiConfig {
  std::optional<double> alpha;
  std::optional<std::size_t> n;
  std::optional<double> t_max;  // default: twice the first QFI maximum
  double dt = 0.05;
  double tau = 1.0;
  std::string alpha1_norm = "unity";
  std::string out;

  void merge(const nlohmann::json& j) {
    check_keys(j, {"alpha", "n", "t-max", "dt", "tau", "alpha1-norm", "out"});
    take(j, "alpha", alpha);
    take(j, "n", n);
    take(j, "t-max", t_max);
    take(j, "dt", dt);
    take(j, "tau", tau);
    take(j, "alpha1-norm", alpha1_norm);
    take(j, "out", out);
  }

  void validate() const {
    if (!alpha) throw ValidationError("--alpha is required");
    if (!n) throw ValidationError("--n is required");
    if (!(*alpha >= 0.0)) throw ValidationError("alpha must be non-negative");
    if (*n < 2) throw ValidationError("N must be at least 2");
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    if (t_max && !(*t_max >= dt)) throw ValidationError("t-max must be at least dt");
    if (!(tau > 0.0)) throw ValidationError("tau must be positive");
    if (out.empty()) throw ValidationError("--out is required");
    parse_alpha_one(alpha1_norm);
  }
};

inline int cmd_ising_qfi(IsingQfiConfig cfg) {
  cfg.validate();
  const auto norm = parse_alpha_one(cfg.alpha1_norm);
  if (!cfg.t_max) {
    const double first = first_qfi_maximum_time(*cfg.n, *cfg.alpha, cfg.dt, 1e4, norm);
    cfg.t_max = 2.0 * first;
  }
  const auto series = qfi_time_series(*cfg.n, *cfg.alpha, *cfg.t_max, cfg.dt, norm, thread_count());

  std::ostringstream csv;
  write_series_csv(csv, series);
  write_text_file(cfg.out, csv.str());

  nlohmann::json side;
  side["config"] = {{"alpha", *cfg.alpha}, {"n", *cfg.n},     {"t-max", *cfg.t_max},
                    {"dt", cfg.dt},        {"tau", cfg.tau}, {"alpha1-norm", cfg.alpha1_norm},
                    {"out", cfg.out}};
  side["rows"] = series.times.size();
  if (series.times.back() >= cfg.tau) {
    const auto opt = optimal_enhancement_point(series, cfg.tau);
    side["t_p"] = opt.t_p;
    side["ratio"] = opt.ratio;
    side["F_Q_at_t_p"] = opt.qfi;
  } else {
    side["t_p"] = nullptr;
    side["ratio"] = nullptr;
    side["F_Q_at_t_p"] = nullptr;
  }
  side["series"] = series_to_json(series);
  write_text_file(cfg.out + ".json", side.dump(2) + "\n");
  return kOk;
}

// ---------------------------------------------------------------- sweep-fit

struct SweepFitConfig {
  std::vector<double> alphas;
  std::vector<std::size_t> ns;
  double dt = 0.05;
  double tau = 1.0;
  double t_cap = 1e4;
  std::string alpha1_norm = "unity";
  std::string sweep_out = "sweep.csv";
  std::string fit_out = "fit.csv";

  void merge(const nlohmann::json& j) {
    check_keys(j, {"alpha", "n", "dt", "tau", "t-cap", "alpha1-norm", "sweep-out", "fit-out"});
    take(j, "alpha", alphas);
    take(j, "n", ns);
    take(j, "dt", dt);
    take(j, "tau", tau);
    take(j, "t-cap", t_cap);
    take(j, "alpha1-norm", alpha1_norm);
    take(j, "sweep-out", sweep_out);
    take(j, "fit-out", fit_out);
  }

  void validate() const {
    if (alphas.empty()) throw ValidationError("--alpha needs at least one value");
    for (double a : alphas)
      if (!(a >= 0.0)) throw ValidationError("alpha must be non-negative");
    std::set<std::size_t> distinct(ns.begin(), ns.end());
    if (distinct.size() != ns.size()) throw ValidationError("--n values must be distinct");
    if (ns.size() < 3) throw ValidationError("fitting needs at least 3 distinct N values");
    for (auto n : ns)
      if (n < 2) throw ValidationError("N must be at least 2");
    if (!(dt > 0.0) || !(tau > 0.0) || !(t_cap >= tau))
      throw ValidationError("need dt > 0, tau > 0 and t-cap >= tau");
    if (sweep_out.empty() || fit_out.empty()) throw ValidationError("output paths must be non-empty");
    parse_alpha_one(alpha1_norm);
  }
};

inline int cmd_sweep_fit(const SweepFitConfig& cfg) {
  cfg.validate();
  SweepSettings s;
  s.dt = cfg.dt;
  s.tau = cfg.tau;
  s.t_cap = cfg.t_cap;
  s.at_one = parse_alpha_one(cfg.alpha1_norm);
  s.threads = thread_count();
  const auto rows = run_sweep(cfg.alphas, cfg.ns, s);
  const auto fits = fit_sweep(rows, cfg.alphas, cfg.tau);

  std::ostringstream sweep_csv, fit_csv;
  write_sweep_csv(sweep_csv, rows);
  write_fit_csv(fit_csv, fits);
  write_text_file(cfg.sweep_out, sweep_csv.str());
  write_text_file(cfg.fit_out, fit_csv.str());

  nlohmann::json side;
  side["config"] = {{"alpha", cfg.alphas},         {"n", cfg.ns},
                    {"dt", cfg.dt},                {"tau", cfg.tau},
                    {"t-cap", cfg.t_cap},          {"alpha1-norm", cfg.alpha1_norm},
                    {"sweep-out", cfg.sweep_out},  {"fit-out", cfg.fit_out}};
  auto& jf = side["fits"] = nlohmann::json::array();
  for (const auto& f : fits)
    jf.push_back({{"alpha", f.alpha},
                  {"n_values", f.n_values},
                  {"delta", f.delta},
                  {"delta_f", f.delta_f},
                  {"r2_delta", f.r2_delta},
                  {"r2_delta_f", f.r2_delta_f},
                  {"residuals_delta", f.residuals_delta},
                  {"residuals_delta_f", f.residuals_delta_f}});
  write_text_file(cfg.fit_out + ".json", side.dump(2) + "\n");
  return kOk;
}

// -------------------------------------------------------------- bound-curve

struct BoundCurveConfig {
  int dim = 1;
  std::string alpha = "0:5:0.5";
  std::string out;  // empty: standard output

  void merge(const nlohmann::json& j) {
    check_keys(j, {"d", "alpha", "out"});
    take(j, "d", dim);
    if (j.contains("alpha") && j["alpha"].is_number()) {
      alpha = format_number(j["alpha"].get<double>());
    } else {
      take(j, "alpha", alpha);
    }
    take(j, "out", out);
  }

  void validate() const {
    if (dim < 1) throw ValidationError("--d must be >= 1");
    for (double a : parse_alpha_grid(alpha))
      if (!(a >= 0.0)) throw ValidationError("alpha must be non-negative");
  }
};

inline int cmd_bound_curve(const BoundCurveConfig& cfg, std::ostream& stdout_stream) {
  cfg.validate();
  std::vector<BoundCurveRow> rows;
  for (double a : parse_alpha_grid(cfg.alpha)) rows.push_back({a, delta_max(a, cfg.dim)});
  std::ostringstream csv;
  write_bound_curve_csv(csv, rows);
  if (cfg.out.empty())
    stdout_stream << csv.str();
  else
    write_text_file(cfg.out, csv.str());
  return kOk;
}

// ------------------------------------------------------------------- verify

struct VerifyConfig {
  std::size_t n_max = 6;
  std::uint64_t seed = VerifySettings{}.seed;

  void merge(const nlohmann::json& j) {
    check_keys(j, {"n-max", "seed"});
    take(j, "n-max", n_max);
    take(j, "seed", seed);
  }

  void validate() const {
    if (n_max < 2 || n_max > kMaxDensitySpins)
      throw ValidationError("--n-max must lie in [2, " + std::to_string(kMaxDensitySpins) + "]");
  }
};

inline int cmd_verify(const VerifyConfig& cfg, std::ostream& report) {
  cfg.validate();
  VerifySettings s;
  s.n_max = cfg.n_max;
  s.seed = cfg.seed;
  bool all = true;
  for (const auto& c : run_verification(s)) {
    report << (c.passed ? "PASS " : "FAIL ") << c.name << " worst=" << format_number(c.worst)
           << " tol=" << format_number(c.tolerance);
    if (!c.detail.empty()) report << " (" << c.detail << ")";
    report << '\n';
    all = all && c.passed;
  }
  return all ? kOk : kVerifyFailed;
}

}  // namespace lrmetro::cli
