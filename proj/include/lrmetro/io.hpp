#pragma once

// CSV and JSON export. Numbers are written with 17 significant digits so a
// value round-trips exactly; CSV uses commas, LF line endings and a header.

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lrmetro/exact_engine.hpp"
#include "lrmetro/ising_analytic.hpp"
#include "lrmetro/limits.hpp"
#include "lrmetro/sweep.hpp"

namespace lrmetro {

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_series_csv(std::ostream& os, const QfiSeries& s) {
  os << "t,qfi,nx,ny,nz\n";
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    const auto& d = s.directions[k];
    os << format_number(s.times[k]) << ',' << format_number(s.qfi[k]) << ','
       << format_number(d.x()) << ',' << format_number(d.y()) << ',' << format_number(d.z()) << '\n';
  }
}

inline nlohmann::json series_to_json(const QfiSeries& s) {
  nlohmann::json j;
  j["alpha"] = s.alpha;
  j["n_spins"] = s.n_spins;
  j["times"] = s.times;
  j["qfi"] = s.qfi;
  auto& dirs = j["directions"] = nlohmann::json::array();
  for (const auto& d : s.directions) dirs.push_back({d.x(), d.y(), d.z()});
  return j;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "alpha,N,t_p,F_Q,ratio\n";
  for (const auto& r : rows)
    os << format_number(r.alpha) << ',' << r.n << ',' << format_number(r.t_p) << ','
       << format_number(r.qfi) << ',' << format_number(r.ratio) << '\n';
}

inline void write_fit_csv(std::ostream& os, const std::vector<EnhancementFit>& fits) {
  os << "alpha,delta,delta_f,r2_delta,r2_delta_f\n";
  for (const auto& f : fits)
    os << format_number(f.alpha) << ',' << format_number(f.delta) << ',' << format_number(f.delta_f)
       << ',' << format_number(f.r2_delta) << ',' << format_number(f.r2_delta_f) << '\n';
}

struct BoundCurveRow {
  double alpha = 0.0;
  PrecisionLimit limit;
};

inline void write_bound_curve_csv(std::ostream& os, const std::vector<BoundCurveRow>& rows) {
  os << "alpha,delta_max,regime\n";
  for (const auto& r : rows)
    os << format_number(r.alpha) << ',' << format_number(r.limit.value) << ','
       << to_string(r.limit.regime) << '\n';
}

inline nlohmann::json hamiltonian_to_json(const KLocalHamiltonian& h) {
  nlohmann::json j;
  j["dim"] = h.lattice().dim();
  j["extents"] = h.lattice().extents();
  if (h.alpha) j["alpha"] = *h.alpha;
  auto& terms = j["terms"] = nlohmann::json::array();
  for (const auto& t : h.terms()) {
    std::vector<std::string> axes;
    for (auto a : t.axes) axes.emplace_back(1, static_cast<char>(a));
    terms.push_back({{"support", t.support}, {"axes", axes}, {"coeff", t.coefficient}});
  }
  return j;
}

inline KLocalHamiltonian hamiltonian_from_json(const nlohmann::json& j) {
  Lattice lat(j.at("dim").get<int>(), j.at("extents").get<std::vector<int>>());
  std::vector<PauliTerm> terms;
  std::size_t k = 1;
  for (const auto& jt : j.at("terms")) {
    PauliTerm t;
    t.support = jt.at("support").get<std::vector<std::size_t>>();
    for (const auto& a : jt.at("axes")) {
      const auto s = a.get<std::string>();
      if (s.size() != 1) throw std::invalid_argument("axis label must be one of x, y, z");
      t.axes.push_back(axis_from_char(s[0]));
    }
    t.coefficient = jt.at("coeff").get<double>();
    k = std::max(k, t.support.size());
    terms.push_back(std::move(t));
  }
  KLocalHamiltonian h(lat, k, std::move(terms));
  if (j.contains("alpha")) h.alpha = j.at("alpha").get<double>();
  return h;
}

// Debug dump: {"n_spins": N, "re": [...], "im": [...]}.
inline nlohmann::json state_to_json(const PureState& psi) {
  std::vector<double> re, im;
  for (Eigen::Index k = 0; k < psi.amplitudes.size(); ++k) {
    re.push_back(psi.amplitudes[k].real());
    im.push_back(psi.amplitudes[k].imag());
  }
  return {{"n_spins", psi.n_spins}, {"re", re}, {"im", im}};
}

inline void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace lrmetro
