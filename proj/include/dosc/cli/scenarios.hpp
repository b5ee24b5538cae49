#pragma once

// Scenario runners behind the command-line tool. Each builds a Table whose
// header echoes the resolved configuration, then writes it as CSV or JSON.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dosc/cli/config.hpp"
#include "dosc/density.hpp"
#include "dosc/evolution.hpp"
#include "dosc/observables.hpp"
#include "dosc/oracle.hpp"
#include "dosc/parallel.hpp"
#include "dosc/wavepacket.hpp"

namespace dosc::cli {

enum class Format { csv, json };

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw usage_error("unknown format '" + s + "'");
}

struct Table {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, std::string>> info;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Scientific notation, 17 significant digits.
inline std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

inline void write_table(const Table& t, std::ostream& out, Format fmt) {
  if (fmt == Format::json) {
    nlohmann::ordered_json j;
    j["scenario"] = t.scenario;
    j["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.config) j["config"][k] = v;
    j["info"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.info) j["info"][k] = v;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    out << j.dump(1) << '\n';
    return;
  }
  out << "# dosc " << t.scenario << '\n';
  for (const auto& [k, v] : t.config) out << "# config " << k << " = " << v << '\n';
  for (const auto& [k, v] : t.info) out << "# info " << k << " = " << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_value(row[i]);
    out << '\n';
  }
}

inline void write_table_file(const Table& t, const std::string& path, Format fmt) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_table(t, f, fmt);
  f.flush();
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

namespace detail {

inline Table make_table(const std::string& scenario, const ScenarioConfig& c) {
  Table t;
  t.scenario = scenario;
  t.config = echo_config(c);
  const auto w = coherent_weights(c.sim.n_mean, c.sim.tail_tolerance);
  t.info = {{"l_max", std::to_string(w.l_max)}, {"tail_mass", format_value(w.tail_mass)}};
  return t;
}

inline DiracState initial(const ScenarioConfig& c, Representation rep) {
  SimConfig s = c.sim;
  s.representation = rep;
  return initial_state(s);
}

}  // namespace detail

/// Spin, angular momentum, norm and energy-sector weights along the time grid.
inline Table run_spins(const ScenarioConfig& c) {
  Table t = detail::make_table("spins", c);
  const double omega = c.sim.omega();
  const double tau = collapse_time(c.sim.n_mean);
  t.info.push_back({"omega", format_value(omega)});
  t.info.push_back({"nonrel_period", format_value(2.0 * std::numbers::pi / omega)});
  t.info.push_back({"collapse_time_over_omega", format_value(tau)});
  t.info.push_back({"collapse_time", format_value(tau / omega)});
  t.columns = {"t", "t_omega", "sigma_x", "sigma_y", "sigma_z", "L_z",
               "J_z", "norm", "pos_weight", "neg_weight"};

  const auto times = c.sim.time_grid();
  const auto records = observe_series(detail::initial(c, c.sim.representation), times);
  for (const auto& rec : records)
    t.rows.push_back({rec.t, rec.t * omega, rec.sigma.x, rec.sigma.y, rec.sigma.z, rec.weights.l_z,
                      rec.weights.j_z, rec.weights.norm, rec.weights.positive_weight,
                      rec.weights.negative_weight});
  return t;
}

/// Spin components in all three representations on one time grid.
inline Table run_compare_representations(const ScenarioConfig& c) {
  Table t = detail::make_table("compare-representations", c);
  const double omega = c.sim.omega();
  t.columns = {"t", "t_omega"};
  const Representation reps[] = {Representation::dirac, Representation::foldy_wouthuysen,
                                 Representation::nonrelativistic};
  const auto times = c.sim.time_grid();
  std::vector<std::vector<ObservableRecord>> series;
  for (auto rep : reps) {
    const std::string tag(to_string(rep));
    for (const char* q : {"sigma_x_", "sigma_y_", "sigma_z_", "L_z_"}) t.columns.push_back(q + tag);
    series.push_back(observe_series(detail::initial(c, rep), times));
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row{times[i], times[i] * omega};
    for (const auto& s : series) {
      row.push_back(s[i].sigma.x);
      row.push_back(s[i].sigma.y);
      row.push_back(s[i].sigma.z);
      row.push_back(s[i].weights.l_z);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline void require_sector_support(const ScenarioConfig& c) {
  for (const auto& k : c.kinds)
    if (k.is_sector() && c.sim.representation != Representation::dirac)
      throw usage_error("density kind '" + k.name() + "' needs representation = dirac");
}

/// One density map per (time, kind): rows theta, phi, value.
inline std::vector<std::pair<std::string, Table>> run_density(const ScenarioConfig& c) {
  require_sector_support(c);
  const DiracState s0 = detail::initial(c, c.sim.representation);
  const double radius = c.sim.density_radius();
  const auto thetas = theta_grid(c.sim.theta_points);
  const auto phis = phi_grid(c.sim.phi_points);

  std::vector<std::pair<std::string, Table>> out;
  for (std::size_t it = 0; it < c.times.size(); ++it) {
    const DiracState st = evolve(s0, c.times[it]);
    for (const auto& kind : c.kinds) {
      Table t = detail::make_table("density", c);
      t.info.push_back({"time", format_value(c.times[it])});
      t.info.push_back({"radius", format_value(radius)});
      t.info.push_back({"kind", kind.name()});
      t.columns = {"theta", "phi", "value"};
      const auto map = density_map(st, radius, kind, thetas, phis);
      for (std::size_t i = 0; i < thetas.size(); ++i)
        for (std::size_t j = 0; j < phis.size(); ++j) t.rows.push_back({thetas[i], phis[j], map.at(i, j)});
      out.emplace_back("t" + std::to_string(it) + "_" + kind.name(), std::move(t));
    }
  }
  return out;
}

/// phi profiles at profile_theta of the total density, each bispinor row
/// and (Dirac only) the positive/negative energy parts.
inline Table run_decompose(const ScenarioConfig& c) {
  Table t = detail::make_table("decompose", c);
  const bool dirac = c.sim.representation == Representation::dirac;
  const double radius = c.sim.density_radius();
  t.info.push_back({"radius", format_value(radius)});
  t.columns = {"t", "phi", "total", "c1", "c2", "c3", "c4"};
  std::vector<DensityKind> kinds{DensityKind::total(), DensityKind::row(1), DensityKind::row(2),
                                 DensityKind::row(3), DensityKind::row(4)};
  if (dirac) {
    t.columns.push_back("positive");
    t.columns.push_back("negative");
    kinds.push_back(DensityKind::positive());
    kinds.push_back(DensityKind::negative());
  }
  const DiracState s0 = detail::initial(c, c.sim.representation);
  const auto phis = phi_grid(c.sim.phi_points);
  for (double time : c.times) {
    const DiracState st = evolve(s0, time);
    std::vector<std::vector<double>> prof;
    for (const auto& k : kinds) prof.push_back(phi_profile(st, radius, k, phis, c.profile_theta));
    for (std::size_t j = 0; j < phis.size(); ++j) {
      std::vector<double> row{time, phis[j]};
      for (const auto& p : prof) row.push_back(p[j]);
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

inline constexpr double oracle_tolerance = 1e-8;

struct OracleReport {
  Table table;
  double max_deviation = 0.0;
  bool passed() const { return max_deviation <= oracle_tolerance; }
};

/// Closed-form vs block-matrix propagation at the configured times.
inline OracleReport run_oracle_check(const ScenarioConfig& c) {
  OracleReport rep;
  rep.table = detail::make_table("oracle-check", c);
  rep.table.info.push_back({"tolerance", format_value(oracle_tolerance)});
  rep.table.columns = {"t", "max_deviation"};
  const DiracState s0 = detail::initial(c, c.sim.representation);
  if (s0.l_max() > c.basis_cap)
    throw truncation_error("basis_cap " + std::to_string(c.basis_cap) + " below packet l_max " +
                           std::to_string(s0.l_max()));
  const auto& times = c.times;
  const auto dev = parallel_map(times.size(), [&](std::size_t i) {
    return max_abs_difference(evolve(s0, times[i]), oracle_evolve(s0, times[i], c.basis_cap));
  });
  for (std::size_t i = 0; i < times.size(); ++i) {
    rep.table.rows.push_back({times[i], dev[i]});
    rep.max_deviation = std::max(rep.max_deviation, dev[i]);
  }
  rep.table.info.push_back({"max_deviation", format_value(rep.max_deviation)});
  return rep;
}

}  // namespace dosc::cli
