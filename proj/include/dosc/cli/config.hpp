#pragma once

// Flat key = value configuration for scenario runs. Output files echo the
// resolved configuration as "# config key = value" lines, which this parser
// reads back, so any output file is also a valid config file.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <sstream>
#include <string>
#include <vector>

#include "dosc/density.hpp"
#include "dosc/errors.hpp"
#include "dosc/sim_config.hpp"

namespace dosc::cli {

/// Bad user input: unknown key, unparsable value, inconsistent request.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  SimConfig sim;
  int basis_cap = 25;
  std::vector<double> times{0.0, 10.0};  // snapshots for density / decompose
  std::vector<DensityKind> kinds{DensityKind::total()};
  double profile_theta = std::numbers::pi / 2.0;
  std::optional<double> spin_theta;  // Bloch angles, override alpha/beta
  std::optional<double> spin_phi;
};

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "N",          "r",          "alpha_re",      "alpha_im",   "beta_re",
      "beta_im",    "representation", "t_start",  "t_end",      "t_steps",
      "tail_tolerance", "theta_points", "phi_points", "radius",   "basis_cap",
      "times",      "kinds",      "profile_theta", "spin_theta", "spin_phi"};
  return keys;
}

/// %.17g: shortest fixed format that round-trips every double.
inline std::string format_exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw usage_error("key '" + key + "': cannot parse '" + v + "' as a number");
  }
  if (pos != v.size()) throw usage_error("key '" + key + "': trailing characters in '" + v + "'");
  return x;
}

inline int parse_int(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 1e9) throw usage_error("key '" + key + "' must be an integer");
  return static_cast<int>(x);
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace detail

/// Apply one key = value setting.
inline void apply_setting(ScenarioConfig& c, const std::string& key, const std::string& raw) {
  using detail::parse_double;
  using detail::parse_int;
  const std::string v = detail::trim(raw);
  SimConfig& s = c.sim;
  try {
    if (key == "N") s.n_mean = parse_double(key, v);
    else if (key == "r") s.r = parse_double(key, v);
    else if (key == "alpha_re") s.alpha.real(parse_double(key, v));
    else if (key == "alpha_im") s.alpha.imag(parse_double(key, v));
    else if (key == "beta_re") s.beta.real(parse_double(key, v));
    else if (key == "beta_im") s.beta.imag(parse_double(key, v));
    else if (key == "representation") s.representation = parse_representation(v);
    else if (key == "t_start") s.t_start = parse_double(key, v);
    else if (key == "t_end") s.t_end = parse_double(key, v);
    else if (key == "t_steps") s.t_steps = parse_int(key, v);
    else if (key == "tail_tolerance") s.tail_tolerance = parse_double(key, v);
    else if (key == "theta_points") s.theta_points = parse_int(key, v);
    else if (key == "phi_points") s.phi_points = parse_int(key, v);
    else if (key == "radius") {
      if (v == "auto" || v.empty()) s.radius.reset();
      else s.radius = parse_double(key, v);
    } else if (key == "basis_cap") c.basis_cap = parse_int(key, v);
    else if (key == "times") {
      c.times.clear();
      for (const auto& item : detail::split_list(v)) c.times.push_back(parse_double(key, item));
    } else if (key == "kinds") {
      c.kinds.clear();
      for (const auto& item : detail::split_list(v)) c.kinds.push_back(DensityKind::parse(item));
    } else if (key == "profile_theta") c.profile_theta = parse_double(key, v);
    else if (key == "spin_theta") c.spin_theta = parse_double(key, v);
    else if (key == "spin_phi") c.spin_phi = parse_double(key, v);
    else throw usage_error("unknown config key '" + key + "'");
  } catch (const domain_error& e) {
    throw usage_error("key '" + key + "': " + e.what());
  }
}

/// Parse config text. Accepted lines: "key = value", "# config key = value"
/// (echo from an output file), comments starting with '#', blank lines. In
/// an echoed output file the first data line ends the header.
inline void parse_config(ScenarioConfig& c, std::istream& in) {
  static const std::string echo = "# config ";
  std::string line;
  bool seen_echo = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body;
    if (line.rfind(echo, 0) == 0) {
      body = line.substr(echo.size());
      seen_echo = true;
    } else {
      const std::string t = detail::trim(line);
      if (t.empty() || t[0] == '#') continue;
      body = t;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      if (seen_echo) break;
      throw usage_error("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(c, detail::trim(body.substr(0, eq)), body.substr(eq + 1));
  }
}

inline void load_config_file(ScenarioConfig& c, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw usage_error("cannot open config file '" + path + "'");
  parse_config(c, f);
}

/// Fold Bloch angles into (alpha, beta), normalize, validate.
inline void resolve(ScenarioConfig& c) {
  if (c.spin_theta || c.spin_phi) {
    std::tie(c.sim.alpha, c.sim.beta) = spin_from_bloch(c.spin_theta.value_or(0.0), c.spin_phi.value_or(0.0));
    c.spin_theta.reset();
    c.spin_phi.reset();
  }
  try {
    c.sim.normalize_spin();
    c.sim.validate();
  } catch (const domain_error& e) {
    throw usage_error(e.what());
  }
  if (c.basis_cap < 0) throw usage_error("basis_cap must be non-negative");
  if (c.kinds.empty()) throw usage_error("at least one density kind is required");
}

/// Resolved configuration as ordered key/value pairs.
inline std::vector<std::pair<std::string, std::string>> echo_config(const ScenarioConfig& c) {
  const SimConfig& s = c.sim;
  std::string times, kinds;
  for (std::size_t i = 0; i < c.times.size(); ++i) times += (i ? "," : "") + format_exact(c.times[i]);
  for (std::size_t i = 0; i < c.kinds.size(); ++i) kinds += (i ? "," : "") + c.kinds[i].name();
  return {
      {"N", format_exact(s.n_mean)},
      {"r", format_exact(s.r)},
      {"alpha_re", format_exact(s.alpha.real())},
      {"alpha_im", format_exact(s.alpha.imag())},
      {"beta_re", format_exact(s.beta.real())},
      {"beta_im", format_exact(s.beta.imag())},
      {"representation", std::string(to_string(s.representation))},
      {"t_start", format_exact(s.t_start)},
      {"t_end", format_exact(s.t_end)},
      {"t_steps", std::to_string(s.t_steps)},
      {"tail_tolerance", format_exact(s.tail_tolerance)},
      {"theta_points", std::to_string(s.theta_points)},
      {"phi_points", std::to_string(s.phi_points)},
      {"radius", s.radius ? format_exact(*s.radius) : "auto"},
      {"basis_cap", std::to_string(c.basis_cap)},
      {"times", times},
      {"kinds", kinds},
      {"profile_theta", format_exact(c.profile_theta)},
  };
}

}  // namespace dosc::cli
