#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dosc/errors.hpp"

namespace dosc {

enum class Representation { dirac, foldy_wouthuysen, nonrelativistic };

inline std::string_view to_string(Representation rep) {
  switch (rep) {
    case Representation::dirac: return "dirac";
    case Representation::foldy_wouthuysen: return "fw";
    case Representation::nonrelativistic: return "nonrel";
  }
  return "?";
}

inline Representation parse_representation(std::string_view s) {
  if (s == "dirac" || s == "Dirac") return Representation::dirac;
  if (s == "fw" || s == "FW" || s == "foldy-wouthuysen") return Representation::foldy_wouthuysen;
  if (s == "nonrel" || s == "NonRel" || s == "nonrelativistic") return Representation::nonrelativistic;
  throw domain_error("unknown representation '" + std::string(s) + "'");
}

/// Spinor (alpha, beta) pointing along the Bloch-sphere direction (theta, phi).
inline std::pair<std::complex<double>, std::complex<double>> spin_from_bloch(double theta,
                                                                             double phi) {
  return {std::complex<double>(std::cos(0.5 * theta), 0.0),
          std::polar(std::sin(0.5 * theta), phi)};
}

/// Physical and numerical parameters of one simulation.
struct SimConfig {
  double n_mean = 20.0;  // mean angular momentum N
  double r = 0.5;        // hbar omega / m c^2
  std::complex<double> alpha{std::numbers::sqrt2 / 2.0, 0.0};
  std::complex<double> beta{std::numbers::sqrt2 / 2.0, 0.0};
  Representation representation = Representation::dirac;
  double tail_tolerance = 1e-12;

  double t_start = 0.0;
  double t_end = 10.0;
  int t_steps = 101;

  int theta_points = 181;
  int phi_points = 361;
  std::optional<double> radius;  // oscillator lengths; defaults to sqrt(N)

  double omega() const { return r; }
  double density_radius() const { return radius.value_or(std::sqrt(n_mean)); }

  /// t_steps points from t_start to t_end inclusive.
  std::vector<double> time_grid() const {
    std::vector<double> ts;
    if (t_steps <= 0) return ts;
    ts.reserve(static_cast<std::size_t>(t_steps));
    if (t_steps == 1) {
      ts.push_back(t_start);
      return ts;
    }
    const double dt = (t_end - t_start) / (t_steps - 1);
    for (int i = 0; i < t_steps; ++i) ts.push_back(t_start + i * dt);
    ts.back() = t_end;
    return ts;
  }

  /// Rescale (alpha, beta) to unit norm. Already-normalized input is left
  /// bit-for-bit unchanged so that echoed configs reproduce a run exactly.
  void normalize_spin() {
    const double n2 = std::norm(alpha) + std::norm(beta);
    if (!(n2 > 0.0)) throw domain_error("spin amplitudes are both zero");
    if (std::abs(n2 - 1.0) > 1e-14) {
      const double s = 1.0 / std::sqrt(n2);
      alpha *= s;
      beta *= s;
    }
  }

  void validate() const {
    if (!(n_mean > 0.0)) throw domain_error("N must be positive");
    if (!(r > 0.0)) throw domain_error("r must be positive");
    if (std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > 1e-12)
      throw domain_error("|alpha|^2 + |beta|^2 must equal 1");
    if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0))
      throw domain_error("tail_tolerance must lie in (0, 1)");
    if (t_steps < 1) throw domain_error("t_steps must be at least 1");
    if (theta_points < 2 || phi_points < 1) throw domain_error("density grid too small");
    if (radius && !(*radius > 0.0)) throw domain_error("radius must be positive");
  }
};

}  // namespace dosc
