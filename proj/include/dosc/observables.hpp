#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dosc/errors.hpp"
#include "dosc/evolution.hpp"
#include "dosc/parallel.hpp"
#include "dosc/spectrum.hpp"
#include "dosc/state.hpp"
#include "dosc/wavepacket.hpp"

namespace dosc {

struct SpinVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Pauli averages read off the amplitudes. Only rows 1 and 2 on the same
/// orbital ket |l, l, l> interfere; c1_mlm1 has no spin-down partner with
/// m_l = l - 1 and row 4 is empty, so they contribute to sigma_z only.
inline SpinVector spin_from_state(const DiracState& state) {
  complex cross{};
  double z = 0.0;
  for (const auto& s : state.sectors) {
    cross += std::conj(s.c1_ml) * s.c2_ml;
    z += std::norm(s.c1_ml) + std::norm(s.c1_mlm1) - std::norm(s.c2_ml) + std::norm(s.c3);
  }
  return {2.0 * cross.real(), 2.0 * cross.imag(), z};
}

struct Weights {
  double norm = 0.0;
  double l_z = 0.0;
  double j_z = 0.0;
  std::array<double, 4> component_weights{};
  double positive_weight = 0.0;
  double negative_weight = 0.0;
};

inline Weights weights(const DiracState& state) {
  Weights w;
  double s_z = 0.0;
  for (const auto& s : state.sectors) {
    const double n1a = std::norm(s.c1_ml), n1b = std::norm(s.c1_mlm1);
    const double n2 = std::norm(s.c2_ml), n3 = std::norm(s.c3);
    w.component_weights[0] += n1a + n1b;
    w.component_weights[1] += n2;
    w.component_weights[2] += n3;
    w.l_z += s.l * (n1a + n2) + (s.l - 1) * (n1b + n3);
    s_z += 0.5 * (n1a + n1b - n2 + n3);
  }
  w.norm = state.norm();
  w.j_z = w.l_z + s_z;
  if (state.representation == Representation::dirac) {
    for (const auto& p : project_energy_sectors(state)) {
      w.positive_weight += p.positive_part.norm();
      w.negative_weight += p.negative_part.norm();
    }
  } else {
    // Upper-only representations carry positive energies exclusively.
    w.positive_weight = w.norm;
  }
  return w;
}

struct ObservableRecord {
  double t = 0.0;
  SpinVector sigma;
  Weights weights;
};

inline ObservableRecord observe(const DiracState& state) {
  return {state.time, spin_from_state(state), weights(state)};
}

/// Observables along `times`, evaluated in parallel and returned in order.
inline std::vector<ObservableRecord> observe_series(const DiracState& state0,
                                                    const std::vector<double>& times) {
  return parallel_map(times.size(), [&](std::size_t i) { return observe(evolve(state0, times[i])); });
}

// ---------------------------------------------------------------------------
// Closed-form spin series for an x-polarized packet (alpha = beta = 1/sqrt 2).

namespace detail {

inline WeightTable require_x_polarized(const SimConfig& config) {
  const double h = std::numbers::sqrt2 / 2.0;
  if (std::abs(config.alpha - complex{h, 0.0}) > 1e-12 ||
      std::abs(config.beta - complex{h, 0.0}) > 1e-12)
    throw contract_error("closed-form spin series need alpha = beta = 1/sqrt(2)");
  return coherent_weights(config.n_mean, config.tail_tolerance);
}

}  // namespace detail

struct ClosedFormSpin {
  double sigma_x = 0.0;
  double sigma_y = 0.0;
  double sigma_z = 0.0;
};

/// The three published series term by term, including their misprints: the
/// sigma_y series lacks the factor l and the sign of its slow term, and the
/// sigma_z series carries a spurious overall 1/(2l+1) (it does not vanish at
/// t = 0). See spin_series_from_amplitudes for the consistent forms.
inline ClosedFormSpin spin_closed_form(const SimConfig& config, double t) {
  const WeightTable w = detail::require_x_polarized(config);
  ClosedFormSpin out;
  for (int l = 0; l <= w.l_max; ++l) {
    const double lam2 = w.lambdas[static_cast<std::size_t>(l)] * w.lambdas[static_cast<std::size_t>(l)];
    const auto c = spectral_coefficients(l, config.r);
    const double eps = c.omega_0 / c.omega_l;
    const double slow = c.splitting() * t;          // (omega_l - omega_0) t
    const double fast = (c.omega_l + c.omega_0) * t;
    const double d = 2.0 * l + 1.0, d2 = d * d;

    out.sigma_x += lam2 / d * (1.0 + l * (1.0 + eps) * std::cos(slow) + l * (1.0 - eps) * std::cos(fast));
    out.sigma_y += lam2 / d * ((1.0 + eps) * std::sin(slow) + (1.0 - eps) * std::sin(fast));
    out.sigma_z += lam2 / d *
                   (0.5 + (4.0 * l - 1.0) / (2.0 * d2) - eps * eps * 2.0 * l * l / (2.0 * d2) -
                    2.0 * l / d2 * (1.0 + eps) * std::cos(-slow) -
                    2.0 * l / d2 * (1.0 - eps) * std::cos(fast) -
                    2.0 * l * l / d2 * (1.0 - eps * eps) * std::cos(2.0 * c.omega_l * t));
  }
  return out;
}

/// Spin series obtained by expanding the Dirac amplitudes directly. Same
/// frequencies as the published ones; sigma_y gains the factor l and the
/// slow term's sign, sigma_z loses the overall 1/(2l+1) and its constant
/// eps^2 term doubles.
inline ClosedFormSpin spin_series_from_amplitudes(const SimConfig& config, double t) {
  const WeightTable w = detail::require_x_polarized(config);
  ClosedFormSpin out;
  for (int l = 0; l <= w.l_max; ++l) {
    const double lam2 = w.lambdas[static_cast<std::size_t>(l)] * w.lambdas[static_cast<std::size_t>(l)];
    const auto c = spectral_coefficients(l, config.r);
    const double eps = c.omega_0 / c.omega_l;
    const double slow = c.splitting() * t;
    const double fast = (c.omega_l + c.omega_0) * t;
    const double d = 2.0 * l + 1.0, d2 = d * d;

    out.sigma_x += lam2 / d * (1.0 + l * (1.0 + eps) * std::cos(slow) + l * (1.0 - eps) * std::cos(fast));
    out.sigma_y += lam2 * l / d * (-(1.0 + eps) * std::sin(slow) + (1.0 - eps) * std::sin(fast));
    out.sigma_z += lam2 * (0.5 + (4.0 * l - 1.0) / (2.0 * d2) - eps * eps * 2.0 * l * l / d2 -
                           2.0 * l / d2 * (1.0 + eps) * std::cos(slow) -
                           2.0 * l / d2 * (1.0 - eps) * std::cos(fast) -
                           2.0 * l * l / d2 * (1.0 - eps * eps) * std::cos(2.0 * c.omega_l * t));
  }
  return out;
}

/// Value of the published sigma_z series at t = 0:
/// sum_l lambda_l^2 l^2 (omega_0/omega_l)^2 / (2l+1)^3.
inline double sigma_z_closed_form_offset(double n_mean, double r, double tail_tolerance = 1e-12) {
  const WeightTable w = coherent_weights(n_mean, tail_tolerance);
  double s = 0.0;
  for (int l = 0; l <= w.l_max; ++l) {
    const double lam2 = w.lambdas[static_cast<std::size_t>(l)] * w.lambdas[static_cast<std::size_t>(l)];
    const double eps = 1.0 / spectral_coefficients(l, r).omega_l;
    const double d = 2.0 * l + 1.0;
    s += lam2 * l * l * eps * eps / (d * d * d);
  }
  return s;
}

/// Coefficients multiplying cos/sin of (omega_l - omega_0) t and
/// (omega_l + omega_0) t in the per-sector sigma_x and sigma_y series.
struct SpinSeriesTerms {
  double x_slow = 0.0, x_fast = 0.0;
  double y_slow = 0.0, y_fast = 0.0;
};

inline SpinSeriesTerms spin_series_terms(int l, double r, bool as_published) {
  const double eps = 1.0 / spectral_coefficients(l, r).omega_l;
  const double d = 2.0 * l + 1.0;
  SpinSeriesTerms t;
  t.x_slow = l * (1.0 + eps) / d;
  t.x_fast = l * (1.0 - eps) / d;
  if (as_published) {
    t.y_slow = (1.0 + eps) / d;
    t.y_fast = (1.0 - eps) / d;
  } else {
    t.y_slow = -l * (1.0 + eps) / d;
    t.y_fast = l * (1.0 - eps) / d;
  }
  return t;
}

/// Power of a uniformly sampled series (mean removed, Hann window) at DFT
/// angular frequencies >= `min_angular_frequency`, as a fraction of the total.
inline double band_power_fraction(const std::vector<double>& samples, double dt,
                                  double min_angular_frequency) {
  const std::size_t n = samples.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = (samples[i] - mean) * std::pow(std::sin(std::numbers::pi * static_cast<double>(i) / n), 2);
  double total = 0.0, band = 0.0;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    complex acc{};
    for (std::size_t i = 0; i < n; ++i)
      acc += x[i] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * i % n) / n);
    const double p = std::norm(acc);
    total += p;
    if (2.0 * std::numbers::pi * static_cast<double>(k) / (static_cast<double>(n) * dt) >= min_angular_frequency)
      band += p;
  }
  return total > 0.0 ? band / total : 0.0;
}

/// Collapse time pi / (2 sqrt(2N)) in units of 1/omega.
inline double collapse_time(double n_mean) {
  if (!(n_mean > 0.0)) throw domain_error("N must be positive");
  return std::numbers::pi / (2.0 * std::sqrt(2.0 * n_mean));
}

}  // namespace dosc
