#pragma once

// Circular coherent wave packet: a Poisson superposition of the stretched
// oscillator states |n=l, l, m_l=l> times a fixed two-component spinor.

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "dosc/errors.hpp"
#include "dosc/sim_config.hpp"
#include "dosc/state.hpp"

namespace dosc {

inline constexpr int max_partial_wave = 512;

struct WeightTable {
  std::vector<double> lambdas;  // lambda_l for l = 0..l_max, sign (-1)^l
  int l_max = 0;
  double tail_mass = 0.0;       // sum of lambda_l^2 over l > l_max
};

inline WeightTable coherent_weights(double n_mean, double tail_tolerance) {
  if (!(n_mean > 0.0)) throw domain_error("N must be positive");
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0))
    throw domain_error("tail tolerance must lie in (0, 1)");

  // Poisson probabilities far enough past the cap that the remaining tail
  // is below double precision relative to any tolerance we accept.
  const int top = max_partial_wave + 256 + static_cast<int>(4.0 * n_mean);
  std::vector<double> prob(static_cast<std::size_t>(top) + 1);
  const double log_n = std::log(n_mean);
  for (int l = 0; l <= top; ++l)
    prob[static_cast<std::size_t>(l)] = std::exp(-n_mean + l * log_n - std::lgamma(l + 1.0));

  // suffix[l] = sum_{k >= l} prob[k], accumulated small-to-large.
  std::vector<double> suffix(prob.size() + 1, 0.0);
  for (int l = top; l >= 0; --l)
    suffix[static_cast<std::size_t>(l)] =
        suffix[static_cast<std::size_t>(l) + 1] + prob[static_cast<std::size_t>(l)];

  int l_max = -1;
  for (int l = 0; l <= max_partial_wave; ++l) {
    if (suffix[static_cast<std::size_t>(l) + 1] < tail_tolerance) {
      l_max = l;
      break;
    }
  }
  if (l_max < 0)
    throw truncation_error("Poisson tail above " + std::to_string(tail_tolerance) +
                           " at l = " + std::to_string(max_partial_wave));

  WeightTable w;
  w.l_max = l_max;
  w.tail_mass = suffix[static_cast<std::size_t>(l_max) + 1];
  w.lambdas.resize(static_cast<std::size_t>(l_max) + 1);
  for (int l = 0; l <= l_max; ++l) {
    const double mag = std::exp(0.5 * (-n_mean + l * log_n - std::lgamma(l + 1.0)));
    w.lambdas[static_cast<std::size_t>(l)] = (l % 2 == 0) ? mag : -mag;
  }
  return w;
}

/// Packet at t = 0: alpha * lambda_l on row 1 and beta * lambda_l on row 2,
/// both on |l, l, l>.
inline DiracState initial_state(const SimConfig& config) {
  config.validate();
  const WeightTable w = coherent_weights(config.n_mean, config.tail_tolerance);
  DiracState s;
  s.representation = config.representation;
  s.time = 0.0;
  s.config = std::make_shared<const SimConfig>(config);
  s.sectors.reserve(w.lambdas.size());
  for (int l = 0; l <= w.l_max; ++l) {
    const double lam = w.lambdas[static_cast<std::size_t>(l)];
    SectorState sec;
    sec.l = l;
    sec.c1_ml = config.alpha * lam;
    sec.c2_ml = config.beta * lam;
    s.sectors.push_back(sec);
  }
  return s;
}

struct Centroid {
  double x0 = 0.0;  // initial distance from the origin along x
  double p0 = 0.0;  // initial momentum along y
};

inline Centroid centroid_parameters(const SimConfig& config) {
  if (!(config.n_mean > 0.0) || !(config.r > 0.0))
    throw domain_error("N and r must be positive");
  return {std::sqrt(config.n_mean / config.r), std::sqrt(config.n_mean * config.r)};
}

}  // namespace dosc
