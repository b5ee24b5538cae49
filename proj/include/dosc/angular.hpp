#pragma once

// Angular-momentum algebra for the stretched kets that a circular wave packet
// populates: spin-orbit recoupling of |l, m_l = l> (x) spin-down, the +-i phase
// between large and small components, and the m = l, l - 1 spherical
// harmonics and node-free radial functions evaluated in log space.

#include <cmath>
#include <complex>
#include <numbers>

#include "dosc/errors.hpp"

namespace dosc {

using complex = std::complex<double>;

/// Amplitudes of |l, m_l = l> (x) spin-down on |l, j = l +- 1/2, m_j = l - 1/2>.
struct SpinOrbitSplit {
  double c_plus = 1.0;
  double c_minus = 0.0;
};

inline SpinOrbitSplit spin_orbit_split(int l) {
  if (l < 0) throw domain_error("l must be non-negative");
  const double d = 2.0 * l + 1.0;
  return {1.0 / std::sqrt(d), std::sqrt(2.0 * l / d)};
}

/// Phase linking the lower-component ket |l' j m> to the upper |l j m>.
inline complex sgn_phase(int l, int l_prime, int twice_j) {
  if (l_prime == l + 1 && 2 * l_prime == twice_j + 1) return {0.0, -1.0};
  if (l_prime == l - 1 && l_prime >= 0 && 2 * l_prime == twice_j - 1)
    return {0.0, 1.0};
  throw domain_error("inconsistent (l, l', j) for sgn phase");
}

/// theta-dependent part of Y_l^m for m in {l, l-1}, Condon-Shortley phase
/// included, so that Y_l^m = stretched_harmonic_theta * exp(i m phi).
inline double stretched_harmonic_theta(int l, int m, double theta) {
  if (l < 0) throw domain_error("l must be non-negative");
  if (m != l && m != l - 1)
    throw unsupported_order_error("only m = l and m = l - 1 are supported");
  if (m < 0) throw unsupported_order_error("Y_0^{-1} does not exist");

  constexpr double log_4pi = 2.5310242469692907;  // log(4 pi)
  constexpr double ln2 = std::numbers::ln2;
  const double sin_t = std::sin(theta);

  // |P_l^l| = (2l-1)!! sin^l and |P_l^{l-1}| = (2l-1)!! cos sin^{l-1};
  // (2l-1)!! = (2l)! / (2^l l!).
  double log_norm = std::lgamma(2.0 * l + 1.0) - l * ln2 - std::lgamma(l + 1.0);
  double poly = 1.0;
  if (m == l) {
    log_norm += 0.5 * (std::log(2.0 * l + 1.0) - log_4pi - std::lgamma(2.0 * l + 1.0));
  } else {
    log_norm += 0.5 * (std::log(2.0 * l + 1.0) - log_4pi - std::lgamma(2.0 * l));
    poly = std::cos(theta);
  }

  double mag;
  if (m == 0) {
    mag = std::exp(log_norm);
  } else if (sin_t <= 0.0) {
    return 0.0;
  } else {
    mag = std::exp(log_norm + m * std::log(sin_t));
  }
  const double cs = (m % 2 == 0) ? 1.0 : -1.0;
  return cs * mag * poly;
}

inline complex stretched_harmonic(int l, int m, double theta, double phi) {
  return stretched_harmonic_theta(l, m, theta) * std::polar(1.0, m * phi);
}

/// Radial function of the n = l oscillator shell in units of the oscillator
/// length, normalized so that int R_l(u)^2 u^2 du = 1.
inline double radial_node_free(int l, double u) {
  if (l < 0) throw domain_error("l must be non-negative");
  if (u < 0.0) throw domain_error("u must be non-negative");
  const double log_norm = 0.5 * (std::numbers::ln2 - std::lgamma(l + 1.5));
  if (u == 0.0) return l == 0 ? std::exp(log_norm) : 0.0;
  return std::exp(log_norm + l * std::log(u) - 0.5 * u * u);
}

}  // namespace dosc
