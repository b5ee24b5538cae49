#pragma once

// Closed-form propagation of the circular packet. Every sector evolves
// independently: the spin-up ket and the j = l + 1/2 part of the spin-down
// ket are eigenstates with energy E+, while the j = l - 1/2 part mixes with
// the lower component |l-1, l-1, l-1> in the Dirac representation.

#include <cmath>
#include <complex>
#include <vector>

#include "dosc/angular.hpp"
#include "dosc/errors.hpp"
#include "dosc/spectrum.hpp"
#include "dosc/state.hpp"

namespace dosc {

namespace detail {

// Propagators for one sector: `plus` on the j = l + 1/2 kets, `minus_upper`
// and `minus_lower` for the upper/lower amplitudes grown from a unit j - 1/2
// upper amplitude.
struct SectorPropagator {
  complex plus;
  complex minus_upper;
  complex minus_lower;
};

inline void require_initial(const DiracState& s, Representation rep) {
  if (s.representation != rep)
    throw contract_error("state is in the " + std::string(to_string(s.representation)) +
                         " representation, expected " + std::string(to_string(rep)));
  for (const auto& sec : s.sectors)
    if (sec.c1_mlm1 != complex{} || sec.c3 != complex{})
      throw contract_error("closed-form evolution starts from an initial packet");
}

inline SectorState propagate_sector(const SectorState& s0, const SectorPropagator& p) {
  const int l = s0.l;
  const complex up = s0.c1_ml;    // alpha lambda_l
  const complex down = s0.c2_ml;  // beta lambda_l
  const double d = 2.0 * l + 1.0;

  SectorState s;
  s.l = l;
  s.c1_ml = up * p.plus;
  s.c1_mlm1 = down * std::sqrt(2.0 * l) * (p.plus - p.minus_upper) / d;
  s.c2_ml = down * (p.plus + 2.0 * l * p.minus_upper) / d;
  s.c3 = l == 0 ? complex{} : down * std::sqrt(2.0 * l * d) * p.minus_lower / d;
  return s;
}

template <class PropagatorFn>
DiracState propagate(const DiracState& state0, double t, PropagatorFn&& fn) {
  DiracState s;
  s.representation = state0.representation;
  s.time = t;
  s.config = state0.config;
  s.sectors.reserve(state0.sectors.size());
  for (const auto& sec : state0.sectors) s.sectors.push_back(propagate_sector(sec, fn(sec.l)));
  return s;
}

inline double require_r(const DiracState& s) {
  if (!s.config) throw contract_error("state carries no configuration");
  return s.config->r;
}

}  // namespace detail

/// The j - 1/2 upper amplitude in the Dirac representation:
/// cos(w t) - i (w0 / w) sin(w t).
inline complex dirac_mixing_factor(const SpectralCoefficients& c, double t) {
  return {std::cos(c.omega_l * t), -(c.omega_0 / c.omega_l) * std::sin(c.omega_l * t)};
}

inline DiracState evolve_dirac(const DiracState& state0, double t) {
  detail::require_initial(state0, Representation::dirac);
  const double r = detail::require_r(state0);
  const complex e_plus = std::polar(1.0, -rest_frequency * t);
  return detail::propagate(state0, t, [&](int l) {
    const auto c = spectral_coefficients(l, r);
    const complex lower =
        l == 0 ? complex{} : sgn_phase(l, l - 1, 2 * l - 1) * (c.a_l * std::sin(c.omega_l * t));
    return detail::SectorPropagator{e_plus, dirac_mixing_factor(c, t), lower};
  });
}

/// Foldy-Wouthuysen representation: relativistic energies, no lower
/// components, so the j - 1/2 ket only picks up exp(-i omega_l t).
inline DiracState evolve_fw(const DiracState& state0, double t) {
  detail::require_initial(state0, Representation::foldy_wouthuysen);
  const double r = detail::require_r(state0);
  const complex e_plus = std::polar(1.0, -rest_frequency * t);
  return detail::propagate(state0, t, [&](int l) {
    const auto c = spectral_coefficients(l, r);
    return detail::SectorPropagator{e_plus, std::polar(1.0, -c.omega_l * t), complex{}};
  });
}

/// Nonrelativistic limit: E+ = 0 and E- = omega (2l + 1).
inline DiracState evolve_nonrel(const DiracState& state0, double t) {
  detail::require_initial(state0, Representation::nonrelativistic);
  const double r = detail::require_r(state0);
  return detail::propagate(state0, t, [&](int l) {
    const double e_minus = r * (2.0 * l + 1.0);
    return detail::SectorPropagator{complex{1.0, 0.0}, std::polar(1.0, -e_minus * t), complex{}};
  });
}

inline DiracState evolve(const DiracState& state0, double t) {
  switch (state0.representation) {
    case Representation::dirac: return evolve_dirac(state0, t);
    case Representation::foldy_wouthuysen: return evolve_fw(state0, t);
    case Representation::nonrelativistic: return evolve_nonrel(state0, t);
  }
  throw contract_error("unknown representation");
}

/// Energy eigenvectors of the j - 1/2 block {upper |l j m>, lower |l-1 j m>}.
/// Lower kets are phased so that the evolved small component carries the
/// sgn factor (+i); in that convention the positive-energy eigenvector's
/// lower entry is i * sgn * q = -q.
struct EnergyEigenbasis {
  double energy = 1.0;
  complex positive_upper, positive_lower;
  complex negative_upper, negative_lower;
};

inline EnergyEigenbasis energy_eigenbasis(int l, double r) {
  if (l < 1) throw domain_error("the j = l - 1/2 block needs l >= 1");
  const double e = spectral_coefficients(l, r).e_minus;
  const double p = std::sqrt((e + 1.0) / (2.0 * e));
  const double q = std::sqrt((e - 1.0) / (2.0 * e));
  const complex kappa = complex{0.0, 1.0} * sgn_phase(l, l - 1, 2 * l - 1);
  return {e, p, kappa * q, q, -kappa * p};
}

struct SectorProjection {
  SectorState positive_part;
  SectorState negative_part;
};

/// Split every sector into positive- and negative-energy parts. The j + 1/2
/// kets sit at E = 1 with no lower partner and count as positive energy.
inline std::vector<SectorProjection> project_energy_sectors(const DiracState& state) {
  if (state.representation != Representation::dirac)
    throw contract_error("energy-sector projection needs the Dirac representation");
  const double r = detail::require_r(state);

  std::vector<SectorProjection> out;
  out.reserve(state.sectors.size());
  for (const auto& s : state.sectors) {
    SectorProjection pr;
    pr.positive_part = s;
    pr.negative_part = SectorState{s.l};
    if (s.l == 0) {
      out.push_back(pr);
      continue;
    }
    const auto [c_plus, c_minus] = spin_orbit_split(s.l);
    const auto b = energy_eigenbasis(s.l, r);

    // Coupled amplitudes on |l, j+-, m_j = l - 1/2>.
    const complex u_plus = c_minus * s.c1_mlm1 + c_plus * s.c2_ml;
    const complex u_minus = -c_plus * s.c1_mlm1 + c_minus * s.c2_ml;

    const complex cp = std::conj(b.positive_upper) * u_minus + std::conj(b.positive_lower) * s.c3;
    const complex cn = std::conj(b.negative_upper) * u_minus + std::conj(b.negative_lower) * s.c3;

    const complex pos_upper = cp * b.positive_upper;
    const complex neg_upper = cn * b.negative_upper;

    SectorState& pos = pr.positive_part;
    pos.c1_mlm1 = c_minus * u_plus - c_plus * pos_upper;
    pos.c2_ml = c_plus * u_plus + c_minus * pos_upper;
    pos.c3 = cp * b.positive_lower;

    SectorState& neg = pr.negative_part;
    neg.c1_mlm1 = -c_plus * neg_upper;
    neg.c2_ml = c_minus * neg_upper;
    neg.c3 = cn * b.negative_lower;
    out.push_back(pr);
  }
  return out;
}

/// Positive or negative part of a Dirac state as a state of its own.
inline DiracState energy_sector_state(const DiracState& state, bool negative) {
  const auto proj = project_energy_sectors(state);
  DiracState s;
  s.representation = state.representation;
  s.time = state.time;
  s.config = state.config;
  s.sectors.reserve(proj.size());
  for (const auto& p : proj) s.sectors.push_back(negative ? p.negative_part : p.positive_part);
  return s;
}

}  // namespace dosc
