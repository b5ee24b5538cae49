#pragma once

// Probability densities on spheres of fixed radius. Each bispinor row is
// rebuilt as sum_m C_m(u, theta) exp(i m phi) from the amplitudes and the
// kets they multiply, with radial and theta factors cached per (l, m).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "dosc/angular.hpp"
#include "dosc/errors.hpp"
#include "dosc/evolution.hpp"
#include "dosc/parallel.hpp"
#include "dosc/state.hpp"

namespace dosc {

struct DensityKind {
  enum class Tag { total, component, positive, negative };
  Tag tag = Tag::total;
  int component = 0;  // 1..4 when tag == component

  static DensityKind total() { return {}; }
  static DensityKind row(int k) {
    if (k < 1 || k > 4) throw domain_error("bispinor component must be 1..4");
    return {Tag::component, k};
  }
  static DensityKind positive() { return {Tag::positive, 0}; }
  static DensityKind negative() { return {Tag::negative, 0}; }

  bool is_sector() const { return tag == Tag::positive || tag == Tag::negative; }

  std::string name() const {
    switch (tag) {
      case Tag::total: return "total";
      case Tag::component: return "c" + std::to_string(component);
      case Tag::positive: return "positive";
      case Tag::negative: return "negative";
    }
    return "?";
  }

  static DensityKind parse(const std::string& s) {
    if (s == "total") return total();
    if (s == "positive") return positive();
    if (s == "negative") return negative();
    if (s.size() == 2 && s[0] == 'c' && s[1] >= '1' && s[1] <= '4') return row(s[1] - '0');
    throw domain_error("unknown density kind '" + s + "'");
  }

  friend bool operator==(const DensityKind&, const DensityKind&) = default;
};

/// theta in [0, pi], n points, both ends included.
inline std::vector<double> theta_grid(int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::numbers::pi * i / (n - 1);
  return g;
}

/// phi in [0, 2 pi), n points.
inline std::vector<double> phi_grid(int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = 2.0 * std::numbers::pi * i / n;
  return g;
}

/// Per-row fields of a state, evaluated at points (u, theta, phi).
class FieldEvaluator {
 public:
  explicit FieldEvaluator(const DiracState& state) : sectors_(state.sectors) {
    m_max_ = std::max(0, state.l_max());
  }

  /// R_l(u) for l = 0..l_max; shared by every theta row at one radius.
  std::vector<double> radial_factors(double u) const {
    std::vector<double> r(static_cast<std::size_t>(m_max_) + 1);
    for (int l = 0; l <= m_max_; ++l) r[static_cast<std::size_t>(l)] = radial_node_free(l, u);
    return r;
  }

  /// Fourier coefficients C_k[m] (k = rows 1..3) at fixed (u, theta), given
  /// radial_factors(u). Row 4 is identically zero.
  std::array<std::vector<complex>, 3> coefficients(const std::vector<double>& radial, double theta) const {
    const std::size_t nm = static_cast<std::size_t>(m_max_) + 1;
    std::array<std::vector<complex>, 3> c{std::vector<complex>(nm), std::vector<complex>(nm),
                                          std::vector<complex>(nm)};
    std::vector<double> yll(nm);
    for (int l = 0; l <= m_max_; ++l)
      yll[static_cast<std::size_t>(l)] = stretched_harmonic_theta(l, l, theta);
    for (const auto& s : sectors_) {
      const auto l = static_cast<std::size_t>(s.l);
      c[0][l] += s.c1_ml * (radial[l] * yll[l]);
      c[1][l] += s.c2_ml * (radial[l] * yll[l]);
      if (s.l >= 1) {
        c[0][l - 1] += s.c1_mlm1 * (radial[l] * stretched_harmonic_theta(s.l, s.l - 1, theta));
        c[2][l - 1] += s.c3 * (radial[l - 1] * yll[l - 1]);
      }
    }
    return c;
  }

  int m_max() const { return m_max_; }

 private:
  std::vector<SectorState> sectors_;
  int m_max_ = 0;
};

namespace detail {

// exp(i m phi) for m = 0..m_max, built by repeated multiplication.
inline std::vector<complex> phase_table(int m_max, double phi) {
  std::vector<complex> e(static_cast<std::size_t>(m_max) + 1);
  const complex step = std::polar(1.0, phi);
  complex z{1.0, 0.0};
  for (int m = 0; m <= m_max; ++m) {
    e[static_cast<std::size_t>(m)] = z;
    if (m % 32 == 31)
      z = std::polar(1.0, (m + 1) * phi);  // reset rounding drift
    else
      z *= step;
  }
  return e;
}

inline complex fourier_sum(const std::vector<complex>& coeff, const std::vector<complex>& phases) {
  complex s{};
  for (std::size_t m = 0; m < coeff.size(); ++m) s += coeff[m] * phases[m];
  return s;
}

inline DiracState state_for_kind(const DiracState& state, const DensityKind& kind) {
  if (!kind.is_sector()) return state;
  if (state.representation != Representation::dirac)
    throw contract_error("energy-sector densities need the Dirac representation");
  return energy_sector_state(state, kind.tag == DensityKind::Tag::negative);
}

// |Psi|^2 restricted to `kind`, given per-row field values.
inline double density_of(const std::array<complex, 3>& rows, const DensityKind& kind) {
  if (kind.tag == DensityKind::Tag::component)
    return kind.component == 4 ? 0.0 : std::norm(rows[static_cast<std::size_t>(kind.component - 1)]);
  return std::norm(rows[0]) + std::norm(rows[1]) + std::norm(rows[2]);
}

inline std::vector<std::vector<complex>> phase_tables(int m_max, const std::vector<double>& phis) {
  std::vector<std::vector<complex>> t;
  t.reserve(phis.size());
  for (double p : phis) t.push_back(phase_table(m_max, p));
  return t;
}

}  // namespace detail

struct DensityMap {
  double radius = 0.0;  // oscillator lengths
  std::vector<double> theta_values;
  std::vector<double> phi_values;
  std::vector<double> values;  // row-major, theta index outer
  DensityKind kind;

  double at(std::size_t i_theta, std::size_t i_phi) const {
    return values[i_theta * phi_values.size() + i_phi];
  }
};

inline DensityMap density_map(const DiracState& state, double radius, const DensityKind& kind,
                              const std::vector<double>& thetas, const std::vector<double>& phis) {
  if (!(radius > 0.0)) throw domain_error("radius must be positive");
  const DiracState src = detail::state_for_kind(state, kind);
  const FieldEvaluator field(src);
  const auto phases = detail::phase_tables(field.m_max(), phis);

  DensityMap map;
  map.radius = radius;
  map.theta_values = thetas;
  map.phi_values = phis;
  map.kind = kind;
  map.values.assign(thetas.size() * phis.size(), 0.0);

  const auto radial = field.radial_factors(radius);
  parallel_map(thetas.size(), [&](std::size_t i) {
    const auto c = field.coefficients(radial, thetas[i]);
    for (std::size_t j = 0; j < phis.size(); ++j) {
      const std::array<complex, 3> rows{detail::fourier_sum(c[0], phases[j]),
                                        detail::fourier_sum(c[1], phases[j]),
                                        detail::fourier_sum(c[2], phases[j])};
      map.values[i * phis.size() + j] = detail::density_of(rows, kind);
    }
    return 0;
  });
  return map;
}

/// Density along phi at fixed theta (the equator by default).
inline std::vector<double> phi_profile(const DiracState& state, double radius, const DensityKind& kind,
                                       const std::vector<double>& phis,
                                       double theta = std::numbers::pi / 2.0) {
  return density_map(state, radius, kind, {theta}, phis).values;
}

// ---------------------------------------------------------------------------
// Lobe analysis of periodic phi profiles.

struct Lobe {
  double centroid = 0.0;  // circular mean, in (-pi, pi]
  double mass = 0.0;      // sum of profile values inside the lobe
};

/// Connected arcs where the profile exceeds `threshold_fraction` of its
/// maximum, with wrap-around at 2 pi.
inline std::vector<Lobe> find_lobes(const std::vector<double>& phis, const std::vector<double>& profile,
                                    double threshold_fraction = 0.05) {
  const std::size_t n = profile.size();
  std::vector<Lobe> lobes;
  if (n == 0) return lobes;
  const double peak = *std::max_element(profile.begin(), profile.end());
  if (!(peak > 0.0)) return lobes;
  const double cut = threshold_fraction * peak;

  // Start scanning just after a point below threshold so no arc is split.
  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i)
    if (profile[i] < cut) {
      start = i;
      break;
    }
  auto close = [&](double sx, double sy, double mass) {
    lobes.push_back({std::atan2(sy, sx), mass});
  };
  if (start == n) {  // whole ring above threshold
    double sx = 0, sy = 0, mass = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sx += profile[i] * std::cos(phis[i]);
      sy += profile[i] * std::sin(phis[i]);
      mass += profile[i];
    }
    close(sx, sy, mass);
    return lobes;
  }
  bool inside = false;
  double sx = 0, sy = 0, mass = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t i = (start + k) % n;
    if (profile[i] >= cut) {
      inside = true;
      sx += profile[i] * std::cos(phis[i]);
      sy += profile[i] * std::sin(phis[i]);
      mass += profile[i];
    } else if (inside) {
      close(sx, sy, mass);
      inside = false;
      sx = sy = mass = 0;
    }
  }
  if (inside) close(sx, sy, mass);
  return lobes;
}

struct LobeTrack {
  std::vector<double> times;
  std::vector<double> centroids;  // unwrapped
  double mean_mass_fraction = 0.0;
  double angular_velocity = 0.0;  // least-squares slope of the centroid
};

/// Follow lobes through a sequence of profiles by nearest-centroid matching
/// (jumps above `max_jump` radians start a new track).
inline std::vector<LobeTrack> track_lobes(const std::vector<double>& times, const std::vector<double>& phis,
                                          const std::vector<std::vector<double>>& profiles,
                                          double threshold_fraction = 0.05, double max_jump = 0.6) {
  struct Open {
    LobeTrack track;
    double last = 0.0;
    double mass_sum = 0.0;
    bool alive = true;
  };
  std::vector<Open> tracks;
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    const auto lobes = find_lobes(phis, profiles[k], threshold_fraction);
    double total = 0.0;
    for (const auto& lb : lobes) total += lb.mass;
    std::vector<bool> used(lobes.size(), false);
    for (auto& tr : tracks) {
      if (!tr.alive) continue;
      double best = max_jump;
      std::size_t pick = lobes.size();
      for (std::size_t i = 0; i < lobes.size(); ++i) {
        if (used[i]) continue;
        const double d = std::abs(std::remainder(lobes[i].centroid - tr.last, 2.0 * std::numbers::pi));
        if (d < best) {
          best = d;
          pick = i;
        }
      }
      if (pick == lobes.size()) {
        tr.alive = false;
        continue;
      }
      used[pick] = true;
      const double step = std::remainder(lobes[pick].centroid - tr.last, 2.0 * std::numbers::pi);
      tr.last += step;
      tr.track.times.push_back(times[k]);
      tr.track.centroids.push_back(tr.last);
      tr.mass_sum += lobes[pick].mass / total;
    }
    for (std::size_t i = 0; i < lobes.size(); ++i) {
      if (used[i]) continue;
      Open tr;
      tr.last = lobes[i].centroid;
      tr.track.times.push_back(times[k]);
      tr.track.centroids.push_back(tr.last);
      tr.mass_sum = lobes[i].mass / total;
      tracks.push_back(std::move(tr));
    }
  }

  std::vector<LobeTrack> out;
  for (auto& tr : tracks) {
    auto& t = tr.track;
    const std::size_t n = t.times.size();
    t.mean_mass_fraction = tr.mass_sum / static_cast<double>(n);
    if (n >= 2) {
      double mt = 0, mc = 0;
      for (std::size_t i = 0; i < n; ++i) {
        mt += t.times[i];
        mc += t.centroids[i];
      }
      mt /= n;
      mc /= n;
      double num = 0, den = 0;
      for (std::size_t i = 0; i < n; ++i) {
        num += (t.times[i] - mt) * (t.centroids[i] - mc);
        den += (t.times[i] - mt) * (t.times[i] - mt);
      }
      t.angular_velocity = den > 0 ? num / den : 0.0;
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace dosc
