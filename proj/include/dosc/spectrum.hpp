#pragma once

// Spectrum of the Dirac oscillator in natural units (hbar = m = c = 1).
// The rest frequency is 1, the oscillator frequency equals r and the
// oscillator length is 1/sqrt(r).

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>

#include "dosc/errors.hpp"

namespace dosc {

inline constexpr double rest_frequency = 1.0;

/// Which spin-orbit partner a label describes.
enum class Branch {
  aligned,      // l = j - 1/2
  antialigned,  // l = j + 1/2
};

/// Oscillator level |n l j>. The total angular momentum is stored doubled so
/// that labels compare exactly.
struct LevelLabel {
  int n = 0;
  int l = 0;
  int twice_j = 1;

  Branch branch() const {
    return twice_j == 2 * l + 1 ? Branch::aligned : Branch::antialigned;
  }
  double j() const { return 0.5 * twice_j; }

  friend bool operator==(const LevelLabel&, const LevelLabel&) = default;
};

inline std::string to_string(const LevelLabel& s) {
  return "(n=" + std::to_string(s.n) + ", l=" + std::to_string(s.l) +
         ", j=" + std::to_string(s.twice_j) + "/2)";
}

inline void validate(const LevelLabel& s) {
  if (s.l < 0 || s.n < s.l || (s.n - s.l) % 2 != 0)
    throw domain_error("invalid oscillator shell " + to_string(s));
  if (s.twice_j < 1 || std::abs(2 * s.l - s.twice_j) != 1)
    throw domain_error("|j - l| must be 1/2 for " + to_string(s));
}

/// Integer A with E = sqrt(r A + 1).
inline int oscillator_a(const LevelLabel& s) {
  validate(s);
  return s.branch() == Branch::aligned ? 2 * s.n - s.twice_j + 1
                                       : 2 * s.n + s.twice_j + 3;
}

/// Positive-energy eigenvalue of an upper-component level, in units of mc^2.
inline double energy(const LevelLabel& s, double r) {
  if (!(r > 0.0)) throw domain_error("r must be positive");
  return std::sqrt(r * oscillator_a(s) + 1.0);
}

/// Eigenvalue of the associated nonrelativistic Hamiltonian, (E^2 - 1) / 2.
inline double nonrelativistic_energy(const LevelLabel& s, double r) {
  if (!(r > 0.0)) throw domain_error("r must be positive");
  return 0.5 * r * oscillator_a(s);
}

/// Level of the lower component paired with `s`. Empty for the A = 0 family,
/// whose lower component vanishes.
inline std::optional<LevelLabel> partner_labels(const LevelLabel& s) {
  if (oscillator_a(s) == 0) return std::nullopt;
  const int lp = s.branch() == Branch::aligned ? s.l + 1 : s.l - 1;
  return LevelLabel{s.n - 1, lp, s.twice_j};
}

struct SpectralCoefficients {
  double e_minus = 1.0;   // energy of the j = l - 1/2 partner
  double omega_l = 1.0;   // equal to e_minus
  double a_l = 0.0;       // small-component mixing amplitude
  double omega_0 = rest_frequency;
  double coupling = 0.0;  // 2 r (2l + 1) = omega_l^2 - 1

  /// omega_l - omega_0 without cancellation at small r.
  double splitting() const { return coupling / (omega_l + 1.0); }
};

inline SpectralCoefficients spectral_coefficients(int l, double r) {
  if (l < 0) throw domain_error("l must be non-negative");
  if (!(r > 0.0)) throw domain_error("r must be positive");
  const double x = 2.0 * r * (2.0 * l + 1.0);
  SpectralCoefficients c;
  c.e_minus = std::sqrt(1.0 + x);
  c.omega_l = c.e_minus;
  c.a_l = std::sqrt(x / (1.0 + x));
  c.coupling = x;
  return c;
}

/// First-order expansion of omega_l in r. Diagnostic only: the evolution
/// engines always use the exact frequency.
inline double linearized_omega(int l, double r) {
  return rest_frequency * (1.0 + r * (2.0 * l + 1.0));
}

}  // namespace dosc
