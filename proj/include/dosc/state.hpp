#pragma once

#include <algorithm>
#include <complex>
#include <memory>
#include <vector>

#include "dosc/sim_config.hpp"

namespace dosc {

using complex = std::complex<double>;

/// Amplitudes of one orbital sector l. Each amplitude multiplies a fixed
/// oscillator ket in a fixed bispinor row:
///   c1_ml   row 1 (upper, spin up),   |n=l, l, m_l=l>      m_j = l + 1/2
///   c1_mlm1 row 1 (upper, spin up),   |n=l, l, m_l=l-1>    m_j = l - 1/2
///   c2_ml   row 2 (upper, spin down), |n=l, l, m_l=l>      m_j = l - 1/2
///   c3      row 3 (lower, spin up),   |l-1, l-1, m_l=l-1>  m_j = l - 1/2
/// Row 4 is identically zero for this family.
struct SectorState {
  int l = 0;
  complex c1_ml{};
  complex c1_mlm1{};
  complex c2_ml{};
  complex c3{};

  double norm() const {
    return std::norm(c1_ml) + std::norm(c1_mlm1) + std::norm(c2_ml) + std::norm(c3);
  }

  friend SectorState operator+(SectorState a, const SectorState& b) {
    a.c1_ml += b.c1_ml;
    a.c1_mlm1 += b.c1_mlm1;
    a.c2_ml += b.c2_ml;
    a.c3 += b.c3;
    return a;
  }
};

/// Largest modulus among the amplitude differences of two sectors.
inline double max_abs_difference(const SectorState& a, const SectorState& b) {
  return std::max({std::abs(a.c1_ml - b.c1_ml), std::abs(a.c1_mlm1 - b.c1_mlm1),
                   std::abs(a.c2_ml - b.c2_ml), std::abs(a.c3 - b.c3)});
}

/// Inner product <a|b> of two sectors with the same l.
inline complex inner(const SectorState& a, const SectorState& b) {
  return std::conj(a.c1_ml) * b.c1_ml + std::conj(a.c1_mlm1) * b.c1_mlm1 +
         std::conj(a.c2_ml) * b.c2_ml + std::conj(a.c3) * b.c3;
}

/// Full wave-packet snapshot: sectors l = 0..l_max in order.
struct DiracState {
  std::vector<SectorState> sectors;
  Representation representation = Representation::dirac;
  double time = 0.0;
  std::shared_ptr<const SimConfig> config;

  int l_max() const { return sectors.empty() ? -1 : sectors.back().l; }

  double norm() const {
    double s = 0.0;
    for (const auto& sec : sectors) s += sec.norm();
    return s;
  }
};

/// Sup-norm distance between the amplitudes of two states on the same sectors.
inline double max_abs_difference(const DiracState& a, const DiracState& b) {
  if (a.sectors.size() != b.sectors.size())
    throw contract_error("states have different sector ranges");
  double d = 0.0;
  for (std::size_t i = 0; i < a.sectors.size(); ++i)
    d = std::max(d, max_abs_difference(a.sectors[i], b.sectors[i]));
  return d;
}

}  // namespace dosc
