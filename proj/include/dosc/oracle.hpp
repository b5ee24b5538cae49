#pragma once

// Independent propagation in the coupled basis |l j m_j>. The Hamiltonian is
// block diagonal in (j, m_j): 1x1 blocks for levels without a lower partner,
// 2x2 blocks pairing an upper level with its lower partner. Each block is
// diagonalized in closed form and the propagator exp(-i H t) is applied to
// amplitudes obtained from the packet by Clebsch-Gordan recoupling.

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>
#include <vector>

#include "dosc/angular.hpp"
#include "dosc/errors.hpp"
#include "dosc/spectrum.hpp"
#include "dosc/state.hpp"

namespace dosc {

/// <l m_l; 1/2 m_s | j m_j> for j = l +- 1/2 (Condon-Shortley).
inline double clebsch_gordan_spin_half(int l, int twice_j, int twice_mj, int twice_ms) {
  if (l < 0 || std::abs(2 * l - twice_j) != 1 || std::abs(twice_mj) > twice_j ||
      (twice_ms != 1 && twice_ms != -1) || (twice_mj - twice_j) % 2 != 0)
    throw domain_error("invalid Clebsch-Gordan arguments");
  const int twice_ml = twice_mj - twice_ms;
  if (std::abs(twice_ml) > 2 * l) return 0.0;
  const double d = 2.0 * l + 1.0;
  const double up = (2.0 * l + twice_mj + 1.0) / 2.0;    // l + m_j + 1/2
  const double down = (2.0 * l - twice_mj + 1.0) / 2.0;  // l - m_j + 1/2
  if (twice_j == 2 * l + 1)
    return twice_ms == 1 ? std::sqrt(up / d) : std::sqrt(down / d);
  return twice_ms == 1 ? -std::sqrt(down / d) : std::sqrt(up / d);
}

using Matrix2 = std::array<std::array<complex, 2>, 2>;

struct JBlock {
  int l = 0;
  int twice_j = 1;
  int twice_mj = 1;
  int dimension = 1;
  Matrix2 hamiltonian{};
  std::array<double, 2> eigenvalues{};  // descending
  Matrix2 eigenvectors{};               // eigenvectors[k] belongs to eigenvalues[k]

  Matrix2 propagator(double t) const {
    Matrix2 u{};
    for (int k = 0; k < dimension; ++k) {
      const complex ph = std::polar(1.0, -eigenvalues[static_cast<std::size_t>(k)] * t);
      const auto& v = eigenvectors[static_cast<std::size_t>(k)];
      for (int a = 0; a < dimension; ++a)
        for (int b = 0; b < dimension; ++b)
          u[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] +=
              ph * v[static_cast<std::size_t>(a)] * std::conj(v[static_cast<std::size_t>(b)]);
    }
    return u;
  }
};

namespace detail {

// Closed-form eigen-decomposition of [[a, conj(b)], [b, d]].
inline void diagonalize_hermitian2(JBlock& blk) {
  const double a = blk.hamiltonian[0][0].real();
  const double d = blk.hamiltonian[1][1].real();
  const complex b = blk.hamiltonian[1][0];
  const double mean = 0.5 * (a + d), half = 0.5 * (a - d);
  const double radius = std::hypot(half, std::abs(b));
  blk.eigenvalues = {mean + radius, mean - radius};
  const double theta = std::atan2(std::abs(b), half);
  const complex phase = std::abs(b) > 0.0 ? b / std::abs(b) : complex{1.0, 0.0};
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  blk.eigenvectors[0] = {complex{c, 0.0}, phase * s};
  blk.eigenvectors[1] = {-std::conj(phase) * s, complex{c, 0.0}};
}

}  // namespace detail

/// Block of the oscillator Hamiltonian for the upper level |n=l, l, j, m_j>.
/// In the Dirac representation a level with a lower partner gives
/// [[1, conj(h)], [h, -1]] with |h| = sqrt(E^2 - 1), so the eigenvalues are
/// +-E; the phase of h is i * sgn in the lower-ket convention used by the
/// closed-form propagator. The FW and nonrelativistic representations keep
/// only the upper level, at E and (E^2 - 1)/2 respectively.
inline JBlock build_block(int l, int twice_j, int twice_mj, double r,
                          Representation rep = Representation::dirac) {
  const LevelLabel upper{l, l, twice_j};
  validate(upper);
  if (std::abs(twice_mj) > twice_j || (twice_mj - twice_j) % 2 != 0)
    throw domain_error("m_j out of range for j");

  JBlock blk;
  blk.l = l;
  blk.twice_j = twice_j;
  blk.twice_mj = twice_mj;

  const auto partner = partner_labels(upper);
  if (rep != Representation::dirac || !partner) {
    const double e = rep == Representation::nonrelativistic ? nonrelativistic_energy(upper, r)
                                                            : energy(upper, r);
    blk.dimension = 1;
    blk.hamiltonian[0][0] = e;
    blk.eigenvalues = {e, 0.0};
    blk.eigenvectors[0] = {complex{1.0, 0.0}, complex{}};
    return blk;
  }

  const double e = energy(upper, r);
  const complex h = complex{0.0, 1.0} * sgn_phase(l, partner->l, twice_j) * std::sqrt(e * e - 1.0);
  blk.dimension = 2;
  blk.hamiltonian = {{{complex{1.0, 0.0}, std::conj(h)}, {h, complex{-1.0, 0.0}}}};
  detail::diagonalize_hermitian2(blk);
  return blk;
}

/// Every block reachable from sectors l = 0..basis_cap, in the order
/// (j+, m_j = j+), (j+, m_j = j+ - 1), (j-, m_j = j-) per l; l = 0 also
/// carries the spin-down ket (j = 1/2, m_j = -1/2).
inline std::vector<JBlock> hamiltonian_blocks(int basis_cap, double r,
                                              Representation rep = Representation::dirac) {
  std::vector<JBlock> blocks;
  for (int l = 0; l <= basis_cap; ++l) {
    blocks.push_back(build_block(l, 2 * l + 1, 2 * l + 1, r, rep));
    if (l == 0) blocks.push_back(build_block(0, 1, -1, r, rep));
    if (l >= 1) {
      blocks.push_back(build_block(l, 2 * l + 1, 2 * l - 1, r, rep));
      blocks.push_back(build_block(l, 2 * l - 1, 2 * l - 1, r, rep));
    }
  }
  return blocks;
}

/// Propagate any circular-family state by exp(-i H t) built block by block.
inline DiracState oracle_evolve(const DiracState& state0, double t, int basis_cap) {
  if (!state0.config) throw contract_error("state carries no configuration");
  if (state0.l_max() > basis_cap)
    throw truncation_error("basis cap " + std::to_string(basis_cap) + " below packet l_max " +
                           std::to_string(state0.l_max()));
  const double r = state0.config->r;
  const Representation rep = state0.representation;
  const auto blocks = hamiltonian_blocks(basis_cap, r, rep);

  DiracState out;
  out.representation = rep;
  out.time = state0.time + t;
  out.config = state0.config;

  std::size_t ib = 0;
  for (int l = 0; l <= basis_cap; ++l) {
    const SectorState in = static_cast<std::size_t>(l) < state0.sectors.size()
                               ? state0.sectors[static_cast<std::size_t>(l)]
                               : SectorState{l};
    if (in.l != l) throw contract_error("sectors must be ordered l = 0, 1, ...");
    if (rep != Representation::dirac && in.c3 != complex{})
      throw contract_error("upper-only representation with a lower amplitude");

    SectorState s{l};
    const JBlock& stretched = blocks[ib++];
    s.c1_ml = stretched.propagator(t)[0][0] * in.c1_ml;
    if (l == 0) s.c2_ml = blocks[ib++].propagator(t)[0][0] * in.c2_ml;

    if (l >= 1) {
      const JBlock& plus = blocks[ib++];
      const JBlock& minus = blocks[ib++];
      const int jp = 2 * l + 1, jm = 2 * l - 1, mj = 2 * l - 1;
      const double p_up = clebsch_gordan_spin_half(l, jp, mj, 1);
      const double p_dn = clebsch_gordan_spin_half(l, jp, mj, -1);
      const double m_up = clebsch_gordan_spin_half(l, jm, mj, 1);
      const double m_dn = clebsch_gordan_spin_half(l, jm, mj, -1);
      const double lower_cg = clebsch_gordan_spin_half(l - 1, jm, mj, 1);

      const complex x_plus = plus.propagator(t)[0][0] * (p_up * in.c1_mlm1 + p_dn * in.c2_ml);
      const complex u_minus = m_up * in.c1_mlm1 + m_dn * in.c2_ml;
      const complex v_minus = lower_cg * in.c3;

      const Matrix2 u = minus.propagator(t);
      complex x_minus, y_minus{};
      if (minus.dimension == 2) {
        x_minus = u[0][0] * u_minus + u[0][1] * v_minus;
        y_minus = u[1][0] * u_minus + u[1][1] * v_minus;
      } else {
        x_minus = u[0][0] * u_minus;
      }
      s.c1_mlm1 = p_up * x_plus + m_up * x_minus;
      s.c2_ml = p_dn * x_plus + m_dn * x_minus;
      s.c3 = y_minus / lower_cg;
    }
    if (l <= state0.l_max()) out.sectors.push_back(s);
  }
  return out;
}

}  // namespace dosc
