#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "dosc/angular.hpp"
#include "dosc/oracle.hpp"
#include "dosc/quadrature.hpp"

using namespace dosc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
constexpr double pi = std::numbers::pi;

TEST_CASE("spin-orbit split coefficients") {
  auto s0 = spin_orbit_split(0);
  CHECK(s0.c_plus == 1.0);
  CHECK(s0.c_minus == 0.0);
  auto s1 = spin_orbit_split(1);
  CHECK_THAT(s1.c_plus, WithinRel(1.0 / std::sqrt(3.0), 1e-15));
  CHECK_THAT(s1.c_minus, WithinRel(std::sqrt(2.0 / 3.0), 1e-15));
  for (int l = 0; l <= 100; ++l) {
    auto s = spin_orbit_split(l);
    CHECK_THAT(s.c_plus * s.c_plus + s.c_minus * s.c_minus, WithinAbs(1.0, 1e-15));
  }
  CHECK_THROWS_AS(spin_orbit_split(-1), domain_error);
}

TEST_CASE("split agrees with Clebsch-Gordan recoupling") {
  // |l, m_l = l; down> = c+ |j+, l - 1/2> + c- |j-, l - 1/2>
  for (int l = 1; l <= 40; ++l) {
    const auto s = spin_orbit_split(l);
    const int mj = 2 * l - 1;
    const double cg_plus = clebsch_gordan_spin_half(l, 2 * l + 1, mj, -1);
    const double cg_minus = clebsch_gordan_spin_half(l, 2 * l - 1, mj, -1);
    CHECK_THAT(cg_plus, WithinAbs(s.c_plus, 1e-15));
    CHECK_THAT(cg_minus, WithinAbs(s.c_minus, 1e-15));
    // Recombination onto |l, m_l = l - 1; up> cancels.
    CHECK_THAT(cg_plus * clebsch_gordan_spin_half(l, 2 * l + 1, mj, 1) +
                   cg_minus * clebsch_gordan_spin_half(l, 2 * l - 1, mj, 1),
               WithinAbs(0.0, 1e-15));
  }
}

TEST_CASE("sgn phase table") {
  CHECK(sgn_phase(2, 1, 3) == complex(0.0, 1.0));
  CHECK(sgn_phase(1, 2, 3) == complex(0.0, -1.0));
  CHECK_THROWS_AS(sgn_phase(2, 1, 5), domain_error);
  CHECK_THROWS_AS(sgn_phase(2, 3, 3), domain_error);
  CHECK_THROWS_AS(sgn_phase(2, 2, 3), domain_error);
}

TEST_CASE("harmonic values") {
  CHECK_THAT(stretched_harmonic_theta(0, 0, 0.3), WithinRel(0.28209479177387814, 1e-14));
  CHECK_THAT(stretched_harmonic_theta(1, 1, pi / 2), WithinRel(-std::sqrt(3.0 / (8.0 * pi)), 1e-14));
  CHECK_THAT(stretched_harmonic_theta(1, 0, 0.0), WithinRel(std::sqrt(3.0 / (4.0 * pi)), 1e-14));
  for (int l = 1; l <= 10; ++l) CHECK(stretched_harmonic_theta(l, l, 0.0) == 0.0);
  const complex y = stretched_harmonic(2, 2, 1.0, 0.5);
  CHECK_THAT(std::arg(y), WithinAbs(1.0, 1e-14));  // e^{i m phi} with a positive real part for l = 2
  CHECK_THROWS_AS(stretched_harmonic_theta(3, 1, 0.2), unsupported_order_error);
  CHECK_THROWS_AS(stretched_harmonic_theta(0, -1, 0.2), unsupported_order_error);
}

TEST_CASE("harmonics match the standard library") {
  for (int l = 0; l <= 60; ++l)
    for (int m : {l, l - 1}) {
      if (m < 0) continue;
      for (double th : {0.1, 0.7, pi / 2, 2.0, 3.0}) {
        const double ref = std::sph_legendre(static_cast<unsigned>(l), static_cast<unsigned>(m), th);
        CHECK_THAT(stretched_harmonic_theta(l, m, th), WithinAbs(ref, 1e-12 * (1.0 + std::abs(ref))));
      }
    }
}

TEST_CASE("harmonics are orthonormal by quadrature") {
  const auto gl = gauss_legendre(80);
  const int n_phi = 64;
  for (int l = 0; l <= 60; ++l) {
    double n_ll = 0.0, n_lm = 0.0;
    complex overlap{};
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double th = std::acos(gl.nodes[i]);
      for (int k = 0; k < n_phi; ++k) {
        const double ph = 2.0 * pi * k / n_phi;
        const double w = gl.weights[i] * 2.0 * pi / n_phi;
        const complex a = stretched_harmonic(l, l, th, ph);
        n_ll += w * std::norm(a);
        if (l >= 1) {
          const complex b = stretched_harmonic(l, l - 1, th, ph);
          n_lm += w * std::norm(b);
          overlap += w * std::conj(a) * b;
        }
      }
    }
    CHECK_THAT(n_ll, WithinAbs(1.0, 1e-10));
    if (l >= 1) {
      CHECK_THAT(n_lm, WithinAbs(1.0, 1e-10));
      CHECK(std::abs(overlap) < 1e-12);
    }
  }
}

TEST_CASE("node-free radial functions") {
  const double r00 = std::sqrt(4.0 / std::sqrt(pi));
  CHECK_THAT(radial_node_free(0, 0.0), WithinRel(r00, 1e-14));
  for (int l = 1; l <= 5; ++l) CHECK(radial_node_free(l, 0.0) == 0.0);

  const auto gl = gauss_legendre(200, 0.0, 20.0);
  for (int l = 0; l <= 60; ++l) {
    double norm = 0.0, raw = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double u = gl.nodes[i];
      norm += gl.weights[i] * u * u * std::pow(radial_node_free(l, u), 2);
      raw += gl.weights[i] * std::pow(u, 2 * l + 2) * std::exp(-u * u);
    }
    CHECK_THAT(norm, WithinAbs(1.0, 1e-10));
    // Independent normalization of u^l exp(-u^2 / 2).
    const double u = std::sqrt(static_cast<double>(l) + 0.5);
    const double ref = std::pow(u, l) * std::exp(-0.5 * u * u) / std::sqrt(raw);
    CHECK_THAT(radial_node_free(l, u), WithinRel(ref, 1e-12));
  }
  CHECK(std::isfinite(radial_node_free(40, std::sqrt(20.0))));
  CHECK(radial_node_free(400, 20.0) > 0.0);
}
