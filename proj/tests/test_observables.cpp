#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "dosc/evolution.hpp"
#include "dosc/observables.hpp"
#include "dosc/wavepacket.hpp"

using namespace dosc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
constexpr double pi = std::numbers::pi;

namespace {

SimConfig make(double r, Representation rep = Representation::dirac) {
  SimConfig c;
  c.n_mean = 20.0;
  c.r = r;
  c.representation = rep;
  return c;
}

}  // namespace

TEST_CASE("published sigma_x series matches the amplitudes") {
  for (double r : {0.001, 0.025, 0.5}) {
    const auto c = make(r);
    const auto s0 = initial_state(c);
    for (int k = 0; k < 100; ++k) {
      const double t = k * (2.0 * pi / r) / 99.0;
      const auto a = spin_from_state(evolve(s0, t));
      CHECK_THAT(spin_closed_form(c, t).sigma_x, WithinAbs(a.x, 1e-10));
      const auto d = spin_series_from_amplitudes(c, t);
      CHECK_THAT(d.sigma_x, WithinAbs(a.x, 1e-10));
      CHECK_THAT(d.sigma_y, WithinAbs(a.y, 1e-10));
      CHECK_THAT(d.sigma_z, WithinAbs(a.z, 1e-10));
    }
  }
}

TEST_CASE("published sigma_y and sigma_z series differ from the amplitudes") {
  const auto c = make(0.5);
  const auto s0 = initial_state(c);
  double dy = 0.0, dz = 0.0;
  for (double t = 0.1; t < 20.0; t += 0.1) {
    const auto a = spin_from_state(evolve(s0, t));
    const auto p = spin_closed_form(c, t);
    dy = std::max(dy, std::abs(p.sigma_y - a.y));
    dz = std::max(dz, std::abs(p.sigma_z - a.z));
  }
  CHECK(dy > 1e-2);
  CHECK(dz > 1e-2);
}

TEST_CASE("sigma_z offset of the published series at t = 0") {
  for (double r : {0.001, 0.025, 0.5}) {
    const auto c = make(r);
    const auto w = coherent_weights(20.0, 1e-12);
    double ref = 0.0;
    for (int l = 0; l <= w.l_max; ++l) {
      const double lam = w.lambdas[static_cast<std::size_t>(l)];
      const double eps2 = 1.0 / (1.0 + 2.0 * r * (2 * l + 1));
      ref += lam * lam * l * l * eps2 / std::pow(2.0 * l + 1.0, 3);
    }
    CHECK_THAT(sigma_z_closed_form_offset(20.0, r), WithinRel(ref, 1e-12));
    CHECK_THAT(spin_closed_form(c, 0.0).sigma_z, WithinAbs(ref, 1e-14));
    CHECK(ref > 0.0);
    CHECK_THAT(spin_from_state(initial_state(c)).z, WithinAbs(0.0, 1e-12));
  }
}

TEST_CASE("series term structure") {
  for (int l : {1, 5, 20}) {
    const auto pub = spin_series_terms(l, 0.5, true);
    const auto der = spin_series_terms(l, 0.5, false);
    CHECK(pub.x_slow == der.x_slow);
    CHECK_THAT(std::abs(der.y_slow), WithinRel(der.x_slow, 1e-15));
    CHECK_THAT(std::abs(der.y_fast), WithinRel(der.x_fast, 1e-15));
    CHECK_THAT(pub.y_slow * l, WithinRel(der.x_slow, 1e-15));
    CHECK(der.y_slow < 0.0);
  }
}

TEST_CASE("closed forms need an x-polarized packet") {
  auto c = make(0.5);
  c.alpha = 1.0;
  c.beta = 0.0;
  CHECK_THROWS_AS(spin_closed_form(c, 1.0), contract_error);
  CHECK_THROWS_AS(spin_series_from_amplitudes(c, 1.0), contract_error);
}

TEST_CASE("collapse time") {
  CHECK_THAT(collapse_time(20.0), WithinRel(pi / (2.0 * std::sqrt(40.0)), 1e-15));
  // Measured: last time before the first revival at which |sigma_x| >= 0.05,
  // in units of 1/omega. For N = 20 this is 0.2504 against tau_c = 0.2484.
  const double r = 0.001;
  const auto s0 = initial_state(make(r, Representation::nonrelativistic));
  double last = 0.0;
  for (int k = 0; k <= 20000; ++k) {
    const double wt = 0.5 * pi * k / 20000.0;
    if (std::abs(spin_from_state(evolve(s0, wt / r)).x) >= 0.05) last = wt;
  }
  const double tc = collapse_time(20.0);
  CHECK(last > tc);
  CHECK(last < 1.05 * tc);
}

TEST_CASE("J_z is conserved while L_z swings") {
  // L_z(0) - L_z(t) = sum_l |beta|^2 lambda_l^2 2l |1 - f_l|^2 / (2l+1)^2 with
  // f_l = exp(-i (2l+1) omega t); it peaks near 8l/(2l+1)^2 |beta|^2 ~ 0.05.
  const double r = 0.001;
  const auto s0 = initial_state(make(r, Representation::nonrelativistic));
  const auto w0 = weights(s0);
  const auto lam = coherent_weights(20.0, 1e-12).lambdas;
  double swing = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double t = k * (pi / r) / 200.0;
    const auto w = weights(evolve(s0, t));
    CHECK_THAT(w.j_z, WithinAbs(w0.j_z, 1e-10));
    double drop = 0.0;
    for (std::size_t l = 0; l < lam.size(); ++l) {
      const double d = 2.0 * l + 1.0;
      drop += 0.5 * lam[l] * lam[l] * 2.0 * l * std::norm(1.0 - std::polar(1.0, -d * r * t)) / (d * d);
    }
    CHECK_THAT(w0.l_z - w.l_z, WithinAbs(drop, 1e-12));
    swing = std::max(swing, std::abs(w.l_z - w0.l_z));
  }
  CHECK(swing > 0.04);
  CHECK(swing < 0.1);
}

TEST_CASE("nonrelativistic observables repeat after one period") {
  const double r = 0.001;
  const auto s0 = initial_state(make(r, Representation::nonrelativistic));
  for (double t : {0.0, 500.0, 3000.0}) {
    const auto a = spin_from_state(evolve(s0, t));
    const auto b = spin_from_state(evolve(s0, t + 2.0 * pi / r));
    CHECK_THAT(a.x, WithinAbs(b.x, 1e-9));
    CHECK_THAT(a.y, WithinAbs(b.y, 1e-9));
    CHECK_THAT(a.z, WithinAbs(b.z, 1e-9));
  }
}

TEST_CASE("band power of a pure tone") {
  const double dt = 0.05;
  std::vector<double> s(1024);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = 3.0 + std::cos(2.0 * pi * 64.0 * i / 1024.0);
  const double w = 2.0 * pi * 64.0 / (1024.0 * dt);
  CHECK_THAT(band_power_fraction(s, dt, 0.9 * w), WithinAbs(1.0, 1e-12));
  CHECK_THAT(band_power_fraction(s, dt, 1.1 * w), WithinAbs(0.0, 1e-12));
}

TEST_CASE("fast spin oscillations are absent in FW") {
  // Slow terms sit at omega_l - 1; the zitterbewegung terms at omega_l + 1
  // and 2 omega_l. Cut at 1.5 times the slow frequency of the mean sector.
  const double r = 0.5, dt = 0.05;
  const double cut = 1.5 * spectral_coefficients(20, r).splitting();
  auto series = [&](Representation rep, int axis) {
    const auto s0 = initial_state(make(r, rep));
    std::vector<double> v(2048);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto sp = spin_from_state(evolve(s0, i * dt));
      v[i] = axis == 0 ? sp.x : sp.z;
    }
    return v;
  };
  for (int axis : {0, 1}) {
    const double dirac = band_power_fraction(series(Representation::dirac, axis), dt, cut);
    const double fw = band_power_fraction(series(Representation::foldy_wouthuysen, axis), dt, cut);
    CHECK(dirac > 10.0 * fw);
  }
  // sigma_z carries the 2 omega_l term, sigma_x does not.
  const double cut2 = 2.0 * spectral_coefficients(10, r).omega_l;
  CHECK(band_power_fraction(series(Representation::dirac, 1), dt, cut2) >
        10.0 * band_power_fraction(series(Representation::dirac, 0), dt, cut2));
}
