#pragma once

// Product quadrature for full 3D norms: Gauss-Legendre in the radius u and
// in cos(theta), trapezoid in phi (exact for the band-limited phi content).

#include <cmath>
#include <numbers>
#include <vector>

#include "dosc/density.hpp"
#include "dosc/errors.hpp"
#include "dosc/parallel.hpp"
#include "dosc/state.hpp"

namespace dosc {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b] (Newton iteration on P_n).
inline QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0) {
  if (n < 1) throw domain_error("quadrature order must be positive");
  QuadratureRule q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  const double mid = 0.5 * (b + a), half = 0.5 * (b - a);
  if (n == 1) {
    q.nodes[0] = mid;
    q.weights[0] = 2.0 * half;
    return q;
  }
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;  // P_{k-1}, P_k
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
    q.nodes[lo] = mid - half * x;
    q.nodes[hi] = mid + half * x;
    q.weights[lo] = q.weights[hi] = half * w;
  }
  return q;
}

/// Radial cutoff (oscillator lengths) beyond which every populated radial
/// function is below ~exp(-50) of its peak.
inline double radial_extent(int l_max) { return std::sqrt(std::max(l_max, 0) + 1.0) + 10.0; }

/// int |Psi|^2 u^2 du dOmega by product quadrature: `radial_order` Gauss
/// points on [0, radial_extent], `angular_order` Gauss points in cos(theta)
/// and 2 * angular_order trapezoid points in phi.
inline double quadrature_norm(const DiracState& state, int radial_order, int angular_order) {
  if (radial_order < 16 || angular_order < 16)
    throw domain_error("quadrature orders must be at least 16");
  const FieldEvaluator field(state);
  const auto radial_rule = gauss_legendre(radial_order, 0.0, radial_extent(state.l_max()));
  const auto polar_rule = gauss_legendre(angular_order);
  const int n_phi = 2 * angular_order;
  const auto phis = phi_grid(n_phi);
  const auto phases = detail::phase_tables(field.m_max(), phis);
  const double w_phi = 2.0 * std::numbers::pi / n_phi;

  const auto shells = parallel_map(radial_rule.nodes.size(), [&](std::size_t iu) {
    const double u = radial_rule.nodes[iu];
    const auto radial = field.radial_factors(u);
    double shell = 0.0;
    for (std::size_t it = 0; it < polar_rule.nodes.size(); ++it) {
      const auto c = field.coefficients(radial, std::acos(polar_rule.nodes[it]));
      double ring = 0.0;
      for (const auto& ph : phases)
        ring += std::norm(detail::fourier_sum(c[0], ph)) + std::norm(detail::fourier_sum(c[1], ph)) +
                std::norm(detail::fourier_sum(c[2], ph));
      shell += polar_rule.weights[it] * ring * w_phi;
    }
    return radial_rule.weights[iu] * u * u * shell;
  });
  double total = 0.0;
  for (double s : shells) total += s;
  return total;
}

}  // namespace dosc
