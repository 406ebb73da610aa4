#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's numerical paths.

#include <cmath>
#include <complex>
#include <random>

#include "vsfinger/core_types.hpp"

namespace vsf::testing {

// Midpoint rule on an n x n grid for int_0^a int_0^b sqrt((x cos t)^2 + (y + r1)^2).
inline double midpoint_lever_integral(double a, double b, double theta, double r1, int n) {
  const double hx = a / n;
  const double hy = b / n;
  const double c = std::cos(theta);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xc = (i + 0.5) * hx * c;
    const double xc2 = xc * xc;
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double yy = (j + 0.5) * hy + r1;
      row += std::sqrt(xc2 + yy * yy);
    }
    total += row;
  }
  return total * hx * hy;
}

// 3-point Gauss-Legendre on n panels.
template <class F>
double gauss_legendre(F&& f, double lo, double hi, int panels) {
  static const double nodes[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  static const double weights[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  const double h = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    for (int k = 0; k < 3; ++k) total += weights[k] * f(mid + 0.5 * h * nodes[k]);
  }
  return 0.5 * h * total;
}

// Root moment of a uniform line load p = 2 m g / (n L) over [R, R + L/2], R = L/pi.
inline double required_moment_by_quadrature(double mass, int fingers, double length) {
  const double g = 9.80665;
  const double p = 2.0 * mass * g / (fingers * length);
  const double r = length / 3.14159265358979323846;
  return gauss_legendre([p](double x) { return p * x; }, r, r + 0.5 * length, 8);
}

// Planar chain of k equal segments, each unit turning by phi after its
// translation. Returns the tip position as z + i x.
inline std::complex<double> planar_arc_tip(double segment, double phi, int k) {
  std::complex<double> tip{0.0, 0.0};
  for (int j = 0; j < k; ++j) tip += segment * std::polar(1.0, j * phi);
  return tip;
}

inline std::complex<double> planar_arc_tip_closed_form(double segment, double phi, int k) {
  if (phi == 0.0) return {segment * k, 0.0};
  const std::complex<double> w = std::polar(1.0, phi);
  return segment * (1.0 - std::pow(w, k)) / (1.0 - w);
}

struct GeometrySampler {
  std::mt19937_64 rng;
  explicit GeometrySampler(std::uint64_t seed) : rng(seed) {}

  LockGeometry next() {
    std::uniform_real_distribution<double> theta(0.05, 1.5), len(0.5e-3, 10e-3), r1(0.0, 10e-3),
        mu(0.05, 0.9);
    LockGeometry g;
    g.theta_rad = theta(rng);
    g.a_m = len(rng);
    g.b_m = len(rng);
    g.r1_m = r1(rng);
    g.protrusion_count = 4;
    // keep inside the release region
    const double mu_cap = 0.95 / std::tan(g.theta_rad);
    g.mu = std::min(mu(rng), mu_cap);
    return g;
  }
};

}  // namespace vsf::testing
