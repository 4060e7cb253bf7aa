#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "hbvp/green.hpp"

namespace fixtures {

struct GreenCase {
  double A, l;
  double c[4], b[3];
  double F(double x) const { return c[0] + c[1] * std::sin(b[0] * x) + c[2] * std::cos(b[1] * x) + c[3] * std::exp(b[2] * x); }
};

inline GreenCase random_green_case(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  GreenCase g;
  g.A = 3.0 * u(rng);
  g.l = 1.25 + 0.75 * u(rng);
  for (double& v : g.c) v = 2.0 * u(rng);
  for (double& v : g.b) v = 3.0 * u(rng);
  return g;
}

// Interior residual of tau'' - A tau' - F for tau = int G0 F, relative to
// max|F|. Derivatives by 6th-order central differences.
inline double green_defining_residual(const GreenCase& g, int n_nodes) {
  auto tau = hbvp::solve_ode_bvp([&](double x) { return g.F(x); }, g.A, g.l, n_nodes);
  const double h = 1e-2;
  double worst = 0.0, fmax = 0.0;
  for (int i = 1; i < 20; ++i) {
    double x = g.l * (0.05 + 0.9 * i / 20.0);
    double f[7];
    for (int k = 0; k < 7; ++k) f[k] = tau(x + (k - 3) * h);
    double d1 = (-f[0] + 9 * f[1] - 45 * f[2] + 45 * f[4] - 9 * f[5] + f[6]) / (60 * h);
    double d2 = (2 * f[0] - 27 * f[1] + 270 * f[2] - 490 * f[3] + 270 * f[4] - 27 * f[5] + 2 * f[6]) / (180 * h * h);
    worst = std::max(worst, std::fabs(d2 - g.A * d1 - g.F(x)));
  }
  for (int i = 0; i <= 200; ++i) fmax = std::max(fmax, std::fabs(g.F(g.l * i / 200.0)));
  return worst / fmax;
}

// max over a grid of |G0(A = 1e-8) - G0(A = 0)|.
inline double green_continuity_gap(double l) {
  double worst = 0.0;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 40; ++j) {
      double x = l * i / 40.0, xi = l * j / 40.0;
      worst = std::max(worst, std::fabs(hbvp::green_g0(x, xi, 1e-8, l) - hbvp::green_g0(x, xi, 0.0, l)));
    }
  return worst;
}

}  // namespace fixtures
