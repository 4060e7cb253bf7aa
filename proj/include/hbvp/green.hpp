#pragma once

#include <functional>

#include "hbvp/problem.hpp"

namespace hbvp {

struct OdeCoefficient {
  double A;  // gamma1 * C
  double C;  // Gamma(2 alpha + mu(1-alpha)) / (k alpha Gamma(alpha + mu(1-alpha)))
};

OdeCoefficient coefficient_A(const ProblemSpec& spec);

/// Green's function of tau'' - A tau' = F, tau(0) = tau(l) = 0.
double green_g0(double x, double xi, double A, double l);

/// Same construction with the Wronskian denominator taken at x instead of
/// xi. Does not satisfy the defining property; kept for comparison only.
double green_g0_x_denominator(double x, double xi, double A, double l);

/// tau(x) = int_0^l G0(x, xi) F(xi) dxi, evaluated on demand with composite
/// Simpson on [0, x] and [x, l] (n_nodes - 1 intervals each).
std::function<double(double)> solve_ode_bvp(std::function<double(double)> F, double A, double l,
                                            int n_nodes);

}  // namespace hbvp
