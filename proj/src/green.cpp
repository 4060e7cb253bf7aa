#include "hbvp/green.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hbvp/quadrature.hpp"
#include "hbvp/specfun.hpp"

namespace hbvp {

namespace {

constexpr double kSmallA = 1e-6;

double limit_g0(double x, double xi, double l) {
  return xi <= x ? xi * (x - l) / l : x * (xi - l) / l;
}

}  // namespace

OdeCoefficient coefficient_A(const ProblemSpec& s) {
  const double b = s.beta();
  double C = gamma(s.alpha + b) / (s.k * s.alpha * gamma(b));
  return {s.gamma[0] * C, C};
}

double green_g0(double x, double xi, double A, double l) {
  if (std::fabs(A) * l <= kSmallA) return limit_g0(x, xi, l);
  double lo = std::min(x, xi), hi = std::max(x, xi);
  double u1 = -std::expm1(A * lo);
  double u2 = -std::expm1(A * (hi - l));
  // W(xi) = A (e^{A xi} - e^{A(xi-l)}) = -A e^{A xi} expm1(-A l)
  double w = -A * std::exp(A * xi) * std::expm1(-A * l);
  return u1 * u2 / w;
}

double green_g0_x_denominator(double x, double xi, double A, double l) {
  if (std::fabs(A) * l <= kSmallA) return limit_g0(x, xi, l);
  double lo = std::min(x, xi), hi = std::max(x, xi);
  double u1 = -std::expm1(A * lo);
  double u2 = -std::expm1(A * (hi - l));
  double w = -A * std::exp(A * x) * std::expm1(-A * l);
  return u1 * u2 / w;
}

std::function<double(double)> solve_ode_bvp(std::function<double(double)> F, double A, double l,
                                            int n_nodes) {
  if (n_nodes < 9 || n_nodes % 2 == 0) throw std::invalid_argument("solve_ode_bvp: n_nodes must be odd and >= 9");
  const std::size_t m = static_cast<std::size_t>(n_nodes);
  const auto w = simpson_weights(m, 1.0);
  return [F = std::move(F), A, l, m, w](double x) {
    if (x <= 0.0 || x >= l) return 0.0;
    double sum = 0.0;
    const double parts[2][2] = {{0.0, x}, {x, l}};
    for (const auto& p : parts) {
      double len = p[1] - p[0];
      for (std::size_t j = 0; j < m; ++j) {
        double xi = p[0] + len * static_cast<double>(j) / static_cast<double>(m - 1);
        sum += len * w[j] * green_g0(x, xi, A, l) * F(xi);
      }
    }
    return sum;
  };
}

}  // namespace hbvp
