#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hbvp {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1-x)^a (1+x)^b on [-1, 1], a, b > -1
/// (Golub-Welsch). Rules are cached per thread.
const QuadratureRule& gauss_jacobi(int n, double a, double b);

inline const QuadratureRule& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

/// Composite Gauss-Legendre over [lo, hi] with `panels` equal panels.
double integrate(const std::function<double(double)>& f, double lo, double hi, int panels,
                 int order = 8);

/// Composite Gauss-Legendre with additional panel breaks (e.g. spline knots
/// or kernel kinks) inside [lo, hi].
double integrate_with_breaks(const std::function<double(double)>& f, double lo, double hi,
                             std::span<const double> breaks, int order = 6);

/// Weights of a closed Newton-Cotes composite rule over the uniform-grid
/// nodes first..last (spacing h): Simpson on pairs, a 3/8 panel when the
/// interval count is odd, trapezoid for a single interval. The weights are
/// added into `w` (indexed by global node number).
void add_segment_weights(std::size_t first, std::size_t last, double h, std::span<double> w);

/// Composite Simpson weights for n uniform nodes on [0, length]; n odd.
std::vector<double> simpson_weights(std::size_t n, double length);

/// Integral over the full uniform grid of sampled values.
double integrate_samples(std::span<const double> values, double length);

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace hbvp
