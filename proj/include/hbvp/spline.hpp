#pragma once

#include <cstddef>
#include <vector>

namespace hbvp {

/// Not-a-knot cubic spline through values on a uniform grid of [lo, hi].
/// Needs at least 5 knots.
class CubicSpline {
public:
  CubicSpline() = default;
  CubicSpline(double lo, double hi, std::vector<double> values);

  double operator()(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  /// Exact integral of S(x) sin(lambda (x - lo)) over [lo, hi].
  double sine_moment(double lambda) const;

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double step() const noexcept { return h_; }
  std::size_t size() const noexcept { return y_.size(); }
  const std::vector<double>& values() const noexcept { return y_; }
  std::vector<double> knots() const;

private:
  std::size_t segment(double x, double& s) const;

  double lo_ = 0.0, hi_ = 1.0, h_ = 1.0;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

}  // namespace hbvp
