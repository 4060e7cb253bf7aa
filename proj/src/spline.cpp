#include "hbvp/spline.hpp"

#include <cmath>
#include <stdexcept>

#include "hbvp/quadrature.hpp"

namespace hbvp {

CubicSpline::CubicSpline(double lo, double hi, std::vector<double> values)
    : lo_(lo), hi_(hi), y_(std::move(values)) {
  const std::size_t n = y_.size();
  if (n < 5) throw std::invalid_argument("CubicSpline needs at least 5 knots");
  if (!(hi > lo)) throw std::invalid_argument("CubicSpline: empty interval");
  h_ = (hi - lo) / static_cast<double>(n - 1);

  // Interior rows: M[i-1] + 4 M[i] + M[i+1] = d[i]. Not-a-knot at both ends
  // (M0 - 2M1 + M2 = 0) reduces rows 1 and n-2 to 6 M = d.
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = 6.0 * (y_[i - 1] - 2.0 * y_[i] + y_[i + 1]) / (h_ * h_);
  m_.assign(n, 0.0);
  m_[1] = d[1] / 6.0;
  m_[n - 2] = d[n - 2] / 6.0;

  // Thomas algorithm on rows 2..n-3 with M1, M_{n-2} known.
  if (n > 5) {
    std::size_t lo_i = 2, hi_i = n - 3;
    std::size_t k = hi_i - lo_i + 1;
    std::vector<double> c(k, 0.0), r(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t i = lo_i + j;
      double rhs = d[i];
      if (i == lo_i) rhs -= m_[1];
      if (i == hi_i) rhs -= m_[n - 2];
      double diag = 4.0 - (j > 0 ? c[j - 1] : 0.0);
      c[j] = 1.0 / diag;
      r[j] = (rhs - (j > 0 ? r[j - 1] : 0.0)) / diag;
    }
    for (std::size_t j = k; j-- > 0;) {
      m_[lo_i + j] = r[j] - (j + 1 < k ? c[j] * m_[lo_i + j + 1] : 0.0);
    }
  }
  m_[0] = 2.0 * m_[1] - m_[2];
  m_[n - 1] = 2.0 * m_[n - 2] - m_[n - 3];
}

std::size_t CubicSpline::segment(double x, double& s) const {
  double u = (x - lo_) / h_;
  auto last = static_cast<double>(y_.size() - 2);
  double i = std::floor(u);
  if (i < 0.0) i = 0.0;
  if (i > last) i = last;
  s = x - (lo_ + i * h_);
  return static_cast<std::size_t>(i);
}

double CubicSpline::operator()(double x) const {
  double s;
  std::size_t i = segment(x, s);
  double t = h_ - s;
  return (m_[i] * t * t * t + m_[i + 1] * s * s * s) / (6.0 * h_) +
         (y_[i] / h_ - m_[i] * h_ / 6.0) * t + (y_[i + 1] / h_ - m_[i + 1] * h_ / 6.0) * s;
}

double CubicSpline::derivative(double x) const {
  double s;
  std::size_t i = segment(x, s);
  double t = h_ - s;
  return (-m_[i] * t * t + m_[i + 1] * s * s) / (2.0 * h_) + (y_[i + 1] - y_[i]) / h_ -
         (m_[i + 1] - m_[i]) * h_ / 6.0;
}

double CubicSpline::second_derivative(double x) const {
  double s;
  std::size_t i = segment(x, s);
  return (m_[i] * (h_ - s) + m_[i + 1] * s) / h_;
}

double CubicSpline::sine_moment(double lambda) const {
  // Repeated integration by parts; S, S', S'' are continuous so only the
  // endpoint terms and the jumps of the piecewise-constant S''' survive.
  const std::size_t n = y_.size();
  auto sn = [&](std::size_t i) { return std::sin(lambda * h_ * static_cast<double>(i)); };
  auto cs = [&](std::size_t i) { return std::cos(lambda * h_ * static_cast<double>(i)); };
  const double l1 = lambda, l2 = l1 * lambda, l3 = l2 * lambda, l4 = l3 * lambda;
  auto boundary = [&](std::size_t i, double y, double dy, double ddy) {
    return -y * cs(i) / l1 + dy * sn(i) / l2 + ddy * cs(i) / l3;
  };
  double total = boundary(n - 1, y_[n - 1], derivative(hi_), m_[n - 1]) -
                 boundary(0, y_[0], derivative(lo_), m_[0]);
  double prev_sin = sn(0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double third = (m_[i + 1] - m_[i]) / h_;
    double next_sin = sn(i + 1);
    total -= third * (next_sin - prev_sin) / l4;
    prev_sin = next_sin;
  }
  return total;
}

std::vector<double> CubicSpline::knots() const { return linspace(lo_, hi_, y_.size()); }

}  // namespace hbvp
