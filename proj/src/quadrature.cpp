#include "hbvp/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace hbvp {

namespace {

QuadratureRule golub_welsch(int n, double a, double b) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double s = 2.0 * k + a + b;
    J(k, k) = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < n) {
      double k1 = k + 1.0;
      double s1 = 2.0 * k1 + a + b;
      double beta = 4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + a + b) / (s1 * s1 * (s1 + 1.0) * (s1 - 1.0));
      J(k, k + 1) = J(k + 1, k) = std::sqrt(beta);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
  double mu0 = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                        std::lgamma(a + b + 2.0));
  QuadratureRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.nodes[i] = eig.eigenvalues()(i);
    double v0 = eig.eigenvectors()(0, i);
    r.weights[i] = mu0 * v0 * v0;
  }
  return r;
}

}  // namespace

const QuadratureRule& gauss_jacobi(int n, double a, double b) {
  if (n < 1 || !(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("gauss_jacobi: bad parameters");
  thread_local std::map<std::tuple<int, double, double>, QuadratureRule> cache;
  auto key = std::make_tuple(n, a, b);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, golub_welsch(n, a, b)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double lo, double hi, int panels, int order) {
  const QuadratureRule& g = gauss_legendre(order);
  double h = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double a = lo + p * h;
    double mid = a + 0.5 * h;
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(mid + 0.5 * h * g.nodes[i]);
    total += 0.5 * h * s;
  }
  return total;
}

double integrate_with_breaks(const std::function<double(double)>& f, double lo, double hi,
                             std::span<const double> breaks, int order) {
  if (hi == lo) return 0.0;
  double sign = 1.0;
  if (hi < lo) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  std::vector<double> pts{lo};
  for (double b : breaks)
    if (b > lo && b < hi) pts.push_back(b);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  const QuadratureRule& g = gauss_legendre(order);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    double h = pts[p + 1] - pts[p];
    if (h <= 0.0) continue;
    double mid = pts[p] + 0.5 * h;
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(mid + 0.5 * h * g.nodes[i]);
    total += 0.5 * h * s;
  }
  return sign * total;
}

void add_segment_weights(std::size_t first, std::size_t last, double h, std::span<double> w) {
  if (last <= first) return;
  std::size_t m = last - first;
  if (m == 1) {
    w[first] += 0.5 * h;
    w[last] += 0.5 * h;
    return;
  }
  std::size_t simpson_end = (m % 2 == 0) ? last : last - 3;
  for (std::size_t i = first; i + 2 <= simpson_end; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (m % 2 == 1) {
    std::size_t i = last - 3;
    w[i] += 3.0 * h / 8.0;
    w[i + 1] += 9.0 * h / 8.0;
    w[i + 2] += 9.0 * h / 8.0;
    w[i + 3] += 3.0 * h / 8.0;
  }
}

std::vector<double> simpson_weights(std::size_t n, double length) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("simpson_weights: node count must be odd and >= 3");
  std::vector<double> w(n, 0.0);
  add_segment_weights(0, n - 1, length / static_cast<double>(n - 1), w);
  return w;
}

double integrate_samples(std::span<const double> values, double length) {
  std::size_t n = values.size();
  if (n < 2) return 0.0;
  std::vector<double> w(n, 0.0);
  add_segment_weights(0, n - 1, length / static_cast<double>(n - 1), w);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += w[i] * values[i];
  return s;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> x(n);
  if (n == 1) {
    x[0] = lo;
    return x;
  }
  for (std::size_t i = 0; i < n; ++i)
    x[i] = (i + 1 == n) ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return x;
}

}  // namespace hbvp
