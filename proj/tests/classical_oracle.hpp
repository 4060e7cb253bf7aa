#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace fixtures {

// Closed-form solution of the alpha = 1, gamma = (1, 0, 0), k = l = 1
// problem with psi = x^2 (1-x)^2, built without the library.
//   Trace: tau'' - tau' = -2 psi', tau(0) = tau(1) = 0.
//   t > 0: heat equation by separation of variables.
//   t < 0: u = tau(x+t) - psi(x+t) + psi(x-t).
class ClassicalOracle {
 public:
  ClassicalOracle() {
    // psi = x^2 - 2x^3 + x^4.
    psi_ = {0, 0, 1, -2, 1};
    std::vector<double> p = scale(derive(psi_), -2.0);
    // r' - r = p  =>  r = -(p + p' + p'' + ...), q = int r.
    std::vector<double> r(p.size(), 0.0), d = p;
    while (!d.empty()) {
      for (std::size_t i = 0; i < d.size(); ++i) r[i] -= d[i];
      d = derive(d);
    }
    q_ = integrate(r);
    // tau = q + a + b e^x.
    double q0 = eval(q_, 0.0), q1 = eval(q_, 1.0);
    b_ = (q0 - q1) / (std::exp(1.0) - 1.0);
    a_ = -q0 - b_;
    // Sine coefficients by 64-point Gauss-Legendre on 16 panels.
    const int panels = 16;
    std::vector<double> gx, gw;
    gauss(20, gx, gw);
    coeffs_.resize(400);
    for (std::size_t n = 1; n <= coeffs_.size(); ++n) {
      double s = 0.0;
      for (int p2 = 0; p2 < panels; ++p2)
        for (std::size_t k = 0; k < gx.size(); ++k) {
          double x = (p2 + 0.5 * (1 + gx[k])) / panels;
          s += 0.5 / panels * gw[k] * tau(x) * std::sin(n * std::numbers::pi * x);
        }
      coeffs_[n - 1] = 2.0 * s;
    }
  }

  double psi(double x) const { return eval(psi_, x); }
  double tau(double x) const { return eval(q_, x) + a_ + b_ * std::exp(x); }

  double u(double x, double t) const {
    if (t < 0.0) return tau(x + t) - psi(x + t) + psi(x - t);
    if (t == 0.0) return tau(x);
    double s = 0.0;
    for (std::size_t n = 1; n <= coeffs_.size(); ++n) {
      double lam = n * std::numbers::pi;
      s += coeffs_[n - 1] * std::exp(-lam * lam * t) * std::sin(lam * x);
    }
    return s;
  }

 private:
  static std::vector<double> derive(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
    return d;
  }
  static std::vector<double> integrate(const std::vector<double>& c) {
    std::vector<double> d{0.0};
    for (std::size_t i = 0; i < c.size(); ++i) d.push_back(c[i] / static_cast<double>(i + 1));
    return d;
  }
  static std::vector<double> scale(std::vector<double> c, double f) {
    for (double& v : c) v *= f;
    return c;
  }
  static double eval(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) s = s * x + c[i];
    return s;
  }
  // Gauss-Legendre by Newton on the Legendre recurrence.
  static void gauss(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)), dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        double dz = p1 / dp;
        z -= dz;
        if (std::fabs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }

  std::vector<double> psi_, q_, coeffs_;
  double a_ = 0.0, b_ = 0.0;
};

}  // namespace fixtures
