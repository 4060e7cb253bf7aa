#include "hbvp/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <string>

namespace hbvp {

namespace {

constexpr double kGammaMax = 171.6;

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) c += (sum - t) + v;
    else c += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

}  // namespace

double gamma(double x) {
  if (!(x > 0.0) || x > kGammaMax)
    throw ParameterError("gamma: argument out of range (0, 171.6]: " + std::to_string(x));
  return std::tgamma(x);
}

double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  double sign = 1.0;
  if (r >= 1.0) {
    r -= 1.0;
    sign = -1.0;
  }
  if (r == 0.0) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(std::numbers::pi * r);
}

double rgamma(double x) {
  if (!std::isfinite(x)) throw ParameterError("rgamma: non-finite argument");
  if (x > 0.0) return x > kGammaMax ? 0.0 : 1.0 / gamma(x);
  if (x == std::floor(x)) return 0.0;
  // Reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi.
  double g = (1.0 - x) > kGammaMax ? std::numeric_limits<double>::infinity() : gamma(1.0 - x);
  return g * sin_pi(x) / std::numbers::pi;
}

MittagLeffler::MittagLeffler(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0 && alpha <= 2.0) || !(beta > 0.0 && beta <= 5.0))
    throw ParameterError("Mittag-Leffler parameters outside supported box: alpha=" +
                         std::to_string(alpha) + " beta=" + std::to_string(beta));
  for (int j = 0; j < 256; ++j) {
    double c = rgamma(alpha * j + beta);
    series_coeff_.push_back(c);
    if (c == 0.0) break;
  }
  for (int m = 1; m <= 120; ++m) {
    double c = rgamma(beta - alpha * m);
    if (!std::isfinite(c)) break;
    asym_coeff_.push_back(c);
  }
}

bool MittagLeffler::try_series(double z, double& out) const {
  CompensatedSum s;
  double zp = 1.0;
  double max_term = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < series_coeff_.size(); ++j) {
    double term = zp * series_coeff_[j];
    s.add(term);
    double a = std::fabs(term);
    max_term = std::max(max_term, a);
    if (max_term > 1e4) return false;
    if (a <= prev && a <= 1e-17 * std::fabs(s.value())) {
      out = s.value();
      // Accept at most two digits lost to cancellation.
      return max_term <= 1e2 * std::fabs(out);
    }
    prev = a;
    zp *= z;
  }
  return false;
}

bool MittagLeffler::try_asymptotic(double z, double& out) const {
  if (alpha_ > 1.0) return false;  // oscillating pole contributions dominate
  const double w = 1.0 / z;
  std::vector<double> terms;
  terms.reserve(asym_coeff_.size());
  double wp = w;
  for (double c : asym_coeff_) {
    terms.push_back(-wp * c);
    wp *= w;
    if (std::fabs(terms.back()) > 1e300) break;
  }
  if (terms.size() < 4) return false;
  // Truncation point minimizing the largest of the next three terms; the
  // window tolerates exact zeros of 1/Gamma at rational alpha.
  std::size_t best = 0;
  double best_err = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m + 3 < terms.size(); ++m) {
    double e = std::max({std::fabs(terms[m + 1]), std::fabs(terms[m + 2]), std::fabs(terms[m + 3])});
    if (e < best_err) {
      best_err = e;
      best = m;
    }
  }
  CompensatedSum s;
  for (std::size_t m = 0; m <= best; ++m) s.add(terms[m]);
  double v = s.value();
  if (alpha_ == 1.0) best_err += std::exp(z) * std::pow(std::fabs(z), 1.0 - beta_);
  if (!(best_err <= 1e-14 * std::fabs(v))) return false;
  out = v;
  return true;
}

double MittagLeffler::contour(double z) const {
  using cd = std::complex<double>;
  constexpr double kLogTol = 39.0;  // ~ -log(1e-17)
  double mu = 3.0;
  double residues = 0.0;
  if (alpha_ > 1.0) {
    // Poles of s^alpha = z on the principal sheet sit at angles +-pi/alpha.
    const double theta = std::numbers::pi / alpha_;
    const double r = std::pow(-z, 1.0 / alpha_);
    mu = std::min(mu, r * (1.0 + std::cos(theta)) / 8.0);
    mu = std::max(mu, 1e-3);
    const cd pole = std::polar(r, theta);
    residues = 2.0 / alpha_ * std::real(std::exp(pole) * std::pow(pole, 1.0 - beta_));
  }
  const double d = 0.8;
  const double h = 2.0 * std::numbers::pi * d / (mu + kLogTol);
  const double umax = std::sqrt(1.0 + kLogTol / mu);
  const int n = static_cast<int>(std::ceil(umax / h));

  auto integrand = [&](double u) {
    cd w(1.0, u);
    cd s = mu * w * w;
    cd sa = std::pow(s, alpha_);
    cd f = std::pow(s, alpha_ - beta_) / (sa - z);
    return std::real(std::exp(s) * f * w);
  };
  CompensatedSum acc;
  acc.add(0.5 * integrand(0.0));
  for (int k = 1; k <= n; ++k) acc.add(integrand(k * h));
  return residues + 2.0 * h * mu / std::numbers::pi * acc.value();
}

MittagLeffler::Evaluation MittagLeffler::evaluate(double z) const {
  if (!(z <= 0.0)) throw ParameterError("Mittag-Leffler argument must be <= 0: " + std::to_string(z));
  if (z == 0.0) return {series_coeff_.front(), Method::Exact};
  if (alpha_ == 1.0 && beta_ == 1.0) return {std::exp(z), Method::Exact};
  if (alpha_ == 1.0 && beta_ == 2.0) return {std::expm1(z) / z, Method::Exact};
  double v = 0.0;
  if (z >= -5.0 && try_series(z, v)) return {v, Method::Series};
  if (try_asymptotic(z, v)) return {v, Method::Asymptotic};
  return {contour(z), Method::Contour};
}

double mittag_leffler(MLParams p, double z) {
  struct Slot {
    double alpha = -1.0, beta = -1.0;
    MittagLeffler* ml = nullptr;
  };
  thread_local std::array<Slot, 8> cache;
  thread_local std::array<std::unique_ptr<MittagLeffler>, 8> owned;
  thread_local std::size_t next = 0;
  for (auto& s : cache)
    if (s.alpha == p.alpha && s.beta == p.beta) return (*s.ml)(z);
  auto ml = std::make_unique<MittagLeffler>(p);
  std::size_t i = next++ % cache.size();
  cache[i] = {p.alpha, p.beta, ml.get()};
  owned[i] = std::move(ml);
  return (*cache[i].ml)(z);
}

double rl_integral_power_ml(MLParams p, double lambda, double sigma, double t) {
  if (!(sigma >= 0.0)) throw ParameterError("rl_integral_power_ml: sigma must be >= 0");
  if (!(t > 0.0)) throw ParameterError("rl_integral_power_ml: t must be > 0");
  if (!(lambda <= 0.0)) throw ParameterError("rl_integral_power_ml: lambda must be <= 0");
  return std::pow(t, p.beta + sigma - 1.0) *
         mittag_leffler({p.alpha, p.beta + sigma}, lambda * std::pow(t, p.alpha));
}

}  // namespace hbvp
