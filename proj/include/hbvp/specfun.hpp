#pragma once

#include <stdexcept>
#include <vector>

namespace hbvp {

/// Thrown when an argument lies outside the supported parameter box.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Gamma function for 0 < x <= 171.6 (Lanczos, g = 7).
double gamma(double x);

/// 1/Gamma(x) for any finite real x; zero at the poles of Gamma.
double rgamma(double x);

/// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);

struct MLParams {
  double alpha;
  double beta;
};

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z) on z <= 0.
///
/// Supported box: 0 < alpha <= 2, 0 < beta <= 5. The pipeline only needs
/// alpha <= 1; alpha in (1, 2] is kept for the cosine identity E_{2,1}(-x^2).
///
/// Small |z| uses the Taylor series (Neumaier summation) whenever its
/// cancellation is harmless, large |z| the optimally truncated asymptotic
/// expansion, and the band in between an inverse-Laplace integral on a
/// parabolic contour (plus pole residues for alpha > 1).
class MittagLeffler {
public:
  enum class Method { Exact, Series, Asymptotic, Contour };
  struct Evaluation {
    double value;
    Method method;
  };

  MittagLeffler(double alpha, double beta);
  explicit MittagLeffler(MLParams p) : MittagLeffler(p.alpha, p.beta) {}

  double operator()(double z) const { return evaluate(z).value; }
  Evaluation evaluate(double z) const;

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

private:
  bool try_series(double z, double& out) const;
  bool try_asymptotic(double z, double& out) const;
  double contour(double z) const;

  double alpha_;
  double beta_;
  std::vector<double> series_coeff_;  // 1/Gamma(alpha j + beta)
  std::vector<double> asym_coeff_;    // 1/Gamma(beta - alpha m), index m-1
};

/// E_{alpha,beta}(z); caches evaluators for recently used parameters.
double mittag_leffler(MLParams p, double z);

/// Closed-form Riemann-Liouville integral of a power-weighted ML function:
/// I^sigma [s^{beta-1} E_{alpha,beta}(lambda s^alpha)](t)
///   = t^{beta+sigma-1} E_{alpha,beta+sigma}(lambda t^alpha).
double rl_integral_power_ml(MLParams p, double lambda, double sigma, double t);

}  // namespace hbvp
