#include "hbvp/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hbvp/quadrature.hpp"
#include "hbvp/specfun.hpp"
#include "parallel.hpp"

namespace hbvp {

TraceSet::TraceSet(CubicSpline tau, Expr psi, double nu1_factor)
    : tau_(std::move(tau)), psi_(std::move(psi)), dpsi_(psi_.differentiate("x")), nu1_factor_(nu1_factor) {}

double TraceSet::nu2_integral(double a, double b) const {
  return tau_(b) - tau_(a) - 2.0 * (psi_(b) - psi_(a));
}

TraceSet build_traces(const ProblemSpec& spec, const TauSolution& tau) {
  const double b = spec.beta();
  // nu1 = k alpha Gamma(beta) / Gamma(alpha + beta) tau1''
  double factor = spec.k * spec.alpha * gamma(b) / gamma(spec.alpha + b);
  return TraceSet(tau.interpolant, spec.psi, factor);
}

double SolutionField::lambda(std::size_t n) const {
  return static_cast<double>(n) * std::numbers::pi / spec.l;
}

double SolutionField::mode_time_factor(std::size_t n, double t) const {
  const double b = spec.beta();
  const double lam = lambda(n);
  return gamma(b) * std::pow(t, b - 1.0) *
         mittag_leffler({spec.alpha, b}, -spec.k * lam * lam * std::pow(t, spec.alpha));
}

SolutionField assemble(const ProblemSpec& spec, TraceSet traces, std::size_t n_modes) {
  if (n_modes < 1) throw std::invalid_argument("assemble: need at least one mode");
  SolutionField f;
  f.spec = spec;
  f.traces = std::move(traces);
  f.sine_coeffs.resize(n_modes);
  const double l = spec.l;
  for (std::size_t n = 1; n <= n_modes; ++n)
    f.sine_coeffs[n - 1] = 2.0 / l * f.traces.tau().sine_moment(f.lambda(n));
  f.tail_abs_sum.assign(n_modes + 1, 0.0);
  for (std::size_t m = n_modes; m-- > 0;) f.tail_abs_sum[m] = f.tail_abs_sum[m + 1] + std::fabs(f.sine_coeffs[m]);
  double scale = 1.0;
  for (double v : f.traces.tau().values()) scale = std::max(scale, std::fabs(v));
  f.series_tolerance = 1e-12 * scale;
  return f;
}

SolutionField assemble(const ProblemSpec& spec, const TauSolution& tau, std::size_t n_modes) {
  return assemble(spec, build_traces(spec, tau), n_modes);
}

namespace {

struct TimeFactors {
  std::vector<double> factor;  // per summed mode
  double tail_bound = 0.0;
};

TimeFactors time_factors(const SolutionField& f, double t) {
  if (!(t > 0.0)) throw std::out_of_range("eval_parabolic: t must be > 0");
  const double b = f.spec.beta();
  const double pref = gamma(b) * std::pow(t, b - 1.0);
  const double ta = std::pow(t, f.spec.alpha);
  const MittagLeffler& E = [&]() -> const MittagLeffler& {
    thread_local MittagLeffler cached(f.spec.alpha, b);
    if (cached.alpha() != f.spec.alpha || cached.beta() != b) cached = MittagLeffler(f.spec.alpha, b);
    return cached;
  }();
  TimeFactors tf;
  tf.factor.reserve(64);
  for (std::size_t n = 1; n <= f.N(); ++n) {
    double lam = f.lambda(n);
    double v = pref * E(-f.spec.k * lam * lam * ta);
    // E_{alpha,beta}(-s) decreases in s, so this bounds every remaining mode.
    double bound = std::fabs(v) * f.tail_abs_sum[n - 1];
    if (bound <= f.series_tolerance) {
      tf.tail_bound = bound;
      return tf;
    }
    tf.factor.push_back(v);
  }
  tf.tail_bound = 0.0;
  if (!tf.factor.empty()) {
    double lam = f.lambda(f.N() + 1);
    tf.tail_bound = pref * E(-f.spec.k * lam * lam * ta) * f.tail_abs_sum[f.N()];
  }
  return tf;
}

double sum_modes(const SolutionField& f, const TimeFactors& tf, double x) {
  double s = 0.0;
  const double r = x / f.spec.l;
  for (std::size_t i = 0; i < tf.factor.size(); ++i)
    s += f.sine_coeffs[i] * tf.factor[i] * sin_pi(static_cast<double>(i + 1) * r);
  return s;
}

}  // namespace

SeriesValue eval_parabolic_detail(const SolutionField& f, double x, double t) {
  if (x < 0.0 || x > f.spec.l) throw std::out_of_range("eval_parabolic: x outside [0, l]");
  TimeFactors tf = time_factors(f, t);
  return {sum_modes(f, tf, x), tf.factor.size(), tf.tail_bound};
}

double eval_parabolic(const SolutionField& f, double x, double t) { return eval_parabolic_detail(f, x, t).value; }

std::vector<double> eval_parabolic_row(const SolutionField& f, const std::vector<double>& xs, double t) {
  TimeFactors tf = time_factors(f, t);
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = sum_modes(f, tf, xs[i]);
  return out;
}

double eval_hyperbolic(const SolutionField& f, double x, double t) {
  const double l = f.spec.l;
  const double tol = 1e-12 * l;
  if (!(t <= 0.0) || t < -0.5 * l - tol || x < -t - tol || x > t + l + tol)
    throw std::out_of_range("eval_hyperbolic: point outside the characteristic triangle");
  double a = std::clamp(x - t, 0.0, l);
  double b = std::clamp(x + t, 0.0, l);
  const TraceSet& tr = f.traces;
  return 0.5 * (tr.tau2(b) + tr.tau2(a) + tr.nu2_integral(a, b));
}

double eval(const SolutionField& f, double x, double t) {
  Region r = classify(x, t, {f.spec.l, f.spec.T});
  if (r == Region::Outside) throw std::out_of_range("eval: point outside the domain");
  if (t > 0.0) return eval_parabolic(f, x, t);
  if (t < 0.0) return eval_hyperbolic(f, x, t);
  return f.traces.tau2(x);
}

std::vector<GridRow> sample_grid(const SolutionField& f, std::size_t nx, std::size_t nt) {
  if (nx < 2 || nt < 2) throw std::invalid_argument("sample_grid: need at least 2 points per axis");
  const double l = f.spec.l, T = f.spec.T;
  const double share = (nt - 1) * (0.5 * l) / (0.5 * l + T);
  const auto n_neg = static_cast<std::size_t>(std::clamp<double>(std::round(share), 0.0, static_cast<double>(nt - 2)));
  std::vector<double> ts = linspace(-0.5 * l, 0.0, n_neg + 1);
  if (n_neg == 0) ts = {0.0};
  const std::size_t n_pos = nt - ts.size();
  for (std::size_t j = 1; j <= n_pos; ++j) ts.push_back(T * static_cast<double>(j) / static_cast<double>(n_pos));

  std::vector<GridRow> rows(nx * nt);
  detail::parallel_for(nt, [&](std::size_t j) {
    const double t = ts[j];
    std::vector<double> xs = t < 0.0 ? linspace(-t, l + t, nx) : linspace(0.0, l, nx);
    std::vector<double> us(nx);
    const char* region = "interface";
    if (t > 0.0) {
      us = eval_parabolic_row(f, xs, t);
      region = "parabolic";
    } else if (t < 0.0) {
      for (std::size_t i = 0; i < nx; ++i) us[i] = eval_hyperbolic(f, xs[i], t);
      region = "hyperbolic";
    } else {
      for (std::size_t i = 0; i < nx; ++i) us[i] = f.traces.tau2(xs[i]);
    }
    for (std::size_t i = 0; i < nx; ++i) rows[j * nx + i] = {xs[i], t, us[i], region};
  });
  return rows;
}

}  // namespace hbvp
