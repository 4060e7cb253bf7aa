#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hbvp/fredholm.hpp"
#include "hbvp/problem.hpp"
#include "hbvp/spline.hpp"

namespace hbvp {

/// Traces on AB: tau1 = tau2 (the solved trace), nu1 = c tau1'' and
/// nu2 = tau2' - 2 psi'.
class TraceSet {
public:
  TraceSet() = default;
  TraceSet(CubicSpline tau, Expr psi, double nu1_factor);

  double tau1(double x) const { return tau_(x); }
  double tau2(double x) const { return tau_(x); }
  double nu1(double x) const { return nu1_factor_ * tau_.second_derivative(x); }
  double nu2(double x) const { return tau_.derivative(x) - 2.0 * dpsi_(x); }
  /// Signed int_a^b nu2, exact through antiderivatives.
  double nu2_integral(double a, double b) const;

  const CubicSpline& tau() const noexcept { return tau_; }
  const Expr& psi() const noexcept { return psi_; }
  double nu1_factor() const noexcept { return nu1_factor_; }

private:
  CubicSpline tau_;
  Expr psi_, dpsi_;
  double nu1_factor_ = 1.0;
};

TraceSet build_traces(const ProblemSpec& spec, const TauSolution& tau);

struct SeriesValue {
  double value;
  std::size_t terms;  // modes summed
  double tail_bound;  // bound on the dropped modes
};

/// Assembled solution: sine series in the rectangle, d'Alembert in the
/// triangle, regularized trace on AB.
struct SolutionField {
  ProblemSpec spec;
  TraceSet traces;
  std::vector<double> sine_coeffs;   // b_n, n = 1..N
  std::vector<double> tail_abs_sum;  // tail_abs_sum[m] = sum_{n > m} |b_n|
  double series_tolerance = 1e-12;

  std::size_t N() const noexcept { return sine_coeffs.size(); }
  double lambda(std::size_t n) const;
  /// Gamma(beta) t^{beta-1} E_{alpha,beta}(-k lambda_n^2 t^alpha).
  double mode_time_factor(std::size_t n, double t) const;
};

constexpr std::size_t kDefaultModes = 4096;

SolutionField assemble(const ProblemSpec& spec, const TauSolution& tau, std::size_t n_modes = kDefaultModes);
SolutionField assemble(const ProblemSpec& spec, TraceSet traces, std::size_t n_modes = kDefaultModes);

SeriesValue eval_parabolic_detail(const SolutionField& field, double x, double t);
double eval_parabolic(const SolutionField& field, double x, double t);
/// Many x at one t; the time factors are shared.
std::vector<double> eval_parabolic_row(const SolutionField& field, const std::vector<double>& xs, double t);
double eval_hyperbolic(const SolutionField& field, double x, double t);
double eval(const SolutionField& field, double x, double t);

struct GridRow {
  double x, t, u;
  std::string region;  // parabolic, hyperbolic or interface (regularized trace)
};

/// nx * nt samples: t-levels split between [-l/2, 0] and (0, T] in
/// proportion to the lengths; x spans the closure of the region at each t.
std::vector<GridRow> sample_grid(const SolutionField& field, std::size_t nx, std::size_t nt);

}  // namespace hbvp
