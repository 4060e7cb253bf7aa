#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

#include "hbvp/green.hpp"
#include "hbvp/problem.hpp"
#include "hbvp/spline.hpp"

namespace hbvp {

/// Solver-side failure carrying a stable code (NEAR_SINGULAR,
/// EXPRESSION_FAILURE).
class SolverError : public std::runtime_error {
public:
  SolverError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

struct KernelOptions {
  // Alternative forms, for comparison; each breaks the trace equation.
  bool f2_with_psi = false;          // gamma1 psi instead of gamma1 psi' under the integral
  bool kernel_q_upper = false;       // gamma3 term integrated over [xi, l]
  bool green_x_denominator = false;  // x-denominator Green's function
};

/// Nystrom discretization of tau(x) - int_0^l K(x,xi) tau(xi) dxi = F2(x)
/// on n uniform nodes. Row i integrates with composite weights split at
/// x_i, where K has its kink.
struct DiscretizedKernel {
  double l = 1.0;
  OdeCoefficient coeff{0.0, 0.0};
  std::vector<double> nodes;
  std::vector<double> weights;  // plain composite weights, sum to l
  Eigen::MatrixXd row_weights;  // row_weights(i, j): weight of node j in row i
  Eigen::MatrixXd Kmat;
  /// Effective quadrature operator: Kmat .* row_weights, with product-rule
  /// corrections on the rows next to each end.
  Eigen::MatrixXd nystrom;
  Eigen::VectorXd F2vec;
};

DiscretizedKernel build_kernel(const ProblemSpec& spec, int n_nodes, const KernelOptions& options = {});

struct TauSolution {
  std::vector<double> nodes;
  std::vector<double> values;
  CubicSpline interpolant;
  double condition_estimate = 1.0;

  double operator()(double x) const { return interpolant(x); }
};

constexpr double kNearSingular = 1e12;

TauSolution solve_fredholm(const DiscretizedKernel& kern);

/// max_i |tau_i - (nystrom tau)_i - F2_i|
double fredholm_residual(const DiscretizedKernel& kern, const std::vector<double>& tau);

}  // namespace hbvp
