#pragma once

#include <cmath>

#include "fixtures.hpp"
#include "hbvp/fredholm.hpp"
#include "hbvp/spline.hpp"

namespace fixtures {

struct PicardResult {
  double contraction;  // max-norm bound of the discrete integral operator
  double gap;          // max |tau_LU(x) - tau_Picard(x)| over the Picard nodes
};

// standard fixture with gamma2 = gamma3 = 0.05. Picard iteration
// tau <- F2 + int K tau runs for 50 steps on a 129-node grid with
// trapezoid weights on each side of the kink and compares against the LU
// solve at 257 nodes.
inline PicardResult picard_check() {
  auto s = standard();
  s.gamma = {1.0, 0.05, 0.05};
  const int n = 129;
  auto kern = hbvp::build_kernel(s, n);
  const double h = s.l / (n - 1);
  // Independent weights: composite trapezoid on [0, x_i] and [x_i, l].
  Eigen::MatrixXd W = Eigen::MatrixXd::Constant(n, n, h);
  W.col(0).setConstant(0.5 * h);
  W.col(n - 1).setConstant(0.5 * h);
  for (int i = 1; i + 1 < n; ++i) W(i, i) = h;
  PicardResult r{0.0, 0.0};
  Eigen::MatrixXd op = kern.Kmat.cwiseProduct(W);
  r.contraction = op.cwiseAbs().rowwise().sum().maxCoeff();
  Eigen::VectorXd tau = kern.F2vec;
  for (int m = 0; m < 50; ++m) {
    tau = kern.F2vec + op * tau;
    tau(0) = tau(n - 1) = 0.0;
  }
  // Richardson on the trapezoid error: repeat at twice the resolution.
  const int n2 = 2 * n - 1;
  auto kern2 = hbvp::build_kernel(s, n2);
  const double h2 = s.l / (n2 - 1);
  Eigen::MatrixXd W2 = Eigen::MatrixXd::Constant(n2, n2, h2);
  W2.col(0).setConstant(0.5 * h2);
  W2.col(n2 - 1).setConstant(0.5 * h2);
  Eigen::MatrixXd op2 = kern2.Kmat.cwiseProduct(W2);
  Eigen::VectorXd tau2 = kern2.F2vec;
  for (int m = 0; m < 50; ++m) {
    tau2 = kern2.F2vec + op2 * tau2;
    tau2(0) = tau2(n2 - 1) = 0.0;
  }
  auto lu = hbvp::solve_fredholm(kern2);
  for (int i = 0; i < n; ++i) {
    double extrap = (4.0 * tau2(2 * i) - tau(i)) / 3.0;
    r.gap = std::max(r.gap, std::fabs(extrap - lu.values[2 * i]));
  }
  return r;
}

}  // namespace fixtures
