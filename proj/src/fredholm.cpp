#include "hbvp/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <functional>

#include "hbvp/quadrature.hpp"
#include "parallel.hpp"

namespace hbvp {

namespace {

constexpr int kInnerPanels = 4;
constexpr int kInnerOrder = 8;

// Gauss-Legendre over [lo, hi] with panel breaks at a uniform partition of
// [0, l] and at the kink x.
double smooth_integral(const std::function<double(double)>& f, double lo, double hi, double l, double x) {
  double breaks[kInnerPanels];
  for (int p = 0; p + 1 < kInnerPanels; ++p) breaks[p] = l * (p + 1) / kInnerPanels;
  breaks[kInnerPanels - 1] = x;
  return integrate_with_breaks(f, lo, hi, breaks, kInnerOrder);
}

template <class Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw SolverError("EXPRESSION_FAILURE", std::string(what) + ": " + e.what());
  }
}

}  // namespace

DiscretizedKernel build_kernel(const ProblemSpec& s, int n_nodes, const KernelOptions& opt) {
  if (n_nodes < 17 || n_nodes % 2 == 0) throw std::invalid_argument("build_kernel: n_nodes must be odd and >= 17");
  const auto n = static_cast<std::size_t>(n_nodes);
  const double l = s.l;
  const double h = l / static_cast<double>(n - 1);
  const auto [g1, g2, g3] = s.gamma;

  DiscretizedKernel kern;
  kern.l = l;
  kern.coeff = coefficient_A(s);
  const double A = kern.coeff.A, C = kern.coeff.C;
  kern.nodes = linspace(0.0, l, n);
  kern.weights = simpson_weights(n, l);
  kern.row_weights = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(w.begin(), w.end(), 0.0);
    add_segment_weights(0, i, h, w);
    add_segment_weights(i, n - 1, h, w);
    for (std::size_t j = 0; j < n; ++j) kern.row_weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w[j];
  }

  auto G = [&](double x, double xi) {
    return opt.green_x_denominator ? green_g0_x_denominator(x, xi, A, l) : green_g0(x, xi, A, l);
  };
  const Expr dP = s.P.differentiate("z");
  const Expr dQ = s.Q.differentiate("z");
  const Expr dpsi = s.psi.differentiate("x");

  auto kernel_at = [&](double x, double xi) {
    double v = G(x, xi) * (g2 * s.P(xi, xi) - g3 * s.Q(xi, xi));
    if (opt.kernel_q_upper) {
      v -= smooth_integral([&](double z) { return (g2 * dP(z, xi) + g3 * dQ(z, xi)) * G(x, z); }, xi, l, l, x);
    } else {
      if (g2 != 0.0) v -= g2 * smooth_integral([&](double z) { return dP(z, xi) * G(x, z); }, xi, l, l, x);
      if (g3 != 0.0) v -= g3 * smooth_integral([&](double z) { return dQ(z, xi) * G(x, z); }, 0.0, xi, l, x);
    }
    return C * v;
  };

  kern.Kmat = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  kern.nystrom = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
  if (g2 != 0.0 || g3 != 0.0) {
    detail::parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = 0; j < n; ++j)
        kern.Kmat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            guarded("kernel", [&] { return kernel_at(kern.nodes[i], kern.nodes[j]); });
    });
    kern.nystrom = kern.Kmat.cwiseProduct(kern.row_weights);

    // Rows 1 and n-2 have a one-interval segment between the kink and the
    // end, where the trapezoid rule would cost two orders. There K is
    // sampled at Gauss points and tau replaced by the cubic through the four
    // nearest nodes (tau is smooth across the kink, K is not).
    const QuadratureRule& gl = gauss_legendre(8);
    auto correct = [&](std::size_t row, std::size_t a0, std::size_t b0, std::array<std::size_t, 4> stencil) {
      const auto r = static_cast<Eigen::Index>(row);
      const double x = kern.nodes[row], lo = kern.nodes[a0], hi = kern.nodes[b0];
      kern.nystrom(r, static_cast<Eigen::Index>(a0)) -= 0.5 * h * kern.Kmat(r, static_cast<Eigen::Index>(a0));
      kern.nystrom(r, static_cast<Eigen::Index>(b0)) -= 0.5 * h * kern.Kmat(r, static_cast<Eigen::Index>(b0));
      for (std::size_t g = 0; g < gl.nodes.size(); ++g) {
        double xi = 0.5 * (lo + hi) + 0.5 * h * gl.nodes[g];
        double kw = 0.5 * h * gl.weights[g] * guarded("kernel", [&] { return kernel_at(x, xi); });
        for (std::size_t m : stencil) {
          double L = 1.0;
          for (std::size_t q : stencil)
            if (q != m) L *= (xi - kern.nodes[q]) / (kern.nodes[m] - kern.nodes[q]);
          kern.nystrom(r, static_cast<Eigen::Index>(m)) += kw * L;
        }
      }
    };
    correct(1, 0, 1, {0, 1, 2, 3});
    correct(n - 2, n - 2, n - 1, {n - 4, n - 3, n - 2, n - 1});
  }

  // Right side: F2(x) = int G(x, xi) r(xi) dxi with r the psi-part of F1.
  auto r = [&](double xi) {
    double v = opt.f2_with_psi ? g1 * s.psi(xi) : g1 * dpsi(xi);
    if (g2 != 0.0) v += g2 * smooth_integral([&](double z) { return dpsi(z) * s.P(xi, z); }, 0.0, xi, l, xi);
    if (g3 != 0.0) v += g3 * smooth_integral([&](double z) { return dpsi(z) * s.Q(xi, z); }, xi, l, l, xi);
    return -2.0 * C * v;
  };
  kern.F2vec = Eigen::VectorXd::Zero(n_nodes);
  detail::parallel_for(n, [&](std::size_t i) {
    const double x = kern.nodes[i];
    if (i == 0 || i + 1 == n) return;
    kern.F2vec(static_cast<Eigen::Index>(i)) =
        guarded("right side", [&] { return smooth_integral([&](double xi) { return G(x, xi) * r(xi); }, 0.0, l, l, x); });
  });
  if (!kern.Kmat.allFinite() || !kern.F2vec.allFinite())
    throw SolverError("EXPRESSION_FAILURE", "kernel or right side is not finite on [0,l]^2");
  return kern;
}

TauSolution solve_fredholm(const DiscretizedKernel& kern) {
  const auto n = static_cast<Eigen::Index>(kern.nodes.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n) - kern.nystrom;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
  double rc = lu.rcond();
  double cond = rc > 0.0 ? 1.0 / rc : INFINITY;
  if (!(cond < kNearSingular))
    throw SolverError("NEAR_SINGULAR", "Nystrom matrix is near singular (condition estimate " + std::to_string(cond) + ")");
  Eigen::VectorXd tau = lu.solve(kern.F2vec);
  TauSolution sol;
  sol.nodes = kern.nodes;
  sol.values.assign(tau.data(), tau.data() + n);
  // G0 vanishes at both ends, so the trace does too.
  sol.values.front() = 0.0;
  sol.values.back() = 0.0;
  sol.interpolant = CubicSpline(0.0, kern.l, sol.values);
  sol.condition_estimate = cond;
  return sol;
}

double fredholm_residual(const DiscretizedKernel& kern, const std::vector<double>& tau) {
  const auto n = static_cast<Eigen::Index>(tau.size());
  Eigen::Map<const Eigen::VectorXd> t(tau.data(), n);
  Eigen::VectorXd r = t - kern.nystrom * t - kern.F2vec;
  return r.cwiseAbs().maxCoeff();
}

}  // namespace hbvp
