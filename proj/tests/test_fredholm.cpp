#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "hbvp/assembly.hpp"
#include "hbvp/fredholm.hpp"
#include "hbvp/verify.hpp"
#include "picard.hpp"

using namespace hbvp;

namespace {

// max over interior nodes of |tau'' - A tau' - F1|, derivatives by
// 5-point central differences on the nodal values.
double ode_residual(const ProblemSpec& spec, const KernelOptions& opt, int n) {
  auto kern = build_kernel(spec, n, opt);
  auto tau = solve_fredholm(kern);
  auto traces = build_traces(spec, tau);
  double worst = 0.0;
  const double h = spec.l / (n - 1);
  const auto& v = tau.values;
  for (int i = 2; i + 2 < n; ++i) {
    double d1 = (v[i - 2] - 8 * v[i - 1] + 8 * v[i + 1] - v[i + 2]) / (12 * h);
    double d2 = (-v[i - 2] + 16 * v[i - 1] - 30 * v[i] + 16 * v[i + 1] - v[i + 2]) / (12 * h * h);
    double r = d2 - kern.coeff.A * d1 - trace_ode_rhs(spec, traces, tau.nodes[i]);
    worst = std::max(worst, std::fabs(r));
  }
  return worst;
}

}  // namespace

TEST_CASE("kernel structure") {
  auto s = fixtures::standard();
  auto k = build_kernel(s, 33);
  double wsum = 0.0;
  for (double w : k.weights) wsum += w;
  CHECK(wsum == doctest::Approx(s.l).epsilon(1e-12));
  for (int i = 0; i < 33; ++i) CHECK(k.row_weights.row(i).sum() == doctest::Approx(s.l).epsilon(1e-12));
  CHECK(k.Kmat.allFinite());
  CHECK(k.F2vec.allFinite());

  auto s0 = s;
  s0.gamma = {1.0, 0.0, 0.0};
  CHECK(build_kernel(s0, 33).Kmat.cwiseAbs().maxCoeff() == 0.0);
  auto z = fixtures::standard(0.7, 0.4, "0");
  CHECK(build_kernel(z, 33).F2vec.cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS(build_kernel(s, 16));
  CHECK_THROWS(build_kernel(s, 15));
}

TEST_CASE("kernel refinement at shared nodes") {
  auto s = fixtures::standard();
  auto a = build_kernel(s, 33), b = build_kernel(s, 65);
  double worst = 0.0;
  for (int i = 0; i < 33; ++i)
    for (int j = 0; j < 33; ++j) worst = std::max(worst, std::fabs(a.Kmat(i, j) - b.Kmat(2 * i, 2 * j)));
  CHECK(worst <= 1e-6);
}

TEST_CASE("trivial solves") {
  auto s = fixtures::standard();
  s.gamma = {1.0, 0.0, 0.0};
  auto k = build_kernel(s, 33);
  auto tau = solve_fredholm(k);
  for (int i = 1; i + 1 < 33; ++i) CHECK(tau.values[i] == doctest::Approx(k.F2vec(i)).epsilon(1e-15));
  auto zero = solve_fredholm(build_kernel(fixtures::standard(0.7, 0.4, "0"), 33));
  for (double v : zero.values) CHECK(v == 0.0);
}

TEST_CASE("solution properties on the standard fixture") {
  auto s = fixtures::standard();
  auto k = build_kernel(s, 257);
  auto tau = solve_fredholm(k);
  CHECK(std::fabs(tau(0.0)) <= 1e-10);
  CHECK(std::fabs(tau(s.l)) <= 1e-10);
  CHECK(fredholm_residual(k, tau.values) <= 1e-12);
  CHECK(tau.condition_estimate < kNearSingular);

  auto coarse = solve_fredholm(build_kernel(s, 129));
  double diff = 0.0;
  for (int i = 0; i < 129; ++i) diff = std::max(diff, std::fabs(coarse.values[i] - tau.values[2 * i]));
  CHECK(diff <= 1e-6);

  auto doubled = solve_fredholm(build_kernel(fixtures::standard(0.7, 0.4, "2*x^2*(l-x)^2"), 257));
  for (int i = 0; i < 257; ++i)
    CHECK(std::fabs(doubled.values[i] - 2.0 * tau.values[i]) <= 1e-10 * std::fabs(2.0 * tau.values[i]) + 1e-15);
}

TEST_CASE("Picard oracle on a contractive configuration") {
  auto r = fixtures::picard_check();
  CHECK(r.contraction < 1.0);
  CHECK(r.gap <= 1e-8);
}

TEST_CASE("trace ODE consistency arbitrates the kernel variants") {
  auto s = fixtures::standard();
  double plain = ode_residual(s, {}, 257);
  MESSAGE("ODE residual " << plain);
  CHECK(plain <= 1e-4);
  KernelOptions f2;
  f2.f2_with_psi = true;
  CHECK(ode_residual(s, f2, 257) > 1e-2);
  KernelOptions kern;
  kern.kernel_q_upper = true;
  CHECK(ode_residual(s, kern, 257) > 1e-2);
  KernelOptions green;
  green.green_x_denominator = true;
  CHECK(ode_residual(s, green, 257) > 1e-2);
}

TEST_CASE("expression failures surface as solver errors") {
  auto s = fixtures::standard();
  s.P = Expr::parse("log(x-0.5)", {"x", "z"});
  try {
    build_kernel(s, 33);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.code() == "EXPRESSION_FAILURE");
  }
}
