// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "classical_oracle.hpp"
#include "energy_fixtures.hpp"
#include "fixtures.hpp"
#include "green_check.hpp"
#include "hbvp/assembly.hpp"
#include "hbvp/specfun.hpp"
#include "hbvp/verify.hpp"
#include "hilfer_check.hpp"
#include "picard.hpp"
#include "random_expr.hpp"

using namespace hbvp;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

Outcome mittag_leffler_identities() {
  double worst = 0.0;
  for (int i = 0; i <= 5000; ++i) {
    double z = -50.0 * i / 5000.0;
    auto rel = [](double v, double ref) { return std::fabs(v - ref) / std::fabs(ref); };
    worst = std::max(worst, rel(mittag_leffler({1.0, 1.0}, z), std::exp(z)));
    if (z != 0.0) worst = std::max(worst, rel(mittag_leffler({1.0, 2.0}, z), std::expm1(z) / z));
    long double x = -z;
    worst = std::max(worst, rel(mittag_leffler({0.5, 1.0}, z), static_cast<double>(std::exp(x * x) * std::erfc(x))));
    // cos has zeros on the range; its error is taken relative to max(|cos|, 1).
    double c = std::cos(z);
    worst = std::max(worst, std::fabs(mittag_leffler({2.0, 1.0}, -z * z) - c) / std::max(std::fabs(c), 1.0));
  }
  return {worst <= 1e-10, "max relative error " + sci(worst)};
}

Outcome hilfer_eigenfunctions() {
  double worst = 0.0;
  for (double a : {0.4, 0.6, 0.9})
    for (double mu : {0.0, 0.5, 1.0})
      for (double lam : {1.0, 5.0})
        for (double t : {0.3, 0.7}) worst = std::max(worst, fixtures::hilfer_eigen_residual(a, mu, lam, t));
  return {worst <= 1e-4, "36 cases, max relative residual " + sci(worst)};
}

Outcome green_property() {
  std::mt19937 rng(31);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) worst = std::max(worst, fixtures::green_defining_residual(fixtures::random_green_case(rng), 257));
  double gap = std::max(fixtures::green_continuity_gap(1.0), fixtures::green_continuity_gap(2.5));
  return {worst <= 1e-6 && gap <= 1e-6, "residual/max|F| " + sci(worst) + ", A->0 gap " + sci(gap)};
}

Outcome homogeneous_uniqueness() {
  auto s = fixtures::standard(0.7, 0.4, "0");
  auto f = assemble(s, solve_fredholm(build_kernel(s, 257)), 1024);
  double worst = 0.0;
  for (const auto& r : sample_grid(f, 101, 101)) worst = std::max(worst, std::fabs(r.u));
  return {worst <= 1e-10, "sup |u| on 101x101 " + sci(worst)};
}

Outcome classical_limit() {
  fixtures::ClassicalOracle oracle;
  auto s = fixtures::classical();
  auto f = assemble(s, solve_fredholm(build_kernel(s, 257)), 1024);
  double heat = 0.0, wave = 0.0;
  for (const auto& r : sample_grid(f, 51, 51)) {
    double e = std::fabs(r.u - oracle.u(r.x, r.t));
    (r.t > 0.0 ? heat : wave) = std::max(r.t > 0.0 ? heat : wave, e);
  }
  return {heat <= 1e-8 && wave <= 1e-8, "heat " + sci(heat) + ", d'Alembert " + sci(wave)};
}

VerificationReport standard_suite(int nodes, std::size_t modes, std::size_t grid) {
  auto s = fixtures::standard();
  auto f = assemble(s, solve_fredholm(build_kernel(s, nodes)), modes);
  return residual_suite(s, f, {grid, grid});
}

Outcome standard_residuals() {
  auto fine = standard_suite(257, 1024, 11);
  auto coarse = standard_suite(129, 512, 6);
  bool pass = fine.all_passed();
  std::ostringstream os;
  for (std::size_t i = 0; i < fine.entries.size(); ++i) {
    const auto& f = fine.entries[i];
    const auto& c = coarse.entries[i];
    // Values under 1e-3 of the tolerance sit at the checker's own floor.
    bool floor = f.value <= 1e-3 * f.tolerance && c.value <= 1e-3 * c.tolerance;
    bool shrinks = floor || f.value <= 1.1 * c.value;
    pass = pass && f.pass && shrinks;
    os << f.name << " " << sci(c.value) << "->" << sci(f.value) << (f.pass ? "" : " over") << (shrinks ? "" : " grew")
       << (i + 1 < fine.entries.size() ? ", " : "");
  }
  return {pass, os.str()};
}

Outcome picard() {
  auto r = fixtures::picard_check();
  return {r.gap <= 1e-8 && r.contraction < 1.0, "contraction " + sci(r.contraction) + ", gap " + sci(r.gap)};
}

Outcome energy() {
  double worst = 0.0;
  int minus = 0, decided = 0;
  for (const auto& c : fixtures::energy_cases()) {
    auto r = fixtures::run_energy_case(c);
    worst = std::max(worst, std::fabs(r.I_direct - r.I_decomposed) / (1.0 + std::fabs(r.I_direct)));
    if (r.sign_conclusion != SignConclusion::Both) {
      ++decided;
      minus += r.sign_conclusion == SignConclusion::Minus;
    }
  }
  std::string sign = minus == decided ? "minus Q-diagonal sign matched" : "sign results mixed";
  return {worst <= 1e-8 && minus == decided && decided > 0,
          "10 cases, max gap " + sci(worst) + "; " + sign + " in " + std::to_string(decided) + " deciding cases"};
}

Outcome conditions() {
  bool standard = check_uniqueness_conditions(fixtures::standard(), 64).all_passed();
  auto s = fixtures::standard();
  s.P = Expr::parse("x*z", {"x", "z"});
  auto sep = check_uniqueness_conditions(s, 64);
  bool sep_rejected = !sep.all_passed() && !sep.find("P_SEPARABLE")->passed;
  s = fixtures::standard();
  s.gamma[1] = -0.5;
  auto sign = check_uniqueness_conditions(s, 64);
  bool sign_rejected = !sign.all_passed() && !sign.find("GAMMA2_NONNEG")->passed;
  return {standard && sep_rejected && sign_rejected, std::string("standard ") + (standard ? "accepted" : "rejected") +
                                                       ", P=x*z " + (sep_rejected ? "rejected" : "accepted") +
                                                       ", gamma2<0 " + (sign_rejected ? "rejected" : "accepted")};
}

Outcome parser() {
  auto r = fixtures::check_derivatives(1000, 4242);
  auto value = [](const char* t) { return Expr::parse(t, {}).evaluate(std::span<const double>{}); };
  bool prec = value("2+3*4") == 14.0 && value("2^3^2") == 512.0 && value("-2^2") == -4.0;
  return {r.accepted == 1000 && r.worst <= 1e-6 && prec,
          std::to_string(r.accepted) + " derivatives, worst " + sci(r.worst) + ", precedence " + (prec ? "exact" : "wrong")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
  };
  const Criterion criteria[] = {
      {1, "Mittag-Leffler identities", mittag_leffler_identities, 5},
      {2, "Hilfer eigenfunction certificate", hilfer_eigenfunctions, 30},
      {3, "Green's function defining property", green_property, 0},
      {4, "homogeneous uniqueness", homogeneous_uniqueness, 0},
      {5, "classical-limit equivalence", classical_limit, 60},
      {6, "residual suite on the standard fixture", standard_residuals, 120},
      {7, "Fredholm solver vs Picard oracle", picard, 0},
      {8, "energy identity", energy, 0},
      {9, "uniqueness condition checker", conditions, 0},
      {10, "parser derivatives and precedence", parser, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.budget_s == 0 || secs < c.budget_s;
    bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%-4s criterion %2d  %-38s %s [%.2fs%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                in_time ? "" : " over budget");
    std::fflush(stdout);
  }
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
