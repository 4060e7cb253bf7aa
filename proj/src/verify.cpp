#include "hbvp/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "hbvp/green.hpp"
#include "hbvp/quadrature.hpp"
#include "hbvp/specfun.hpp"
#include "parallel.hpp"

namespace hbvp {

Tolerances Tolerances::scaled(double factor) const {
  Tolerances t = *this;
  for (double& v : t.r) v *= factor;
  return t;
}

bool VerificationReport::all_passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const ResidualEntry& e) { return e.pass; });
}

const ResidualEntry* VerificationReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["passed"] = all_passed();
  j["residuals"] = nlohmann::json::array();
  for (const auto& e : entries)
    j["residuals"].push_back({{"name", e.name},
                              {"description", e.description},
                              {"value", e.value},
                              {"tolerance", e.tolerance},
                              {"pass", e.pass},
                              {"detail", e.detail}});
  return j.dump(2);
}

namespace {

double integrate_on_knots(const std::function<double(double)>& f, double lo, double hi, const CubicSpline& s) {
  auto knots = s.knots();
  return integrate_with_breaks(f, lo, hi, knots, 4);
}

// Fornberg weights for derivatives 0..2 at x0 from nodes xs.
std::array<std::vector<double>, 3> fornberg(double x0, const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::array<std::vector<double>, 3> c;
  for (auto& v : c) v.assign(n, 0.0);
  c[0][0] = 1.0;
  double c1 = 1.0, c4 = xs[0] - x0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 2);
    double c2 = 1.0, c5 = c4;
    c4 = xs[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

double neville_at_zero(const double* s, const double* v, std::size_t n) {
  std::vector<double> p(v, v + n);
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i) p[i] = (s[i + m] * p[i] - s[i] * p[i + 1]) / (s[i + m] - s[i]);
  return p[0];
}

}  // namespace

double conjugation_rhs(const ProblemSpec& s, const TraceSet& tr, double x) {
  double v = s.gamma[0] * tr.nu2(x);
  if (s.gamma[1] != 0.0)
    v += s.gamma[1] * integrate_on_knots([&](double z) { return tr.nu2(z) * s.P(x, z); }, 0.0, x, tr.tau());
  if (s.gamma[2] != 0.0)
    v += s.gamma[2] * integrate_on_knots([&](double z) { return tr.nu2(z) * s.Q(x, z); }, x, s.l, tr.tau());
  return v;
}

double trace_ode_rhs(const ProblemSpec& s, const TraceSet& tr, double x) {
  // gamma1 (nu2 - tau') = -2 gamma1 psi'
  double v = conjugation_rhs(s, tr, x) - s.gamma[0] * tr.tau().derivative(x);
  return coefficient_A(s).C * v;
}

double extrapolation_start(double alpha, double boundary_distance, double T) {
  // The boundary layer decays like exp(-c d / t^{alpha/2}); start where
  // d / t^{alpha/2} is about 30.
  double t0 = 16.0 * std::pow(boundary_distance / 30.0, 2.0 / alpha);
  return std::clamp(t0, 1e-280, std::min(T, 1.0));
}

Extrapolation limit_at_zero(const std::function<double(double)>& g, double alpha, double t0) {
  constexpr int kFirst = 4, kLast = 12;
  std::vector<double> s, v;
  for (int m = kFirst; m <= kLast; ++m) {
    double t = std::ldexp(t0, -m);
    s.push_back(std::pow(t, alpha));
    v.push_back(g(t));
  }
  // The three smallest t carry the expansion in powers of t^alpha.
  const std::size_t n = s.size();
  double p3 = neville_at_zero(&s[n - 3], &v[n - 3], 3);
  double p2 = neville_at_zero(&s[n - 2], &v[n - 2], 2);
  return {p3, std::fabs(p3 - p2)};
}

const char* to_string(SignConclusion s) {
  switch (s) {
    case SignConclusion::Minus: return "minus";
    case SignConclusion::Plus: return "plus";
    case SignConclusion::Both: return "both";
    case SignConclusion::Neither: return "neither";
  }
  return "?";
}

EnergyReport energy_identity_check(const std::function<double(double)>& tau1,
                                   const std::function<double(double)>& dtau1, const ProblemSpec& s,
                                   const std::vector<double>& P1, const std::vector<double>& Q1, int n_panels) {
  if (P1.size() != Q1.size() || P1.size() < 5)
    throw std::invalid_argument("energy_identity_check: P1 and Q1 need the same size >= 5");
  const double l = s.l;
  const auto [g1, g2, g3] = s.gamma;
  CubicSpline p1(0.0, l, P1), q1(0.0, l, Q1);

  // Precondition: the factors reproduce -dP/dz and -dQ/dz.
  const Expr dP = s.P.differentiate("z"), dQ = s.Q.differentiate("z");
  const auto probe = linspace(0.0, l, std::min<std::size_t>(P1.size(), 33));
  auto check = [&](const Expr& d, const CubicSpline& f, const char* name) {
    double err = 0.0, scale = 1.0;
    for (double x : probe)
      for (double z : probe) {
        double m = -d(x, z);
        scale = std::max(scale, std::fabs(m));
        err = std::max(err, std::fabs(m - f(x) * f(z)));
      }
    if (err > 1e-6 * scale)
      throw std::invalid_argument(std::string("energy_identity_check: ") + name +
                                  " is not reproduced by its rank-one factor");
  };
  if (g2 != 0.0) check(dP, p1, "P");
  if (g3 != 0.0) check(dQ, q1, "Q");

  const int inner = std::max(4, n_panels / 8);
  auto nu1 = [&](double x) {
    double v = g1 * dtau1(x);
    if (g2 != 0.0 && x > 0.0) v += g2 * integrate([&](double z) { return dtau1(z) * s.P(x, z); }, 0.0, x, inner);
    if (g3 != 0.0 && x < l) v += g3 * integrate([&](double z) { return dtau1(z) * s.Q(x, z); }, x, l, inner);
    return v;
  };
  EnergyReport r;
  r.I_direct = integrate([&](double x) { return tau1(x) * nu1(x); }, 0.0, l, n_panels);
  r.Phi1_l = integrate([&](double x) { return tau1(x) * p1(x); }, 0.0, l, n_panels);
  r.Phi2_0 = integrate([&](double x) { return tau1(x) * q1(x); }, 0.0, l, n_panels);
  double dp = integrate([&](double x) { double t = tau1(x); return t * t * s.P(x, x); }, 0.0, l, n_panels);
  double dq = integrate([&](double x) { double t = tau1(x); return t * t * s.Q(x, x); }, 0.0, l, n_panels);
  double phi = 0.5 * (g2 * r.Phi1_l * r.Phi1_l + g3 * r.Phi2_0 * r.Phi2_0);
  r.I_decomposed = g2 * dp - g3 * dq + phi;
  r.I_decomposed_plus = g2 * dp + g3 * dq + phi;
  const double tol = 1e-8 * (1.0 + std::fabs(r.I_direct));
  bool minus = std::fabs(r.I_direct - r.I_decomposed) <= tol;
  bool plus = std::fabs(r.I_direct - r.I_decomposed_plus) <= tol;
  r.sign_conclusion = minus && plus ? SignConclusion::Both
                      : minus         ? SignConclusion::Minus
                      : plus          ? SignConclusion::Plus
                                      : SignConclusion::Neither;
  r.passed = minus;
  return r;
}

namespace {

std::string fmt(const char* key, double v) {
  std::ostringstream os;
  os << key << "=" << v;
  return os.str();
}

ResidualEntry make_entry(std::size_t idx, const char* description, double value, const Tolerances& tol,
                         std::string detail) {
  ResidualEntry e;
  e.name = "R" + std::to_string(idx + 1);
  e.description = description;
  e.value = value;
  e.tolerance = tol.r[idx];
  e.pass = std::isfinite(value) && value <= e.tolerance;
  e.detail = std::move(detail);
  return e;
}

double sup_tau(const TraceSet& tr) {
  double m = 0.0;
  for (double v : tr.tau().values()) m = std::max(m, std::fabs(v));
  return m;
}

// R1: k u_xx - D^{alpha,mu} u, checked mode by mode.
ResidualEntry pde_residual(const ProblemSpec& s, const SolutionField& f, SampleGrid g, const Tolerances& tol,
                           const SuiteOptions& opt) {
  const double l = s.l, b = s.beta();
  std::vector<double> ts, xs;
  for (std::size_t j = 1; j <= opt.pde_times; ++j) ts.push_back(s.T * static_cast<double>(j) / (opt.pde_times + 1.0));
  for (std::size_t i = 1; i <= g.nx; ++i) xs.push_back(l * static_cast<double>(i) / (g.nx + 1.0));
  const std::size_t modes = std::min(opt.max_pde_modes, f.N());

  // lhs[j][n] = -k lambda^2 w_n(t_j), rhs[j][n] = D w_n(t_j)
  std::vector<double> lhs(ts.size() * modes), dnum(ts.size() * modes);
  detail::parallel_for(ts.size() * modes, [&](std::size_t idx) {
    std::size_t j = idx / modes, n = idx % modes + 1;
    double lam = f.lambda(n);
    auto w = [&](double t) { return f.mode_time_factor(n, t); };
    lhs[idx] = -s.k * lam * lam * w(ts[j]);
    dnum[idx] = hilfer_derivative_numeric(w, s.alpha, s.mu, ts[j], b - 1.0);
  });
  double mode_rel = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i)
    if (lhs[i] != 0.0) mode_rel = std::max(mode_rel, std::fabs(dnum[i] - lhs[i]) / std::fabs(lhs[i]));

  double res = 0.0, scale = 1.0;
  for (std::size_t j = 0; j < ts.size(); ++j)
    for (double x : xs) {
      double r = 0.0, kuxx = 0.0;
      for (std::size_t n = 1; n <= modes; ++n) {
        double c = f.sine_coeffs[n - 1] * sin_pi(static_cast<double>(n) * x / l);
        kuxx += c * lhs[j * modes + n - 1];
        r += c * (lhs[j * modes + n - 1] - dnum[j * modes + n - 1]);
      }
      res = std::max(res, std::fabs(r));
      scale = std::max(scale, std::fabs(kuxx));
    }
  return make_entry(0, "parabolic equation k u_xx = D^{alpha,mu} u in the rectangle", res / scale, tol,
                    "modes=" + std::to_string(modes) + " " + fmt("max_mode_relative", mode_rel));
}

// R2: u_xx - u_tt by centered differences inside the triangle.
ResidualEntry wave_residual(const ProblemSpec& s, const SolutionField& f, SampleGrid g, const Tolerances& tol) {
  const double l = s.l, h = 1e-3 * l;
  double res = 0.0, scale = 1.0;
  std::size_t used = 0;
  for (std::size_t j = 1; j <= g.nt; ++j) {
    double t = -0.5 * l * static_cast<double>(j) / (g.nt + 1.0);
    for (std::size_t i = 1; i <= g.nx; ++i) {
      double x = -t + (l + 2.0 * t) * static_cast<double>(i) / (g.nx + 1.0);
      if (x + t < 2.0 * h || l + t - x < 2.0 * h || t > -2.0 * h) continue;
      auto u = [&](double xx, double tt) { return eval_hyperbolic(f, xx, tt); };
      double c = u(x, t);
      double uxx = (u(x + h, t) - 2.0 * c + u(x - h, t)) / (h * h);
      double utt = (u(x, t + h) - 2.0 * c + u(x, t - h)) / (h * h);
      res = std::max(res, std::fabs(uxx - utt));
      scale = std::max(scale, std::fabs(c));
      ++used;
    }
  }
  return make_entry(1, "wave equation u_xx = u_tt in the triangle", res / scale, tol,
                    "points=" + std::to_string(used));
}

// R3: u(0,t) = u(l,t) = 0.
ResidualEntry boundary_residual(const ProblemSpec& s, const SolutionField& f, SampleGrid g, const Tolerances& tol) {
  double res = 0.0;
  for (std::size_t j = 1; j <= g.nt; ++j) {
    double t = s.T * static_cast<double>(j) / static_cast<double>(g.nt);
    res = std::max({res, std::fabs(eval(f, 0.0, t)), std::fabs(eval(f, s.l, t))});
  }
  return make_entry(2, "boundary values u(0,t) = u(l,t) = 0", res / std::max(1.0, sup_tau(f.traces)), tol, "");
}

// R4: u(x/2, -x/2) = psi(x).
ResidualEntry characteristic_residual(const ProblemSpec& s, const SolutionField& f, SampleGrid g,
                                      const Tolerances& tol) {
  double res = 0.0, scale = 1.0;
  for (double x : linspace(0.0, s.l, std::max<std::size_t>(g.nx, 2))) {
    double p = s.psi(x);
    res = std::max(res, std::fabs(eval(f, 0.5 * x, -0.5 * x) - p));
    scale = std::max(scale, std::fabs(p));
  }
  return make_entry(3, "characteristic condition u(x/2,-x/2) = psi(x)", res / scale, tol, "");
}

std::vector<double> conjugation_points(const ProblemSpec& s, SampleGrid g) {
  std::size_t m = std::min<std::size_t>(g.nx, 5);
  if (m <= 1) return {0.5 * s.l};
  return linspace(0.25 * s.l, 0.75 * s.l, m);
}

// R5: lim t^{c0} u(x,t) = u(x,-0) = tau2(x).
ResidualEntry trace_conjugation_residual(const ProblemSpec& s, const SolutionField& f, SampleGrid g,
                                         const Tolerances& tol) {
  const double c0 = s.regularization_power();
  double res = 0.0, err = 0.0;
  for (double x : conjugation_points(s, g)) {
    double t0 = extrapolation_start(s.alpha, std::min(x, s.l - x), s.T);
    auto e = limit_at_zero([&](double t) { return std::pow(t, c0) * eval_parabolic(f, x, t); }, s.alpha, t0);
    res = std::max(res, std::fabs(e.value - f.traces.tau2(x)));
    err = std::max(err, e.error_estimate);
  }
  return make_entry(4, "conjugation of traces lim t^{(1-mu)(1-alpha)} u = u(x,-0)",
                    res / std::max(1.0, sup_tau(f.traces)), tol, fmt("extrapolation_error", err));
}

// R6: lim t^{1-alpha} (t^{c0} u)_t = gamma1 nu2 + gamma2 int nu2 P + gamma3 int nu2 Q.
ResidualEntry flux_conjugation_residual(const ProblemSpec& s, const SolutionField& f, SampleGrid g,
                                        const Tolerances& tol) {
  const double c0 = s.regularization_power();
  double res = 0.0, scale = 1.0, err = 0.0;
  for (double x : conjugation_points(s, g)) {
    auto v = [&](double t) { return std::pow(t, c0) * eval_parabolic(f, x, t); };
    auto flux = [&](double t) {
      double h = 1e-3 * t;
      double d1 = (v(t + h) - v(t - h)) / (2.0 * h);
      double d2 = (v(t + 0.5 * h) - v(t - 0.5 * h)) / h;
      return std::pow(t, 1.0 - s.alpha) * (4.0 * d2 - d1) / 3.0;
    };
    double t0 = extrapolation_start(s.alpha, std::min(x, s.l - x), s.T);
    auto e = limit_at_zero(flux, s.alpha, t0);
    double rhs = conjugation_rhs(s, f.traces, x);
    res = std::max(res, std::fabs(e.value - rhs));
    scale = std::max(scale, std::fabs(rhs));
    err = std::max(err, e.error_estimate);
  }
  return make_entry(5, "conjugation of fluxes with the P, Q integral terms", res / scale, tol,
                    fmt("extrapolation_error", err));
}

// R7: tau1'' - A tau1' = F1 at the interior knots; derivatives from
// 7-point stencils on the nodal values.
ResidualEntry trace_ode_residual(const ProblemSpec& s, const SolutionField& f, const Tolerances& tol) {
  const CubicSpline& tau = f.traces.tau();
  const double A = coefficient_A(s).A;
  const auto knots = tau.knots();
  const auto& y = tau.values();
  const std::size_t m = knots.size(), width = std::min<std::size_t>(7, m);
  std::vector<double> r(knots.size(), 0.0), rhs(knots.size(), 0.0);
  detail::parallel_for(knots.size(), [&](std::size_t i) {
    if (i == 0 || i + 1 == knots.size()) return;
    double x = knots[i];
    std::size_t first = std::min(i > width / 2 ? i - width / 2 : 0, m - width);
    std::vector<double> xs(knots.begin() + first, knots.begin() + first + width);
    auto w = fornberg(x, xs);
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t j = 0; j < width; ++j) {
      d1 += w[1][j] * y[first + j];
      d2 += w[2][j] * y[first + j];
    }
    rhs[i] = trace_ode_rhs(s, f.traces, x);
    r[i] = d2 - A * d1 - rhs[i];
  });
  double res = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    res = std::max(res, std::fabs(r[i]));
    scale = std::max(scale, std::fabs(rhs[i]));
  }
  return make_entry(6, "trace equation tau1'' - A tau1' = F1", res / scale, tol,
                    "nodes=" + std::to_string(knots.size()));
}

}  // namespace

VerificationReport residual_suite(const ProblemSpec& s, const SolutionField& f, SampleGrid g, const Tolerances& tol,
                                  const SuiteOptions& opt) {
  if (g.nx < 1 || g.nt < 1) throw std::invalid_argument("residual_suite: empty sample grid");
  VerificationReport rep;
  rep.entries.push_back(pde_residual(s, f, g, tol, opt));
  rep.entries.push_back(wave_residual(s, f, g, tol));
  rep.entries.push_back(boundary_residual(s, f, g, tol));
  rep.entries.push_back(characteristic_residual(s, f, g, tol));
  rep.entries.push_back(trace_conjugation_residual(s, f, g, tol));
  rep.entries.push_back(flux_conjugation_residual(s, f, g, tol));
  rep.entries.push_back(trace_ode_residual(s, f, tol));
  return rep;
}

}  // namespace hbvp
