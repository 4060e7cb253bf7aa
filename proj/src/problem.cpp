#include "hbvp/problem.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hbvp/quadrature.hpp"

namespace hbvp {

ProblemSpec make_problem(double alpha, double mu, double k, double l, double T,
                         std::array<double, 3> gamma, const std::string& psi, const std::string& P,
                         const std::string& Q) {
  ProblemSpec s;
  s.alpha = alpha;
  s.mu = mu;
  s.k = k;
  s.l = l;
  s.T = T;
  s.gamma = gamma;
  const std::map<std::string, double> constants{{"l", l}};
  s.psi = Expr::parse(psi, {"x"}, constants);
  s.P = Expr::parse(P, {"x", "z"}, constants);
  s.Q = Expr::parse(Q, {"x", "z"}, constants);
  return s;
}

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

ValidationReport validate(const ProblemSpec& s) {
  ValidationReport r;
  auto add = [&](const char* code, std::string msg) { r.violations.push_back({code, std::move(msg)}); };
  auto num = [](double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };

  for (double v : {s.alpha, s.mu, s.k, s.l, s.T, s.gamma[0], s.gamma[1], s.gamma[2]})
    if (!std::isfinite(v)) {
      add("NON_FINITE", "non-finite parameter");
      return r;
    }
  if (!(s.alpha > 0.0 && s.alpha <= 1.0)) add("ALPHA_OUT_OF_RANGE", "alpha must lie in (0,1], got " + num(s.alpha));
  if (!(s.mu >= 0.0 && s.mu <= 1.0)) add("MU_OUT_OF_RANGE", "mu must lie in [0,1], got " + num(s.mu));
  if (!(s.k > 0.0)) add("K_NOT_POSITIVE", "k must be > 0, got " + num(s.k));
  if (!(s.l > 0.0)) add("L_NOT_POSITIVE", "l must be > 0, got " + num(s.l));
  if (!(s.T > 0.0)) add("T_NOT_POSITIVE", "T must be > 0, got " + num(s.T));
  double g2 = s.gamma[0] * s.gamma[0] + s.gamma[1] * s.gamma[1] + s.gamma[2] * s.gamma[2];
  if (!(g2 > 0.0)) add("SUM_GAMMA_ZERO", "gamma1^2 + gamma2^2 + gamma3^2 must be > 0");

  if (s.psi.empty() || s.P.empty() || s.Q.empty()) {
    add("MISSING_FUNCTION", "psi, P and Q must all be given");
    return r;
  }
  if (s.psi.variables() != std::vector<std::string>{"x"}) add("PSI_VARIABLES", "psi must be a function of x");
  if (s.P.variables() != std::vector<std::string>{"x", "z"}) add("P_VARIABLES", "P must be a function of (x, z)");
  if (s.Q.variables() != std::vector<std::string>{"x", "z"}) add("Q_VARIABLES", "Q must be a function of (x, z)");
  if (!r.ok()) return r;

  try {
    double p0 = s.psi(0.0);
    if (!(std::fabs(p0) <= 1e-12)) add("PSI_AT_ZERO", "psi(0) must vanish, got " + num(p0));
  } catch (const DomainError& e) {
    add("PSI_AT_ZERO", std::string("psi(0) is undefined: ") + e.what());
  }
  return r;
}

const char* to_string(Region r) {
  switch (r) {
    case Region::Omega1: return "Omega1";
    case Region::Omega2: return "Omega2";
    case Region::AB: return "AB";
    case Region::Boundary: return "Boundary";
    case Region::Outside: return "Outside";
  }
  return "?";
}

Region classify(double x, double t, const DomainGeometry& g) {
  const double l = g.l;
  if (t > 0.0) {
    if (x > 0.0 && x < l && t < g.T) return Region::Omega1;
    if (x >= 0.0 && x <= l && t <= g.T) return Region::Boundary;
    return Region::Outside;
  }
  if (t == 0.0) {
    if (x > 0.0 && x < l) return Region::AB;
    if (x == 0.0 || x == l) return Region::Boundary;
    return Region::Outside;
  }
  if (t > -0.5 * l && -t < x && x < t + l) return Region::Omega2;
  if (t >= -0.5 * l && -t <= x && x <= t + l) return Region::Boundary;
  return Region::Outside;
}

SeparableFactor separable_factor(const Expr& kernel, double l, std::size_t grid_n) {
  SeparableFactor f;
  f.grid = linspace(0.0, l, grid_n);
  const Expr dz = kernel.differentiate("z");
  const auto n = static_cast<Eigen::Index>(grid_n);
  Eigen::MatrixXd M(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) M(i, j) = -dz(f.grid[i], f.grid[j]);

  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  f.asymmetry = (M - M.transpose()).cwiseAbs().maxCoeff() / scale;
  f.symmetric = f.asymmetry <= 1e-8;
  f.factor.assign(grid_n, 0.0);

  if (M.cwiseAbs().maxCoeff() <= 1e-14) {
    // Identically zero derivative: the trivial factor f = 0 works.
    f.rank_one = f.psd = true;
    return f;
  }
  Eigen::MatrixXd S = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
  const auto& ev = eig.eigenvalues();  // ascending
  double top = ev(n - 1);
  double largest_abs = std::max(std::fabs(ev(0)), std::fabs(top));
  // Singular values of a symmetric matrix are the |eigenvalues|.
  std::vector<double> sv(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) sv[static_cast<std::size_t>(i)] = std::fabs(ev(i));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  f.second_ratio = sv[1] / sv[0];
  f.rank_one = f.second_ratio <= 1e-8;
  f.min_eig_ratio = ev(0) / largest_abs;
  f.psd = top > 0.0 && ev(0) >= -1e-8 * largest_abs;
  if (top > 0.0) {
    Eigen::VectorXd v = eig.eigenvectors().col(n - 1) * std::sqrt(top);
    if (v.sum() < 0.0) v = -v;
    for (Eigen::Index i = 0; i < n; ++i) f.factor[static_cast<std::size_t>(i)] = v(i);
  }
  return f;
}

bool ConditionReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConditionCheck& c) { return c.passed; });
}

const ConditionCheck* ConditionReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

ConditionReport check_uniqueness_conditions(const ProblemSpec& s, std::size_t grid_n) {
  if (grid_n < 8) throw std::invalid_argument("check_uniqueness_conditions: grid_n must be >= 8");
  ConditionReport r;
  r.checks.push_back({"GAMMA1_NONNEG", s.gamma[0] >= 0.0, s.gamma[0], "gamma1 >= 0"});
  r.checks.push_back({"GAMMA2_NONNEG", s.gamma[1] >= 0.0, s.gamma[1], "gamma2 >= 0"});
  r.checks.push_back({"GAMMA3_NONNEG", s.gamma[2] >= 0.0, s.gamma[2], "gamma3 >= 0"});
  r.checks.push_back({"K_POSITIVE", s.k > 0.0, s.k, "k > 0"});

  const auto grid = linspace(0.0, s.l, grid_n);
  double pmin = INFINITY, qmin = INFINITY, qmax = -INFINITY;
  for (double x : grid) {
    pmin = std::min(pmin, s.P(x, x));
    double q = s.Q(x, x);
    qmin = std::min(qmin, q);
    qmax = std::max(qmax, q);
  }
  r.checks.push_back({"P_DIAG_NONNEG", pmin >= 0.0, pmin, "min over grid of P(x,x) >= 0"});
  r.checks.push_back({"Q_DIAG_NONNEG", qmin >= 0.0, qmin, "min over grid of Q(x,x) >= 0"});
  r.q_diag_nonpositive = qmax <= 0.0;

  r.p_factor = separable_factor(s.P, s.l, grid_n);
  r.q_factor = separable_factor(s.Q, s.l, grid_n);
  auto describe = [](const SeparableFactor& f) {
    std::ostringstream os;
    os << "asymmetry=" << f.asymmetry << " sigma2/sigma1=" << f.second_ratio
       << " lambda_min/lambda_max=" << f.min_eig_ratio;
    return os.str();
  };
  r.checks.push_back({"P_SEPARABLE", r.p_factor.ok(), r.p_factor.second_ratio, describe(r.p_factor)});
  r.checks.push_back({"Q_SEPARABLE", r.q_factor.ok(), r.q_factor.second_ratio, describe(r.q_factor)});
  return r;
}

}  // namespace hbvp
