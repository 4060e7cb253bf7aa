#pragma once

#include <array>
#include <string>
#include <vector>

#include "hbvp/expr.hpp"

namespace hbvp {

/// Given data of the mixed parabolic-hyperbolic conjugation problem:
///   k u_xx = D^{alpha,mu} u  (t > 0),   u_xx = u_tt  (t < 0)
/// on the rectangle 0<x<l, 0<t<T glued along t = 0 to the characteristic
/// triangle -t < x < t + l, -l/2 < t < 0.
struct ProblemSpec {
  double alpha = 1.0;
  double mu = 0.0;
  double k = 1.0;
  double l = 1.0;
  double T = 1.0;
  std::array<double, 3> gamma{1.0, 0.0, 0.0};
  Expr psi;  // in x, prescribed on the characteristic u(x/2, -x/2) = psi(x)
  Expr P;    // in (x, z)
  Expr Q;    // in (x, z)

  /// alpha + mu (1 - alpha): second parameter of the eigenmode ML function.
  double beta() const { return alpha + mu * (1.0 - alpha); }
  /// (1 - mu)(1 - alpha): power of the t -> 0+ regularization t^{...} u.
  double regularization_power() const { return (1.0 - mu) * (1.0 - alpha); }
};

/// Builds a spec from expression sources; `l` may appear in psi, P and Q as
/// a named constant.
ProblemSpec make_problem(double alpha, double mu, double k, double l, double T,
                         std::array<double, 3> gamma, const std::string& psi, const std::string& P,
                         const std::string& Q);

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const;
};

ValidationReport validate(const ProblemSpec& spec);

enum class Region { Omega1, Omega2, AB, Boundary, Outside };

const char* to_string(Region r);

struct DomainGeometry {
  double l;
  double T;
};

Region classify(double x, double t, const DomainGeometry& geom);

struct ConditionCheck {
  std::string name;
  bool passed;
  double value;  // the quantity tested (margin, ratio or residual)
  std::string detail;
};

/// Result of the rank-one factorization test -dF/dz(x_i, z_j) = f(x_i) f(z_j).
struct SeparableFactor {
  bool symmetric = false;
  bool rank_one = false;
  bool psd = false;
  double asymmetry = 0.0;      // max |M - M^T| / max(1, max |M|)
  double second_ratio = 0.0;   // second singular value / first
  double min_eig_ratio = 0.0;  // smallest eigenvalue / largest
  std::vector<double> grid;
  std::vector<double> factor;  // f sampled on grid, sign fixed by sum(f) >= 0
  bool ok() const { return symmetric && rank_one && psd; }
};

SeparableFactor separable_factor(const Expr& kernel, double l, std::size_t grid_n);

struct ConditionReport {
  std::vector<ConditionCheck> checks;
  SeparableFactor p_factor;
  SeparableFactor q_factor;
  /// Informational: sign of min over the grid of Q(x,x) under the opposite
  /// reading (Q(x,x) <= 0); never counted in all_passed().
  bool q_diag_nonpositive = false;
  bool all_passed() const;
  const ConditionCheck* find(const std::string& name) const;
};

ConditionReport check_uniqueness_conditions(const ProblemSpec& spec, std::size_t grid_n);

}  // namespace hbvp
