#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hbvp/assembly.hpp"
#include "hbvp/fractional.hpp"
#include "hbvp/problem.hpp"

namespace hbvp {

/// Tolerances for R1..R7 (parabolic PDE, wave equation, boundary values,
/// characteristic condition, trace conjugation, flux conjugation, trace ODE).
struct Tolerances {
  std::array<double, 7> r{1e-4, 1e-4, 1e-12, 1e-6, 1e-4, 1e-3, 1e-4};
  Tolerances scaled(double factor) const;
};

struct ResidualEntry {
  std::string name;
  std::string description;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<ResidualEntry> entries;
  bool all_passed() const;
  const ResidualEntry* find(const std::string& name) const;
  std::string to_json() const;
};

struct SampleGrid {
  std::size_t nx = 11;
  std::size_t nt = 11;
};

struct SuiteOptions {
  std::size_t max_pde_modes = 8;   // modes certified termwise in R1
  std::size_t pde_times = 3;       // t-levels sampled in R1
};

/// Residuals are normalized by max(1, size of the reference quantity).
VerificationReport residual_suite(const ProblemSpec& spec, const SolutionField& field, SampleGrid grid,
                                  const Tolerances& tol = {}, const SuiteOptions& options = {});

/// gamma1 nu2(x) + gamma2 int_0^x nu2(z) P(x,z) dz + gamma3 int_x^l nu2(z) Q(x,z) dz
double conjugation_rhs(const ProblemSpec& spec, const TraceSet& traces, double x);

/// Right side of the trace ODE tau1'' - A tau1' = F1, rebuilt from the traces.
double trace_ode_rhs(const ProblemSpec& spec, const TraceSet& traces, double x);

/// Limit of g(t) as t -> 0+ by polynomial extrapolation in t^alpha from
/// t = 2^-m t0, m = 4..12; t0 is scaled to the distance from the boundary.
struct Extrapolation {
  double value;
  double error_estimate;
};
Extrapolation limit_at_zero(const std::function<double(double)>& g, double alpha, double t0);
double extrapolation_start(double alpha, double boundary_distance, double T);

enum class SignConclusion { Minus, Plus, Both, Neither };
const char* to_string(SignConclusion s);

struct EnergyReport {
  double I_direct = 0.0;
  double I_decomposed = 0.0;          // minus sign on the Q diagonal
  double I_decomposed_plus = 0.0;  // plus sign on the Q diagonal
  double Phi1_l = 0.0;
  double Phi2_0 = 0.0;
  SignConclusion sign_conclusion = SignConclusion::Neither;
  bool passed = false;
};

/// Energy integral int tau1 nu1 for psi = 0 directly and through the
/// integration-by-parts identity. P1, Q1 sample the rank-one factors
/// -dP/dz = P1(x)P1(z), -dQ/dz = Q1(x)Q1(z) on a uniform grid of [0,l].
/// Throws std::invalid_argument when the factors do not reproduce P, Q.
EnergyReport energy_identity_check(const std::function<double(double)>& tau1,
                                   const std::function<double(double)>& dtau1, const ProblemSpec& spec,
                                   const std::vector<double>& P1, const std::vector<double>& Q1,
                                   int n_panels = 200);

}  // namespace hbvp
