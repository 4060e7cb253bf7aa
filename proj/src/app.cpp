#include "hbvp/app.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "hbvp/assembly.hpp"
#include "hbvp/fredholm.hpp"
#include "hbvp/specfun.hpp"
#include "json.hpp"

namespace hbvp {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool report_violations(const ProblemSpec& spec, std::ostream& err) {
  ValidationReport v = validate(spec);
  for (const auto& e : v.violations) err << e.code << ": " << e.message << "\n";
  return v.ok();
}

struct Solved {
  double condition = 0.0;
  double A = 0.0, C = 0.0;
  SolutionField field;
  double solve_seconds = 0.0, assemble_seconds = 0.0;
};

std::optional<Solved> solve(const RunConfig& c, std::ostream& err) {
  try {
    Solved s;
    auto t0 = Clock::now();
    DiscretizedKernel kern = build_kernel(c.spec, c.solver.nodes);
    TauSolution tau = solve_fredholm(kern);
    s.solve_seconds = seconds_since(t0);
    t0 = Clock::now();
    s.field = assemble(c.spec, tau, c.solver.series_terms);
    s.assemble_seconds = seconds_since(t0);
    s.condition = tau.condition_estimate;
    s.A = kern.coeff.A;
    s.C = kern.coeff.C;
    return s;
  } catch (const SolverError& e) {
    err << e.code() << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "SOLVER_FAILURE: " << e.what() << "\n";
  }
  return std::nullopt;
}

json conditions_json(const ProblemSpec& spec) {
  ConditionReport r = check_uniqueness_conditions(spec, 65);
  json j = json::array();
  for (const auto& c : r.checks)
    j.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"detail", c.detail}});
  return {{"all_passed", r.all_passed()}, {"q_diagonal_nonpositive", r.q_diag_nonpositive}, {"checks", j}};
}

std::filesystem::path resolve(const std::filesystem::path& dir, const std::string& name) {
  std::filesystem::path p(name);
  return p.is_absolute() ? p : dir / p;
}

}  // namespace

int run_solve(const RunConfig& c, const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err) {
  if (!report_violations(c.spec, err)) return kExitInvalidInput;
  auto solved = solve(c, err);
  if (!solved) return kExitSolverFailure;

  auto t0 = Clock::now();
  std::vector<GridRow> rows;
  try {
    rows = sample_grid(solved->field, c.output.grid_nx, c.output.grid_nt);
  } catch (const std::exception& e) {
    err << "SOLVER_FAILURE: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  double grid_seconds = seconds_since(t0);

  std::string csv = "x,t,u,region\n";
  for (const auto& r : rows)
    csv += format_double(r.x) + "," + format_double(r.t) + "," + format_double(r.u) + "," + r.region + "\n";

  auto csv_path = resolve(out_dir, c.output.out_path);
  auto manifest_path = csv_path;
  manifest_path.replace_extension(".manifest.json");
  json manifest = {
      {"spec", json::parse(spec_to_json(c.spec))},
      {"A", solved->A},
      {"C", solved->C},
      {"condition_estimate", solved->condition},
      {"nodes", c.solver.nodes},
      {"series_terms", solved->field.N()},
      {"grid", {{"nx", c.output.grid_nx}, {"nt", c.output.grid_nt}, {"rows", rows.size()}}},
      {"csv", csv_path.filename().string()},
      {"uniqueness_conditions", conditions_json(c.spec)},
      {"timings_seconds",
       {{"solve", solved->solve_seconds}, {"assemble", solved->assemble_seconds}, {"grid", grid_seconds}}}};
  try {
    if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
    write_file_atomic(csv_path, csv);
    write_file_atomic(manifest_path, manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "IO_ERROR: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  out << "wrote " << rows.size() << " rows to " << csv_path.string() << "\n";
  return kExitOk;
}

int run_verify(const RunConfig& c, const std::filesystem::path& out_dir, double tol_scale, std::ostream& out,
               std::ostream& err) {
  if (!(tol_scale > 0.0)) {
    err << "INVALID_ARGUMENT: --tol-scale must be > 0\n";
    return kExitInvalidInput;
  }
  if (!report_violations(c.spec, err)) return kExitInvalidInput;
  auto solved = solve(c, err);
  if (!solved) return kExitSolverFailure;

  VerificationReport rep;
  try {
    rep = residual_suite(c.spec, solved->field, {c.output.grid_nx, c.output.grid_nt}, c.tolerances.scaled(tol_scale));
  } catch (const std::exception& e) {
    err << "SOLVER_FAILURE: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  json doc = json::parse(rep.to_json());
  doc["uniqueness_conditions"] = conditions_json(c.spec);
  auto path = out_dir / "verification.json";
  try {
    std::filesystem::create_directories(out_dir);
    write_file_atomic(path, doc.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "IO_ERROR: " << e.what() << "\n";
    return kExitSolverFailure;
  }
  for (const auto& e : rep.entries) {
    char line[160];
    std::snprintf(line, sizeof line, "%-3s %-5s %.3e (tol %.1e)  ", e.name.c_str(), e.pass ? "pass" : "FAIL", e.value,
                  e.tolerance);
    out << line << e.description << "\n";
  }
  if (!rep.all_passed()) {
    err << "VERIFICATION_FAILED:";
    for (const auto& e : rep.entries)
      if (!e.pass) err << " " << e.name;
    err << "\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}

std::string format_ml_value(double v) {
  char buf[64];
  double a = std::fabs(v);
  if (v == 0.0 || (a >= 0.1 && a < 10.0)) std::snprintf(buf, sizeof buf, "%.15f", v);
  else std::snprintf(buf, sizeof buf, "%.14e", v);
  return buf;
}

int run_ml(double alpha, double beta, double z, std::ostream& out, std::ostream& err) {
  try {
    MittagLeffler E(alpha, beta);
    out << format_ml_value(E(z)) << "\n";
    return kExitOk;
  } catch (const ParameterError& e) {
    err << "PARAMETER_OUT_OF_RANGE: " << e.what() << "\n";
    return kExitInvalidInput;
  }
}

}  // namespace hbvp
