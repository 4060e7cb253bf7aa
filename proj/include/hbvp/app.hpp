#pragma once

#include <filesystem>
#include <ostream>

#include "hbvp/config.hpp"

namespace hbvp {

enum ExitCode : int { kExitOk = 0, kExitInvalidInput = 1, kExitSolverFailure = 2, kExitVerificationFailure = 3 };

/// Solves, writes the grid CSV and a run manifest into out_dir.
int run_solve(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

/// Solves and writes verification.json into out_dir; exit 3 when a
/// residual exceeds its (scaled) tolerance.
int run_verify(const RunConfig& config, const std::filesystem::path& out_dir, double tol_scale, std::ostream& out,
               std::ostream& err);

/// Prints E_{alpha,beta}(z).
int run_ml(double alpha, double beta, double z, std::ostream& out, std::ostream& err);

/// Formatting used by run_ml: 15 decimals in [0.1, 10), otherwise
/// scientific with 15 significant digits.
std::string format_ml_value(double v);

}  // namespace hbvp
