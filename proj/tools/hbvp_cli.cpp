#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hbvp/app.hpp"
#include "hbvp/expr.hpp"

namespace {

// Loads the config or reports why it cannot be used.
bool load(const std::string& path, hbvp::RunConfig& config) {
  try {
    config = hbvp::load_config(path);
    return true;
  } catch (const hbvp::ParseError& e) {
    std::cerr << "EXPRESSION_PARSE_ERROR: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "CONFIG_ERROR: " << e.what() << "\n";
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver for the mixed parabolic-hyperbolic problem with a Hilfer time derivative"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  double tol_scale = 1.0;
  double alpha = 0.0, beta = 0.0, z = 0.0;

  auto* solve = app.add_subcommand("solve", "solve and write the solution grid and a run manifest");
  solve->add_option("--config", config_path, "JSON config file")->required();
  solve->add_option("--out", out_dir, "output directory");

  auto* verify = app.add_subcommand("verify", "solve and write the residual report");
  verify->add_option("--config", config_path, "JSON config file")->required();
  verify->add_option("--tol-scale", tol_scale, "multiplier applied to every tolerance");
  verify->add_option("--out", out_dir, "output directory");

  auto* ml = app.add_subcommand("ml", "evaluate the Mittag-Leffler function E_{alpha,beta}(z)");
  ml->add_option("--alpha", alpha)->required();
  ml->add_option("--beta", beta)->required();
  ml->add_option("--z", z)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : hbvp::kExitInvalidInput;
  }

  if (*ml) return hbvp::run_ml(alpha, beta, z, std::cout, std::cerr);
  hbvp::RunConfig config;
  if (!load(config_path, config)) return hbvp::kExitInvalidInput;
  if (*solve) return hbvp::run_solve(config, out_dir, std::cout, std::cerr);
  return hbvp::run_verify(config, out_dir, tol_scale, std::cout, std::cerr);
}
