#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "hbvp/problem.hpp"
#include "hbvp/verify.hpp"

namespace hbvp {

class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct SolverSettings {
  int nodes = 257;
  std::size_t series_terms = 1024;
};

struct OutputSettings {
  std::size_t grid_nx = 101;
  std::size_t grid_nt = 101;
  std::string out_path = "solution.csv";
};

struct RunConfig {
  ProblemSpec spec;
  SolverSettings solver;
  OutputSettings output;
  Tolerances tolerances;
};

/// Parses the JSON config document. Expression errors surface as ParseError,
/// everything else as ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

/// JSON echo of the problem data (expressions printed back in the grammar).
std::string spec_to_json(const ProblemSpec& spec);
/// Inverse of spec_to_json.
ProblemSpec spec_from_json(const std::string& json_text);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// Writes through a temporary file in the same directory and renames it.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace hbvp
