#include "hbvp/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace hbvp {

namespace {

using nlohmann::json;

const char* const kToleranceNames[7] = {"R1", "R2", "R3", "R4", "R5", "R6", "R7"};

ProblemSpec spec_from(const json& j) {
  auto num = [&](const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    if (!j[key].is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
  };
  auto str = [&](const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    if (!j[key].is_string()) throw ConfigError(std::string("field '") + key + "' must be a string");
    return j[key].get<std::string>();
  };
  if (!j.contains("gamma") || !j["gamma"].is_array() || j["gamma"].size() != 3)
    throw ConfigError("field 'gamma' must be an array of three numbers");
  std::array<double, 3> g{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j["gamma"][i].is_number()) throw ConfigError("field 'gamma' must be an array of three numbers");
    g[i] = j["gamma"][i].get<double>();
  }
  return make_problem(num("alpha"), num("mu"), num("k"), num("l"), num("T"), g, str("psi"), str("P"), str("Q"));
}

std::size_t count(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer() || j[key].get<long long>() < 0)
    throw ConfigError(std::string("field '") + key + "' must be a non-negative integer");
  return j[key].get<std::size_t>();
}

json spec_json(const ProblemSpec& s) {
  return {{"alpha", s.alpha}, {"mu", s.mu},
          {"k", s.k},         {"l", s.l},
          {"T", s.T},         {"gamma", {s.gamma[0], s.gamma[1], s.gamma[2]}},
          {"psi", s.psi.to_string()}, {"P", s.P.to_string()},
          {"Q", s.Q.to_string()}};
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  c.spec = spec_from(j);
  if (j.contains("solver")) {
    const json& s = j["solver"];
    if (!s.is_object()) throw ConfigError("field 'solver' must be an object");
    c.solver.nodes = static_cast<int>(count(s, "nodes", static_cast<std::size_t>(c.solver.nodes)));
    c.solver.series_terms = count(s, "series_terms", c.solver.series_terms);
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) throw ConfigError("field 'output' must be an object");
    c.output.grid_nx = count(o, "grid_nx", c.output.grid_nx);
    c.output.grid_nt = count(o, "grid_nt", c.output.grid_nt);
    if (o.contains("out_path")) {
      if (!o["out_path"].is_string()) throw ConfigError("field 'out_path' must be a string");
      c.output.out_path = o["out_path"].get<std::string>();
    }
  }
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) throw ConfigError("field 'tolerances' must be an object");
    for (const auto& [key, value] : t.items()) {
      auto it = std::find(std::begin(kToleranceNames), std::end(kToleranceNames), key);
      if (it == std::end(kToleranceNames)) throw ConfigError("unknown tolerance '" + key + "' (expected R1..R7)");
      if (!value.is_number() || !(value.get<double>() > 0.0))
        throw ConfigError("tolerance '" + key + "' must be a positive number");
      c.tolerances.r[static_cast<std::size_t>(it - std::begin(kToleranceNames))] = value.get<double>();
    }
  }
  if (c.solver.nodes < 17 || c.solver.nodes % 2 == 0) throw ConfigError("solver.nodes must be odd and >= 17");
  if (c.solver.series_terms < 1) throw ConfigError("solver.series_terms must be >= 1");
  if (c.output.grid_nx < 2 || c.output.grid_nt < 2) throw ConfigError("output.grid_nx and grid_nt must be >= 2");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string spec_to_json(const ProblemSpec& s) { return spec_json(s).dump(2); }

ProblemSpec spec_from_json(const std::string& text) {
  try {
    return spec_from(json::parse(text));
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("spec is not valid JSON: ") + e.what());
  }
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace hbvp
