#include "run_config.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cswp_cli {

using nlohmann::json;

namespace {

const std::array<const char*, 6> kAxes{"eps1", "eps2", "eps3", "kappa1", "kappa2", "kappa3"};

void reject_unknown(const json& j, const std::set<std::string>& keys, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!keys.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("invalid value for '") + key + "'");
  }
}

}  // namespace

int parse_axis(const std::string& name) {
  for (int i = 0; i < 6; ++i)
    if (name == kAxes[i]) return i;
  if (name.size() == 1 && name[0] >= '0' && name[0] <= '5') return name[0] - '0';
  throw ConfigError("unknown sweep axis '" + name + "' (expected eps1..kappa3)");
}

std::string axis_name(int axis) {
  if (axis < 0 || axis > 5) throw ConfigError("sweep axis out of range");
  return kAxes[axis];
}

void validate_config(const RunConfig& c) {
  if (c.section.kind != "square" && c.section.kind != "circle" && c.section.kind != "rectangle")
    throw ConfigError("section must be square, circle or rectangle");
  if (c.section.kind == "rectangle" && !(c.section.a > 0.0 && c.section.b > 0.0))
    throw ConfigError("rectangle half-widths must be positive");
  if (c.degree < 1) throw ConfigError("degree must be >= 1");
  if (c.elements < 1) throw ConfigError("elements must be >= 1");
  const auto& m = c.material;
  if (m.kind == "svk") {
    if (!(m.lambda > 0.0 && m.mu > 0.0)) throw ConfigError("svk needs lambda > 0 and mu > 0");
  } else if (m.kind == "neohooke") {
    if (!(m.a10 > 0.0 && m.bulk > 0.0)) throw ConfigError("neohooke needs a10 > 0 and bulk > 0");
  } else if (m.kind == "mooneyrivlin") {
    if (!(m.b10 > 0.0 && m.b01 > 0.0 && m.bulk > 0.0)) throw ConfigError("mooneyrivlin needs b10, b01, bulk > 0");
  } else {
    throw ConfigError("material must be svk, neohooke or mooneyrivlin");
  }
  if (c.steps < 1) throw ConfigError("steps must be >= 1");
  if (c.formulation != "pk2" && c.formulation != "pk1") throw ConfigError("formulation must be pk2 or pk1");
  if (!(c.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (c.max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
  if (c.grid < 1) throw ConfigError("grid must be >= 1");
  if (c.out.empty()) throw ConfigError("out must not be empty");
  if (c.sweep.samples < 2) throw ConfigError("sweep samples must be >= 2");
  if (c.sweep.axis < 0 || c.sweep.axis > 5) throw ConfigError("sweep axis out of range");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be an object");
  reject_unknown(j,
                 {"section", "degree", "elements", "material", "eps", "kappa", "steps", "formulation", "tolerance",
                  "max_iterations", "workers", "out", "grid", "sweep"},
                 "config");
  RunConfig c;
  if (j.contains("section")) {
    const json& s = j["section"];
    if (s.is_string()) {
      c.section.kind = s.get<std::string>();
    } else if (s.is_object()) {
      reject_unknown(s, {"kind", "a", "b"}, "section");
      read(s, "kind", c.section.kind);
      read(s, "a", c.section.a);
      read(s, "b", c.section.b);
    } else {
      throw ConfigError("section must be a string or an object");
    }
  }
  read(j, "degree", c.degree);
  read(j, "elements", c.elements);
  if (j.contains("material")) {
    const json& m = j["material"];
    if (m.is_string()) {
      c.material.kind = m.get<std::string>();
    } else if (m.is_object()) {
      reject_unknown(m, {"kind", "lambda", "mu", "a10", "b10", "b01", "bulk"}, "material");
      read(m, "kind", c.material.kind);
      read(m, "lambda", c.material.lambda);
      read(m, "mu", c.material.mu);
      read(m, "a10", c.material.a10);
      read(m, "b10", c.material.b10);
      read(m, "b01", c.material.b01);
      read(m, "bulk", c.material.bulk);
    } else {
      throw ConfigError("material must be a string or an object");
    }
  }
  read(j, "eps", c.eps);
  read(j, "kappa", c.kappa);
  read(j, "steps", c.steps);
  read(j, "formulation", c.formulation);
  read(j, "tolerance", c.tolerance);
  read(j, "max_iterations", c.max_iterations);
  read(j, "workers", c.workers);
  read(j, "out", c.out);
  read(j, "grid", c.grid);
  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    if (!s.is_object()) throw ConfigError("sweep must be an object");
    reject_unknown(s, {"mode", "axis", "from", "to", "samples"}, "sweep");
    std::string mode = "axis";
    read(s, "mode", mode);
    if (mode != "axis" && mode != "proportional") throw ConfigError("sweep mode must be axis or proportional");
    c.sweep.proportional = mode == "proportional";
    if (s.contains("axis")) {
      if (s["axis"].is_string()) {
        c.sweep.axis = parse_axis(s["axis"].get<std::string>());
      } else {
        read(s, "axis", c.sweep.axis);
      }
    }
    read(s, "from", c.sweep.from);
    read(s, "to", c.sweep.to);
    read(s, "samples", c.sweep.samples);
  }
  validate_config(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["section"] = {{"kind", c.section.kind}, {"a", c.section.a}, {"b", c.section.b}};
  j["degree"] = c.degree;
  j["elements"] = c.elements;
  j["material"] = {{"kind", c.material.kind}, {"lambda", c.material.lambda}, {"mu", c.material.mu},
                   {"a10", c.material.a10},   {"b10", c.material.b10},       {"b01", c.material.b01},
                   {"bulk", c.material.bulk}};
  j["eps"] = c.eps;
  j["kappa"] = c.kappa;
  j["steps"] = c.steps;
  j["formulation"] = c.formulation;
  j["tolerance"] = c.tolerance;
  j["max_iterations"] = c.max_iterations;
  j["workers"] = c.workers;
  j["out"] = c.out;
  j["grid"] = c.grid;
  j["sweep"] = {{"mode", c.sweep.proportional ? "proportional" : "axis"},
                {"axis", axis_name(c.sweep.axis)},
                {"from", c.sweep.from},
                {"to", c.sweep.to},
                {"samples", c.sweep.samples}};
  return j.dump(2) + "\n";
}

}  // namespace cswp_cli
