#include "fstirap/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>

namespace fstirap {

namespace {

struct Suffix {
  double factor;
  Quantity quantity;
};

// Accepted unit suffixes and their SI conversion. Angular frequencies are
// canonical rad/s; Hz-family values are converted with a 2*pi factor.
const std::map<std::string, Suffix, std::less<>>& suffix_table() {
  static const std::map<std::string, Suffix, std::less<>> table = {
      {"m", {1.0, Quantity::length}},
      {"cm", {1e-2, Quantity::length}},
      {"mm", {1e-3, Quantity::length}},
      {"um", {1e-6, Quantity::length}},
      {"nm", {1e-9, Quantity::length}},
      {"pm", {1e-12, Quantity::length}},
      {"s", {1.0, Quantity::time}},
      {"ms", {1e-3, Quantity::time}},
      {"us", {1e-6, Quantity::time}},
      {"ns", {1e-9, Quantity::time}},
      {"m/s", {1.0, Quantity::speed}},
      {"mm/s", {1e-3, Quantity::speed}},
      {"rad", {1.0, Quantity::angle}},
      {"deg", {std::numbers::pi / 180.0, Quantity::angle}},
      {"rad/s", {1.0, Quantity::angular_frequency}},
      {"Hz", {2.0 * std::numbers::pi, Quantity::angular_frequency}},
      {"kHz", {2.0 * std::numbers::pi * 1e3, Quantity::angular_frequency}},
      {"MHz", {2.0 * std::numbers::pi * 1e6, Quantity::angular_frequency}},
      {"GHz", {2.0 * std::numbers::pi * 1e9, Quantity::angular_frequency}},
  };
  return table;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

double parse_quantity(const nlohmann::json& value, Quantity quantity,
                      const std::string& field_path) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string())
    throw ConfigError(field_path, "expected a number or a string with a unit suffix");

  const std::string text = trim(value.get<std::string>());
  if (text.empty()) throw ConfigError(field_path, "empty value");

  double magnitude = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(begin, end, magnitude);
  if (res.ec != std::errc{} || res.ptr == begin)
    throw ConfigError(field_path, "cannot parse number in '" + text + "'");

  const std::string unit = trim(std::string(res.ptr, end));
  if (unit.empty()) return magnitude;

  const auto it = suffix_table().find(unit);
  if (it == suffix_table().end())
    throw ConfigError(field_path, "unknown unit suffix '" + unit + "'");
  if (quantity == Quantity::dimensionless)
    throw ConfigError(field_path, "dimensionless field cannot carry unit '" + unit + "'");
  if (it->second.quantity != quantity)
    throw ConfigError(field_path, "unit '" + unit + "' does not match the expected dimension");
  return magnitude * it->second.factor;
}

namespace {

const nlohmann::json* find(const nlohmann::json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double require_quantity(const nlohmann::json& obj, const std::string& key,
                        Quantity quantity, const std::string& parent) {
  const nlohmann::json* v = find(obj, key);
  if (!v) throw ConfigError(parent + "." + key, "missing required field");
  return parse_quantity(*v, quantity, parent + "." + key);
}

double optional_quantity(const nlohmann::json& obj, const std::string& key,
                         Quantity quantity, const std::string& parent,
                         double fallback) {
  const nlohmann::json* v = find(obj, key);
  return v ? parse_quantity(*v, quantity, parent + "." + key) : fallback;
}

// Geometry block. Peak couplings can be given directly (G0, Omega0) or as
// dimensionless pulse-area products (G0_area = G0*W_C/v, Omega0_area =
// Omega0*W_L/v), which is how operating points are usually quoted.
FieldGeometry parse_geometry(const nlohmann::json& obj, const std::string& parent,
                             const FieldGeometry* base) {
  if (!obj.is_object()) throw ConfigError(parent, "expected an object");
  FieldGeometry g = base ? *base : FieldGeometry{};

  auto set = [&](double& out, const char* key, Quantity q) {
    if (const nlohmann::json* v = find(obj, key))
      out = parse_quantity(*v, q, parent + "." + key);
  };
  if (!base) {
    g.W_C = require_quantity(obj, "W_C", Quantity::length, parent);
    g.W_L = require_quantity(obj, "W_L", Quantity::length, parent);
    g.lambda = require_quantity(obj, "lambda", Quantity::length, parent);
    g.v = require_quantity(obj, "v", Quantity::speed, parent);
  } else {
    set(g.W_C, "W_C", Quantity::length);
    set(g.W_L, "W_L", Quantity::length);
    set(g.lambda, "lambda", Quantity::length);
    set(g.v, "v", Quantity::speed);
  }
  set(g.z0, "z0", Quantity::length);
  set(g.d, "d", Quantity::length);
  set(g.x0, "x0", Quantity::length);
  set(g.phi_L, "phi_L", Quantity::angle);
  set(g.tau, "tau", Quantity::time);

  const nlohmann::json* g0 = find(obj, "G0");
  const nlohmann::json* g0_area = find(obj, "G0_area");
  if (g0 && g0_area)
    throw ConfigError(parent + ".G0", "give either G0 or G0_area, not both");
  if (g0) {
    g.G0 = parse_quantity(*g0, Quantity::angular_frequency, parent + ".G0");
  } else if (g0_area) {
    g.G0 = parse_quantity(*g0_area, Quantity::dimensionless, parent + ".G0_area") * g.v /
           g.W_C;
  } else if (!base) {
    throw ConfigError(parent + ".G0", "missing required field (G0 or G0_area)");
  }

  const nlohmann::json* o0 = find(obj, "Omega0");
  const nlohmann::json* o0_area = find(obj, "Omega0_area");
  if (o0 && o0_area)
    throw ConfigError(parent + ".Omega0", "give either Omega0 or Omega0_area, not both");
  if (o0) {
    g.Omega0 = parse_quantity(*o0, Quantity::angular_frequency, parent + ".Omega0");
  } else if (o0_area) {
    g.Omega0 =
        parse_quantity(*o0_area, Quantity::dimensionless, parent + ".Omega0_area") * g.v /
        g.W_L;
  } else if (!base) {
    throw ConfigError(parent + ".Omega0", "missing required field (Omega0 or Omega0_area)");
  }

  try {
    g.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(parent, err.what());
  }
  return g;
}

int parse_int(const nlohmann::json& obj, const std::string& key, const std::string& parent,
              int fallback) {
  const nlohmann::json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer())
    throw ConfigError(parent + "." + key, "expected an integer");
  return v->get<int>();
}

}  // namespace

RunConfig parse_config(const nlohmann::json& document) {
  if (!document.is_object()) throw ConfigError("<root>", "expected a JSON object");

  // A run manifest wraps the resolved configuration under "config".
  const nlohmann::json& doc =
      document.contains("config") && document["config"].is_object() ? document["config"]
                                                                    : document;

  RunConfig cfg;
  if (const nlohmann::json* mode = find(doc, "mode")) {
    if (!mode->is_string()) throw ConfigError("mode", "expected a string");
    cfg.mode = mode->get<std::string>();
  }
  static const std::vector<std::string> kModes = {"simulate", "protocol", "scan",
                                                  "classify", "adiabaticity", ""};
  if (std::find(kModes.begin(), kModes.end(), cfg.mode) == kModes.end())
    throw ConfigError("mode", "unknown mode '" + cfg.mode + "'");

  if (const nlohmann::json* p = find(doc, "protocol")) {
    if (!p->is_string()) throw ConfigError("protocol", "expected a string");
    cfg.protocol = p->get<std::string>();
    static const std::vector<std::string> kProtocols = {"atom-photon", "atom-atom",
                                                        "photon-photon"};
    if (std::find(kProtocols.begin(), kProtocols.end(), cfg.protocol) == kProtocols.end())
      throw ConfigError("protocol", "unknown protocol '" + cfg.protocol + "'");
  }

  const nlohmann::json* geom = find(doc, "geometry");
  if (!geom) throw ConfigError("geometry", "missing required field");
  cfg.geometry = parse_geometry(*geom, "geometry", nullptr);

  if (const nlohmann::json* geom2 = find(doc, "geometry2"))
    cfg.geometry2 = parse_geometry(*geom2, "geometry2", &cfg.geometry);

  cfg.atom = parse_int(doc, "atom", "<root>", 1);
  if (cfg.atom != 1 && cfg.atom != 2) throw ConfigError("atom", "must be 1 or 2");

  if (const nlohmann::json* init = find(doc, "initial_state")) {
    if (!init->is_string()) throw ConfigError("initial_state", "expected a string");
    cfg.initial_state = init->get<std::string>();
    static const std::vector<std::string> kStates = {"g1_0", "e_0", "g2_1"};
    if (std::find(kStates.begin(), kStates.end(), cfg.initial_state) == kStates.end())
      throw ConfigError("initial_state", "must be one of g1_0, e_0, g2_1");
  }

  if (const nlohmann::json* integ = find(doc, "integrator")) {
    if (!integ->is_object()) throw ConfigError("integrator", "expected an object");
    cfg.integrator.rel_tol = optional_quantity(*integ, "rel_tol", Quantity::dimensionless,
                                               "integrator", cfg.integrator.rel_tol);
    cfg.integrator.abs_tol = optional_quantity(*integ, "abs_tol", Quantity::dimensionless,
                                               "integrator", cfg.integrator.abs_tol);
    cfg.integrator.max_step = optional_quantity(*integ, "max_step", Quantity::time,
                                                "integrator", cfg.integrator.max_step);
    if (!(cfg.integrator.rel_tol > 0.0) || !(cfg.integrator.abs_tol > 0.0) ||
        !(cfg.integrator.max_step > 0.0))
      throw ConfigError("integrator", "tolerances and max_step must be positive");
  }

  if (const nlohmann::json* out = find(doc, "output")) {
    if (!out->is_object()) throw ConfigError("output", "expected an object");
    if (const nlohmann::json* dir = find(*out, "dir")) {
      if (!dir->is_string()) throw ConfigError("output.dir", "expected a string");
      cfg.output.dir = dir->get<std::string>();
    }
    cfg.output.samples = parse_int(*out, "samples", "output", cfg.output.samples);
    if (cfg.output.samples < 2) throw ConfigError("output.samples", "must be at least 2");
    if (const nlohmann::json* formats = find(*out, "formats")) {
      if (!formats->is_array()) throw ConfigError("output.formats", "expected an array");
      for (const auto& f : *formats) {
        if (!f.is_string()) throw ConfigError("output.formats", "expected strings");
        const std::string name = f.get<std::string>();
        if (name != "csv" && name != "json" && name != "svg")
          throw ConfigError("output.formats", "unknown format '" + name + "'");
        cfg.output.formats.push_back(name);
      }
    }
  }

  if (const nlohmann::json* sc = find(doc, "scan")) {
    if (!sc->is_object()) throw ConfigError("scan", "expected an object");
    cfg.scan.z0_min = optional_quantity(*sc, "z0_min", Quantity::length, "scan", cfg.scan.z0_min);
    cfg.scan.z0_max = optional_quantity(*sc, "z0_max", Quantity::length, "scan", cfg.scan.z0_max);
    cfg.scan.d_min = optional_quantity(*sc, "d_min", Quantity::length, "scan", cfg.scan.d_min);
    cfg.scan.d_max = optional_quantity(*sc, "d_max", Quantity::length, "scan", cfg.scan.d_max);
    cfg.scan.resolution_z0 = parse_int(*sc, "resolution_z0", "scan", cfg.scan.resolution_z0);
    cfg.scan.resolution_d = parse_int(*sc, "resolution_d", "scan", cfg.scan.resolution_d);
    cfg.scan.workers = parse_int(*sc, "workers", "scan", cfg.scan.workers);
    cfg.scan.target_P =
        optional_quantity(*sc, "target_P", Quantity::dimensionless, "scan", cfg.scan.target_P);
    cfg.scan.tol_P =
        optional_quantity(*sc, "tol_P", Quantity::dimensionless, "scan", cfg.scan.tol_P);
    cfg.scan.tol_e =
        optional_quantity(*sc, "tol_e", Quantity::dimensionless, "scan", cfg.scan.tol_e);
    if (cfg.scan.resolution_z0 < 1 || cfg.scan.resolution_d < 1)
      throw ConfigError("scan", "resolution must be at least 1 per axis");
    if (cfg.scan.workers < 1) throw ConfigError("scan.workers", "must be at least 1");
  }

  if (const nlohmann::json* t = find(doc, "t_int"))
    cfg.t_int = parse_quantity(*t, Quantity::time, "t_int");

  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError("<file>", std::string("JSON parse error: ") + err.what());
  }
  return parse_config(doc);
}

namespace {

nlohmann::json geometry_json(const FieldGeometry& g) {
  return nlohmann::json{{"G0", g.G0},   {"Omega0", g.Omega0}, {"W_C", g.W_C},
                        {"W_L", g.W_L}, {"lambda", g.lambda}, {"v", g.v},
                        {"z0", g.z0},   {"d", g.d},           {"phi_L", g.phi_L},
                        {"tau", g.tau}, {"x0", g.x0}};
}

}  // namespace

nlohmann::json canonical_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["mode"] = cfg.mode;
  if (!cfg.protocol.empty()) j["protocol"] = cfg.protocol;
  j["geometry"] = geometry_json(cfg.geometry);
  if (cfg.geometry2) j["geometry2"] = geometry_json(*cfg.geometry2);
  j["atom"] = cfg.atom;
  j["initial_state"] = cfg.initial_state;
  j["integrator"] = {{"rel_tol", cfg.integrator.rel_tol},
                     {"abs_tol", cfg.integrator.abs_tol}};
  if (std::isfinite(cfg.integrator.max_step))
    j["integrator"]["max_step"] = cfg.integrator.max_step;
  j["output"] = {{"dir", cfg.output.dir}, {"samples", cfg.output.samples}};
  if (!cfg.output.formats.empty()) j["output"]["formats"] = cfg.output.formats;
  j["scan"] = {{"z0_min", cfg.scan.z0_min},
               {"z0_max", cfg.scan.z0_max},
               {"d_min", cfg.scan.d_min},
               {"d_max", cfg.scan.d_max},
               {"resolution_z0", cfg.scan.resolution_z0},
               {"resolution_d", cfg.scan.resolution_d},
               {"workers", cfg.scan.workers},
               {"target_P", cfg.scan.target_P},
               {"tol_P", cfg.scan.tol_P},
               {"tol_e", cfg.scan.tol_e}};
  if (cfg.t_int) j["t_int"] = *cfg.t_int;
  return j;
}

}  // namespace fstirap
