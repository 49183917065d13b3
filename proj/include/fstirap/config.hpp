#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "fstirap/fields.hpp"
#include "fstirap/propagator.hpp"

namespace fstirap {

/// Configuration problem: carries the offending field path for diagnostics.
struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string field_path, const std::string& message)
      : std::runtime_error(field_path + ": " + message), field(std::move(field_path)) {}
};

/// Parse one physical quantity. Bare numbers are taken as canonical SI
/// (m, s, m/s, rad, rad/s); strings may carry a unit suffix which is
/// normalized away. Frequencies given in the Hz family are multiplied by
/// 2*pi to become angular.
enum class Quantity { length, time, speed, angle, angular_frequency, dimensionless };

double parse_quantity(const nlohmann::json& value, Quantity quantity,
                      const std::string& field_path);

struct OutputConfig {
  std::string dir = ".";
  int samples = 2000;
  std::vector<std::string> formats;  // subset of {csv, json, svg}; empty = mode default
};

struct ScanConfig {
  double z0_min = 0.0, z0_max = 60e-6;  // m
  double d_min = 0.0, d_max = 60e-6;    // m
  int resolution_z0 = 101, resolution_d = 101;
  int workers = 1;
  double target_P = 0.5, tol_P = 0.01, tol_e = 0.01;
};

struct RunConfig {
  std::string mode;      // simulate | protocol | scan | classify | adiabaticity
  std::string protocol;  // atom-photon | atom-atom | photon-photon
  FieldGeometry geometry;
  std::optional<FieldGeometry> geometry2;
  int atom = 1;                        // which pulse set simulate/classify use
  std::string initial_state = "g1_0";  // g1_0 | e_0 | g2_1
  StepControl integrator;
  OutputConfig output;
  ScanConfig scan;
  std::optional<double> t_int;  // s, adiabaticity interaction time override
};

/// Parse a configuration document; run manifests (documents with a "config"
/// member produced by earlier runs) are accepted and unwrapped, so a
/// manifest can be re-fed to reproduce a run.
RunConfig parse_config(const nlohmann::json& doc);

RunConfig load_config_file(const std::string& path);

/// Fully resolved configuration with every quantity in canonical SI units.
nlohmann::json canonical_json(const RunConfig& config);

}  // namespace fstirap
