#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fstirap/config.hpp"
#include "fstirap/io.hpp"
#include "fstirap/propagator.hpp"
#include "fstirap/protocols.hpp"
#include "fstirap/scan.hpp"
#include "fstirap/version.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliOverrides {
  std::string config_path;
  std::string out_dir;
  int workers = 0;
  int samples = 0;
  std::vector<std::string> formats;
};

void apply_overrides(fstirap::RunConfig& cfg, const CliOverrides& cli) {
  if (!cli.out_dir.empty()) cfg.output.dir = cli.out_dir;
  if (cli.workers > 0) cfg.scan.workers = cli.workers;
  if (cli.samples > 0) cfg.output.samples = cli.samples;
  if (!cli.formats.empty()) cfg.output.formats = cli.formats;
}

bool wants(const fstirap::RunConfig& cfg, const std::string& format,
           const std::vector<std::string>& defaults) {
  const auto& formats = cfg.output.formats.empty() ? defaults : cfg.output.formats;
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Eigen::Vector3cd initial_amplitudes(const std::string& name) {
  if (name == "g1_0") return {1.0, 0.0, 0.0};
  if (name == "e_0") return {0.0, 1.0, 0.0};
  return {0.0, 0.0, 1.0};  // g2_1; names validated at config parse
}

fstirap::ProtocolOptions protocol_options(const fstirap::RunConfig& cfg) {
  fstirap::ProtocolOptions opt;
  opt.step = cfg.integrator;
  opt.samples = cfg.output.samples;
  return opt;
}

int run_simulate(const fstirap::RunConfig& cfg, std::vector<std::string>& outputs) {
  using namespace fstirap;
  const PulsePair pulses =
      cfg.atom == 1 ? pulses_atom1(cfg.geometry) : pulses_atom2(cfg.geometry);
  const HamiltonianFn h = pulse_hamiltonian(pulses);
  const Trajectory traj = propagate(h, initial_amplitudes(cfg.initial_state),
                                    pulses.t_min, pulses.t_max, cfg.integrator,
                                    cfg.output.samples);
  const EigenDiagnostics diag = instantaneous_eigen_diagnostics(h, traj);

  if (wants(cfg, "csv", {"csv", "json"})) {
    const fs::path path = fs::path(cfg.output.dir) / "trajectory.csv";
    atomic_write(path, trajectory_csv(traj, diag));
    outputs.push_back(path.string());
  }
  if (wants(cfg, "json", {"csv", "json"})) {
    json summary;
    summary["norm_drift"] = traj.norm_drift;
    summary["t_begin_s"] = traj.times.front();
    summary["t_end_s"] = traj.times.back();
    json pops;
    for (int i = 0; i < 3; ++i)
      pops[traj.basis[i].str()] = traj.populations.back()(i);
    summary["final_populations"] = pops;
    const fs::path path = fs::path(cfg.output.dir) / "simulate_summary.json";
    atomic_write(path, dump(summary));
    outputs.push_back(path.string());
  }
  return 0;
}

int run_protocol(const fstirap::RunConfig& cfg, std::vector<std::string>& outputs) {
  using namespace fstirap;
  if (cfg.protocol.empty())
    throw ConfigError("protocol", "missing required field for protocol mode");

  const ProtocolOptions opt = protocol_options(cfg);
  ProtocolResult result;
  if (cfg.protocol == "atom-photon") {
    result = atom_photon_protocol(cfg.geometry, opt);
  } else {
    if (!cfg.geometry2)
      throw ConfigError("geometry2",
                        "missing required field for the " + cfg.protocol + " protocol");
    result = cfg.protocol == "atom-atom"
                 ? atom_atom_protocol(cfg.geometry, *cfg.geometry2, opt)
                 : photon_photon_protocol(cfg.geometry, *cfg.geometry2, opt);
  }

  const fs::path path = fs::path(cfg.output.dir) / "protocol_result.json";
  atomic_write(path, dump(protocol_result_json(result)));
  outputs.push_back(path.string());
  return 0;
}

int run_scan(const fstirap::RunConfig& cfg, std::vector<std::string>& outputs) {
  using namespace fstirap;
  ScanOptions opt;
  opt.workers = cfg.scan.workers;
  opt.protocol.step = cfg.integrator;

  const ScanGrid grid = scan(cfg.geometry, {cfg.scan.z0_min, cfg.scan.z0_max},
                             {cfg.scan.d_min, cfg.scan.d_max},
                             {cfg.scan.resolution_z0, cfg.scan.resolution_d}, opt);
  const std::vector<OperatingPoint> points =
      locate_operating_points(grid, cfg.scan.target_P, cfg.scan.tol_P, cfg.scan.tol_e);

  if (wants(cfg, "csv", {"csv", "json", "svg"})) {
    const fs::path path = fs::path(cfg.output.dir) / "scan_grid.csv";
    atomic_write(path, grid_csv(grid));
    outputs.push_back(path.string());
  }
  if (wants(cfg, "json", {"csv", "json", "svg"})) {
    json j;
    j["failure_count"] = grid.failure_count;
    j["operating_points"] = operating_points_json(points);
    const fs::path path = fs::path(cfg.output.dir) / "operating_points.json";
    atomic_write(path, dump(j));
    outputs.push_back(path.string());
  }
  if (wants(cfg, "svg", {"csv", "json", "svg"})) {
    const fs::path half = fs::path(cfg.output.dir) / "scan_half_transfer.svg";
    atomic_write(half, heatmap_svg(grid, HeatmapQuantity::half_transfer_distance, points));
    outputs.push_back(half.string());
    const fs::path exc = fs::path(cfg.output.dir) / "scan_excited.svg";
    atomic_write(exc, heatmap_svg(grid, HeatmapQuantity::excited_population, points));
    outputs.push_back(exc.string());
  }

  if (grid.failure_count > 0) {
    std::cerr << grid.failure_count << " scan cell(s) failed; see status column\n";
    return 1;
  }
  return 0;
}

int run_classify(const fstirap::RunConfig& cfg, std::vector<std::string>& outputs) {
  using namespace fstirap;
  const PulsePair pulses =
      cfg.atom == 1 ? pulses_atom1(cfg.geometry) : pulses_atom2(cfg.geometry);
  const SequenceClassification c = classify_sequence(pulses);
  const fs::path path = fs::path(cfg.output.dir) / "classification.json";
  atomic_write(path, dump(classification_json(c)));
  outputs.push_back(path.string());
  return 0;
}

int run_adiabaticity(const fstirap::RunConfig& cfg, std::vector<std::string>& outputs) {
  using namespace fstirap;
  const AdiabaticityReport report = adiabaticity_check(cfg.geometry, cfg.t_int);
  const fs::path path = fs::path(cfg.output.dir) / "adiabaticity.json";
  atomic_write(path, dump(adiabaticity_json(report)));
  outputs.push_back(path.string());
  return 0;
}

int dispatch(fstirap::RunConfig cfg, const CliOverrides& cli) {
  using namespace fstirap;
  apply_overrides(cfg, cli);
  if (cfg.mode.empty())
    throw ConfigError("mode", "no mode given (set in config or use a subcommand)");

  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> outputs;
  int status = 0;
  if (cfg.mode == "simulate") {
    status = run_simulate(cfg, outputs);
  } else if (cfg.mode == "protocol") {
    status = run_protocol(cfg, outputs);
  } else if (cfg.mode == "scan") {
    status = run_scan(cfg, outputs);
  } else if (cfg.mode == "classify") {
    status = run_classify(cfg, outputs);
  } else {
    status = run_adiabaticity(cfg, outputs);
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kVersion;
  manifest["mode"] = cfg.mode;
  manifest["wall_time_s"] = elapsed.count();
  manifest["outputs"] = outputs;
  manifest["config"] = canonical_json(cfg);
  atomic_write(fs::path(cfg.output.dir) / "run_manifest.json", dump(manifest));

  for (const std::string& path : outputs) std::cout << "wrote " << path << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-level atom / cavity / laser adiabatic-passage simulator"};
  app.set_version_flag("--version", std::string(fstirap::kVersion));

  CliOverrides cli;
  app.add_option("--config", cli.config_path, "configuration file (JSON)");
  app.add_option("--out", cli.out_dir, "output directory (overrides output.dir)");
  app.add_option("--workers", cli.workers, "scan worker threads");
  app.add_option("--samples", cli.samples, "trajectory sample count");
  app.add_option("--format", cli.formats, "output formats: csv, json, svg (repeatable)")
      ->check(CLI::IsMember({"csv", "json", "svg"}));

  std::string mode_override;
  std::string protocol_override;
  for (const char* name : {"simulate", "protocol", "scan", "classify", "adiabaticity"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&mode_override, name] { mode_override = name; });
    if (std::string(name) == "protocol") {
      sub->add_option("kind", protocol_override, "atom-photon | atom-atom | photon-photon")
          ->check(CLI::IsMember({"atom-photon", "atom-atom", "photon-photon"}));
    }
  }
  app.require_subcommand(0, 1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cli.config_path.empty())
      throw fstirap::ConfigError("--config", "a configuration file is required");
    fstirap::RunConfig cfg = fstirap::load_config_file(cli.config_path);
    if (!mode_override.empty()) cfg.mode = mode_override;
    if (!protocol_override.empty()) cfg.protocol = protocol_override;
    return dispatch(std::move(cfg), cli);
  } catch (const fstirap::ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
}
