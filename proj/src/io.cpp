#include "fstirap/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fstirap {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0.0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.parent_path().empty() ? "." : path.parent_path();
  fs::create_directories(dir);
  fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string trajectory_csv(const Trajectory& trajectory,
                           const EigenDiagnostics& diagnostics) {
  std::ostringstream out;
  out << "time_s";
  for (const BasisLabel& l : trajectory.basis) {
    out << ",re_" << l.str() << ",im_" << l.str();
  }
  for (const BasisLabel& l : trajectory.basis) out << ",P_" << l.str();
  out << ",dark_overlap\n";

  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << format_double(trajectory.times[k]);
    for (int i = 0; i < 3; ++i) {
      out << ',' << format_double(trajectory.states[k](i).real()) << ','
          << format_double(trajectory.states[k](i).imag());
    }
    for (int i = 0; i < 3; ++i) out << ',' << format_double(trajectory.populations[k](i));
    const double overlap =
        k < diagnostics.dark_overlap.size() ? diagnostics.dark_overlap[k]
                                            : std::numeric_limits<double>::quiet_NaN();
    out << ',' << format_double(overlap) << '\n';
  }
  return out.str();
}

std::string grid_csv(const ScanGrid& grid) {
  std::ostringstream out;
  out << "z0_m,d_m,P_g10,P_g21,P_e0,concurrence,status\n";
  for (std::size_t iz = 0; iz < grid.z0_values.size(); ++iz) {
    for (std::size_t id = 0; id < grid.d_values.size(); ++id) {
      const ScanCell& cell = grid.at(static_cast<int>(iz), static_cast<int>(id));
      out << format_double(grid.z0_values[iz]) << ',' << format_double(grid.d_values[id]);
      if (cell.status == CellStatus::ok) {
        out << ',' << format_double(cell.P_g10) << ',' << format_double(cell.P_g21) << ','
            << format_double(cell.P_e0) << ',' << format_double(cell.concurrence)
            << ",ok\n";
      } else {
        out << ",nan,nan,nan,nan,failed\n";
      }
    }
  }
  return out.str();
}

namespace {

nlohmann::json complex_json(const std::complex<double>& z) {
  return nlohmann::json{{"re", z.real()}, {"im", z.imag()}};
}

nlohmann::json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

}  // namespace

nlohmann::json classification_json(const SequenceClassification& c) {
  nlohmann::json j;
  j["ordering"] = to_string(c.ordering);
  j["ending_ratio"] = finite_or_null(c.ending_ratio);
  j["ratio_rel_std"] = finite_or_null(c.ratio_rel_std);
  j["mixing_angle_rad"] = finite_or_null(c.mixing_angle);
  j["process"] = to_string(c.process);
  j["window_begin_s"] = c.window_begin;
  j["window_end_s"] = c.window_end;
  return j;
}

nlohmann::json protocol_result_json(const ProtocolResult& r) {
  nlohmann::json j;
  j["protocol"] = r.protocol;
  j["mixing_angle_rad"] = finite_or_null(r.mixing_angle);
  if (r.protocol == "photon_photon") j["alpha_rad"] = r.alpha;
  j["concurrence"] = r.concurrence;
  j["factorization_purity"] = r.factorization_purity;
  j["residual_excitation"] = r.residual_excitation;

  nlohmann::json branches = nlohmann::json::array();
  for (const auto& [label, amp] : r.branch_amplitudes) {
    nlohmann::json b = complex_json(amp);
    b["label"] = label.str();
    branches.push_back(b);
  }
  j["branch_amplitudes"] = branches;

  nlohmann::json state = nlohmann::json::array();
  for (std::size_t i = 0; i < r.final_state.basis.size(); ++i) {
    nlohmann::json entry = complex_json(r.final_state.amplitudes(static_cast<Eigen::Index>(i)));
    entry["label"] = r.final_state.basis[i].str();
    state.push_back(entry);
  }
  j["final_state"] = state;
  j["populations"] = r.populations;
  j["sequence"] = classification_json(r.sequence);
  j["warnings"] = r.warnings;
  j["lab_frame_phase"] = r.lab_frame_phase;
  return j;
}

nlohmann::json adiabaticity_json(const AdiabaticityReport& report) {
  nlohmann::json j;
  j["pump_area_product"] = report.pump_area_product;
  j["stokes_area_product"] = report.stokes_area_product;
  j["interaction_product"] = report.interaction_product;
  j["verdict"] = to_string(report.verdict);
  return j;
}

nlohmann::json operating_points_json(const std::vector<OperatingPoint>& points) {
  nlohmann::json arr = nlohmann::json::array();
  for (const OperatingPoint& p : points) {
    arr.push_back({{"z0_m", p.z0},
                   {"d_m", p.d},
                   {"P_g10", p.P_g10},
                   {"P_e0", p.P_e0},
                   {"score", p.score}});
  }
  return arr;
}

std::string heatmap_svg(const ScanGrid& grid, HeatmapQuantity quantity,
                        const std::vector<OperatingPoint>& marks) {
  const std::size_t nz = grid.z0_values.size();
  const std::size_t nd = grid.d_values.size();
  if (nz == 0 || nd == 0) throw std::invalid_argument("empty grid");

  auto value_of = [&](const ScanCell& cell) {
    return quantity == HeatmapQuantity::half_transfer_distance
               ? std::abs(0.5 - cell.P_g10)
               : cell.P_e0;
  };

  double vmin = std::numeric_limits<double>::infinity(), vmax = 0.0;
  for (const ScanCell& cell : grid.cells) {
    if (cell.status != CellStatus::ok) continue;
    vmin = std::min(vmin, value_of(cell));
    vmax = std::max(vmax, value_of(cell));
  }
  if (!std::isfinite(vmin)) { vmin = 0.0; vmax = 1.0; }
  if (vmax <= vmin) vmax = vmin + 1.0;

  const double plot_w = 480.0, plot_h = 480.0;
  const double left = 70.0, top = 30.0, bottom = 60.0;
  const double width = left + plot_w + 30.0, height = top + plot_h + bottom;
  const double z_lo = grid.z0_values.front(), z_hi = grid.z0_values.back();
  const double d_lo = grid.d_values.front(), d_hi = grid.d_values.back();
  const double z_span = z_hi > z_lo ? z_hi - z_lo : 1.0;
  const double d_span = d_hi > d_lo ? d_hi - d_lo : 1.0;
  const double cell_w = plot_w / static_cast<double>(nz);
  const double cell_h = plot_h / static_cast<double>(nd);

  auto x_of = [&](double z0) { return left + (z0 - z_lo) / z_span * plot_w; };
  auto y_of = [&](double d) { return top + plot_h - (d - d_lo) / d_span * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_double(width)
      << "\" height=\"" << format_double(height) << "\" viewBox=\"0 0 "
      << format_double(width) << ' ' << format_double(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const char* title = quantity == HeatmapQuantity::half_transfer_distance
                          ? "|1/2 - P_g10|"
                          : "P_e0";
  svg << "<text x=\"" << format_double(left + plot_w / 2) << "\" y=\"20\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" << title
      << "</text>\n";

  for (std::size_t iz = 0; iz < nz; ++iz) {
    for (std::size_t id = 0; id < nd; ++id) {
      const ScanCell& cell = grid.at(static_cast<int>(iz), static_cast<int>(id));
      int shade = 160;  // failed cells drawn mid-gray with a red tint
      bool failed = cell.status != CellStatus::ok;
      if (!failed) {
        const double t = (value_of(cell) - vmin) / (vmax - vmin);
        shade = static_cast<int>(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
      }
      // Cells centered on their grid coordinates.
      const double cx = x_of(grid.z0_values[iz]);
      const double cy = y_of(grid.d_values[id]);
      svg << "<rect x=\"" << format_double(cx - cell_w / 2) << "\" y=\""
          << format_double(cy - cell_h / 2) << "\" width=\"" << format_double(cell_w)
          << "\" height=\"" << format_double(cell_h) << "\" fill=\"rgb("
          << (failed ? 220 : shade) << ',' << shade << ',' << shade << ")\"/>\n";
    }
  }

  // Axes with five ticks each, in micrometers.
  svg << "<rect x=\"" << format_double(left - cell_w / 2) << "\" y=\""
      << format_double(top - cell_h / 2) << "\" width=\"" << format_double(plot_w + cell_w)
      << "\" height=\"" << format_double(plot_h + cell_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double z = z_lo + z_span * k / 4.0;
    const double d = d_lo + d_span * k / 4.0;
    svg << "<text x=\"" << format_double(x_of(z)) << "\" y=\""
        << format_double(top + plot_h + 25.0)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << format_double(z * 1e6) << "</text>\n";
    svg << "<text x=\"" << format_double(left - 10.0) << "\" y=\""
        << format_double(y_of(d) + 4.0)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
        << format_double(d * 1e6) << "</text>\n";
  }
  svg << "<text x=\"" << format_double(left + plot_w / 2) << "\" y=\""
      << format_double(height - 15.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">z0 "
         "[um]</text>\n";
  svg << "<text x=\"18\" y=\"" << format_double(top + plot_h / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 "
      << format_double(top + plot_h / 2) << ")\">d [um]</text>\n";

  for (const OperatingPoint& p : marks) {
    svg << "<circle cx=\"" << format_double(x_of(p.z0)) << "\" cy=\""
        << format_double(y_of(p.d))
        << "\" r=\"4\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace fstirap
