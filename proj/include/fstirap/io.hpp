#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fstirap/propagator.hpp"
#include "fstirap/protocols.hpp"
#include "fstirap/scan.hpp"

namespace fstirap {

/// Shortest representation that round-trips through IEEE-754 binary64.
std::string format_double(double x);

/// Write content to path atomically: temp file in the same directory, then
/// rename. No partially written file is ever visible at path.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Trajectory CSV. Columns, in order: time_s, then re_<label>/im_<label> per
/// basis label, then P_<label> per label, then dark_overlap (empty/nan when
/// the dark direction is undefined). One header row.
std::string trajectory_csv(const Trajectory& trajectory, const EigenDiagnostics& diagnostics);

/// Scan grid CSV with columns z0_m,d_m,P_g10,P_g21,P_e0,concurrence,status;
/// rows row-major with z0 as the outer index. Failed cells carry status
/// "failed" and nan values.
std::string grid_csv(const ScanGrid& grid);

nlohmann::json protocol_result_json(const ProtocolResult& result);

nlohmann::json adiabaticity_json(const AdiabaticityReport& report);

nlohmann::json classification_json(const SequenceClassification& classification);

nlohmann::json operating_points_json(const std::vector<OperatingPoint>& points);

enum class HeatmapQuantity { half_transfer_distance, excited_population };

/// Self-contained SVG heatmap of one scan quantity (linear grayscale color
/// map, labeled axes in micrometers, operating points drawn as white dots).
std::string heatmap_svg(const ScanGrid& grid, HeatmapQuantity quantity,
                        const std::vector<OperatingPoint>& marks);

}  // namespace fstirap
