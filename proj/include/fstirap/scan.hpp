#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fstirap/fields.hpp"
#include "fstirap/protocols.hpp"

namespace fstirap {

enum class CellStatus { ok, failed };

struct ScanCell {
  double P_g10 = 0.0;
  double P_g21 = 0.0;
  double P_e0 = 0.0;
  double concurrence = 0.0;
  CellStatus status = CellStatus::failed;
  std::string error;
};

/// Final-population grid over the trajectory offset z0 and the
/// cavity-to-laser distance d. Cells are stored row-major with z0 as the
/// outer (slow) index.
struct ScanGrid {
  std::vector<double> z0_values;  // m, ascending
  std::vector<double> d_values;   // m, ascending
  std::vector<ScanCell> cells;
  int failure_count = 0;

  const ScanCell& at(int iz, int id) const {
    return cells[static_cast<std::size_t>(iz) * d_values.size() + id];
  }
};

struct ScanOptions {
  int workers = 1;
  ProtocolOptions protocol;

  ScanOptions() { protocol.samples = 2; }  // only endpoints are needed per cell
};

/// Run the single-atom protocol at every grid point, substituting (z0, d)
/// into the base geometry. Failed cells are recorded with their error and
/// the scan continues. Cell results are independent of the worker count.
ScanGrid scan(const FieldGeometry& base_geom, std::pair<double, double> z0_range,
              std::pair<double, double> d_range, std::pair<int, int> resolution,
              const ScanOptions& options = {});

struct OperatingPoint {
  double z0 = 0.0;
  double d = 0.0;
  double P_g10 = 0.0;
  double P_e0 = 0.0;
  double score = 0.0;  // |P_g10 - target| + P_e0
};

/// Cells with |P_g10 - target_P| < tol_P and P_e0 < tol_e, sorted by score.
std::vector<OperatingPoint> locate_operating_points(const ScanGrid& grid, double target_P,
                                                    double tol_P, double tol_e);

}  // namespace fstirap
