#include "fstirap/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace fstirap {

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("resolution must be at least 1 per axis");
  if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
    throw std::invalid_argument("scan range must be finite and ordered");
  std::vector<double> values(n);
  if (n == 1) {
    values[0] = lo;
    return values;
  }
  for (int i = 0; i < n; ++i)
    values[i] = lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
  return values;
}

ScanCell run_cell(const FieldGeometry& base, double z0, double d,
                  const ProtocolOptions& options) {
  ScanCell cell;
  FieldGeometry geom = base;
  geom.z0 = z0;
  geom.d = d;
  try {
    const ProtocolResult r = atom_photon_protocol(geom, options);
    cell.P_g10 = std::norm(r.final_state.amplitudes(0));
    cell.P_e0 = std::norm(r.final_state.amplitudes(1));
    cell.P_g21 = std::norm(r.final_state.amplitudes(2));
    cell.concurrence = r.concurrence;
    cell.status = CellStatus::ok;
  } catch (const std::exception& err) {
    cell.status = CellStatus::failed;
    cell.error = err.what();
  }
  return cell;
}

}  // namespace

ScanGrid scan(const FieldGeometry& base_geom, std::pair<double, double> z0_range,
              std::pair<double, double> d_range, std::pair<int, int> resolution,
              const ScanOptions& options) {
  base_geom.validate();
  ScanGrid grid;
  grid.z0_values = linspace(z0_range.first, z0_range.second, resolution.first);
  grid.d_values = linspace(d_range.first, d_range.second, resolution.second);
  const std::size_t total = grid.z0_values.size() * grid.d_values.size();
  grid.cells.resize(total);

  const int workers = std::max(1, options.workers);
  auto work = [&](std::atomic<std::size_t>& next) {
    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      const std::size_t iz = i / grid.d_values.size();
      const std::size_t id = i % grid.d_values.size();
      grid.cells[i] =
          run_cell(base_geom, grid.z0_values[iz], grid.d_values[id], options.protocol);
    }
  };

  std::atomic<std::size_t> next{0};
  if (workers == 1) {
    work(next);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back([&] { work(next); });
    for (std::thread& t : pool) t.join();
  }

  grid.failure_count = static_cast<int>(
      std::count_if(grid.cells.begin(), grid.cells.end(),
                    [](const ScanCell& c) { return c.status == CellStatus::failed; }));
  return grid;
}

std::vector<OperatingPoint> locate_operating_points(const ScanGrid& grid, double target_P,
                                                    double tol_P, double tol_e) {
  std::vector<OperatingPoint> points;
  for (std::size_t iz = 0; iz < grid.z0_values.size(); ++iz) {
    for (std::size_t id = 0; id < grid.d_values.size(); ++id) {
      const ScanCell& cell = grid.at(static_cast<int>(iz), static_cast<int>(id));
      if (cell.status != CellStatus::ok) continue;
      const double dp = std::abs(cell.P_g10 - target_P);
      if (dp < tol_P && cell.P_e0 < tol_e) {
        points.push_back({grid.z0_values[iz], grid.d_values[id], cell.P_g10, cell.P_e0,
                          dp + cell.P_e0});
      }
    }
  }
  std::sort(points.begin(), points.end(), [](const OperatingPoint& a, const OperatingPoint& b) {
    if (a.score != b.score) return a.score < b.score;
    if (a.z0 != b.z0) return a.z0 < b.z0;
    return a.d < b.d;
  });
  return points;
}

}  // namespace fstirap
