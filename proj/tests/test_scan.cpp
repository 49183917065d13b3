#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fstirap/io.hpp"
#include "fstirap/scan.hpp"
#include "helpers.hpp"

using namespace fstirap;
using fstirap::testing::half_transfer_geometry;
using std::numbers::pi;

TEST_CASE("single-cell scan at the half-transfer point") {
  const FieldGeometry base = half_transfer_geometry();
  const ScanGrid grid = scan(base, {31.9e-6, 31.9e-6}, {30.2e-6, 30.2e-6}, {1, 1});
  REQUIRE(grid.cells.size() == 1);
  const ScanCell& cell = grid.at(0, 0);
  CHECK(cell.status == CellStatus::ok);
  CHECK(std::abs(cell.P_g10 - 0.5) < 0.05);
  CHECK(cell.P_e0 < 0.01);
  CHECK(std::abs(cell.P_g10 + cell.P_g21 + cell.P_e0 - 1.0) <= 1e-8);
}

TEST_CASE("population conservation across a small grid") {
  const ScanGrid grid =
      scan(half_transfer_geometry(), {28e-6, 34e-6}, {28e-6, 33e-6}, {5, 4});
  CHECK(grid.failure_count == 0);
  for (const ScanCell& cell : grid.cells)
    CHECK(std::abs(cell.P_g10 + cell.P_g21 + cell.P_e0 - 1.0) <= 1e-8);
}

TEST_CASE("parallel and serial scans agree exactly") {
  const FieldGeometry base = half_transfer_geometry();
  ScanOptions serial;
  serial.workers = 1;
  ScanOptions parallel;
  parallel.workers = 4;
  const ScanGrid a = scan(base, {30e-6, 34e-6}, {29e-6, 32e-6}, {5, 4}, serial);
  const ScanGrid b = scan(base, {30e-6, 34e-6}, {29e-6, 32e-6}, {5, 4}, parallel);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].P_g10 == b.cells[i].P_g10);
    CHECK(a.cells[i].P_g21 == b.cells[i].P_g21);
    CHECK(a.cells[i].P_e0 == b.cells[i].P_e0);
    CHECK(a.cells[i].concurrence == b.cells[i].concurrence);
  }
  CHECK(grid_csv(a) == grid_csv(b));
}

TEST_CASE("identical scans export byte-identical CSV") {
  const FieldGeometry base = half_transfer_geometry();
  const ScanGrid a = scan(base, {0.0, 3e-6}, {28e-6, 32e-6}, {3, 3});
  const ScanGrid b = scan(base, {0.0, 3e-6}, {28e-6, 32e-6}, {3, 3});
  CHECK(grid_csv(a) == grid_csv(b));
}

TEST_CASE("standing-wave node: no cavity coupling, no photon, ever") {
  // On the node line the stokes pulse is identically zero; with the pump
  // area tuned to a full Rabi return the population comes back to g1.
  FieldGeometry base = half_transfer_geometry();
  base.z0 = base.lambda / 4.0;
  const double z_over_w = base.z0 / base.W_L;
  base.Omega0 =
      28.0 * std::sqrt(pi) * std::exp(z_over_w * z_over_w) * base.v / base.W_L;

  const ScanGrid grid =
      scan(base, {base.lambda / 4.0, base.lambda / 4.0}, {25e-6, 35e-6}, {1, 3});
  CHECK(grid.failure_count == 0);
  for (const ScanCell& cell : grid.cells) {
    CHECK(cell.P_g21 == 0.0);
    CHECK(cell.P_g10 > 0.999);
  }

  const auto points = locate_operating_points(grid, 1.0, 1e-3, 0.01);
  CHECK(points.size() == grid.cells.size());
}

TEST_CASE("far-separated beams leave the population in g1") {
  // d = 10 laser waists: the pulses no longer overlap, and at z0 = 3 laser
  // waists the pump is too weak to cycle population through e.
  FieldGeometry base = half_transfer_geometry();
  const ScanGrid grid = scan(base, {60e-6, 60e-6}, {200e-6, 200e-6}, {1, 1});
  const ScanCell& cell = grid.at(0, 0);
  CHECK(cell.status == CellStatus::ok);
  CHECK(cell.P_g10 > 0.99);
  CHECK(cell.P_g21 < 1e-6);
}

TEST_CASE("locating operating points") {
  const FieldGeometry base = half_transfer_geometry();
  const ScanGrid grid = scan(base, {30.6e-6, 32.4e-6}, {29.4e-6, 31.8e-6}, {4, 5});

  SUBCASE("half-transfer targets are found, sorted by score") {
    const auto points = locate_operating_points(grid, 0.5, 0.05, 0.01);
    REQUIRE(!points.empty());
    for (std::size_t i = 1; i < points.size(); ++i)
      CHECK(points[i - 1].score <= points[i].score);
    for (const OperatingPoint& p : points) {
      CHECK(std::abs(p.P_g10 - 0.5) < 0.05);
      CHECK(p.P_e0 < 0.01);
    }
  }

  SUBCASE("an impossible target yields an empty list") {
    CHECK(locate_operating_points(grid, 0.5, 1e-12, 1e-12).empty());
  }
}

TEST_CASE("scan input validation") {
  const FieldGeometry base = half_transfer_geometry();
  CHECK_THROWS_AS(scan(base, {1e-6, 0.0}, {0.0, 1e-6}, {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(scan(base, {0.0, 1e-6}, {0.0, 1e-6}, {0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(
      scan(base, {0.0, std::numeric_limits<double>::infinity()}, {0.0, 1e-6}, {2, 2}),
      std::invalid_argument);
}
