#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fstirap/fields.hpp"
#include "helpers.hpp"

using namespace fstirap;
using fstirap::testing::full_transfer_geometry;
using fstirap::testing::half_transfer_geometry;
using fstirap::testing::second_atom_geometry;
using std::numbers::pi;

namespace {

// Independent long-double evaluation of the first atom's envelopes, written
// out directly from the beam profile rather than through the library path.
long double pump1_ld(const FieldGeometry& g, long double t) {
  const long double arg1 = static_cast<long double>(g.z0) * g.z0 /
                           (static_cast<long double>(g.W_L) * g.W_L);
  const long double u = (static_cast<long double>(g.v) * t - g.d) / g.W_L;
  return static_cast<long double>(g.Omega0) * std::exp(-arg1) * std::exp(-u * u);
}

long double stokes1_ld(const FieldGeometry& g, long double t) {
  const long double u = static_cast<long double>(g.v) * t / g.W_C;
  const long double c =
      std::cos(2.0L * std::numbers::pi_v<long double> * g.z0 / g.lambda);
  return static_cast<long double>(g.G0) * std::exp(-u * u) * std::fabs(c);
}

}  // namespace

TEST_CASE("Hermite-Gauss mode coupling") {
  FieldGeometry g = half_transfer_geometry();
  g.G0 = 1e6;

  CHECK(hermite_gauss_coupling(0, 0, 0, 0, 0, g) == doctest::Approx(1e6).epsilon(1e-15));
  CHECK(hermite_gauss_coupling(g.W_C, 0, 0, 0, 0, g) ==
        doctest::Approx(1e6 * std::exp(-1.0)).epsilon(1e-14));
  // Standing-wave node a quarter wavelength off axis.
  CHECK(std::abs(hermite_gauss_coupling(0, 0, g.lambda / 4.0, 0, 0, g)) < 1e-9 * g.G0);
  // Odd transverse mode vanishes on its nodal line.
  CHECK(hermite_gauss_coupling(0.0, 3e-6, 0.0, 1, 0, g) == 0.0);
  CHECK_THROWS_AS(hermite_gauss_coupling(0, 0, 0, -1, 0, g), std::invalid_argument);
}

TEST_CASE("first-atom pulses") {
  const FieldGeometry g = half_transfer_geometry();

  SUBCASE("standing-wave node kills the stokes pulse identically") {
    FieldGeometry node = g;
    node.z0 = node.lambda / 4.0;
    const PulsePair p = pulses_atom1(node);
    CHECK(p.stokes(0.0) == 0.0);
    CHECK(p.stokes(5e-6) == 0.0);
    CHECK(p.stokes(-3e-5) == 0.0);
  }

  SUBCASE("on-axis values at the cavity center") {
    FieldGeometry axis = g;
    axis.z0 = 0.0;
    const PulsePair p = pulses_atom1(axis);
    CHECK(p.stokes(0.0) == doctest::Approx(axis.G0).epsilon(1e-15));
    CHECK(p.pump(0.0) ==
          doctest::Approx(axis.Omega0 * std::exp(-axis.d * axis.d / (axis.W_L * axis.W_L)))
              .epsilon(1e-14));
  }

  SUBCASE("envelope samples match an independent high-precision evaluation") {
    const PulsePair p = pulses_atom1(g);
    for (const double t : {0.0, 5e-6, 1.51e-5, 4e-5, -2e-5}) {
      CHECK(p.pump(t) ==
            doctest::Approx(static_cast<double>(pump1_ld(g, t))).epsilon(1e-12));
      CHECK(p.stokes(t) ==
            doctest::Approx(static_cast<double>(stokes1_ld(g, t))).epsilon(1e-12));
    }
  }

  SUBCASE("peak ordering and support decay") {
    const PulsePair p = pulses_atom1(g);
    CHECK(p.stokes_peak_time == 0.0);
    CHECK(p.pump_peak_time == doctest::Approx(g.d / g.v));
    CHECK(p.stokes_peak_time < p.pump_peak_time);
    const double peak = std::max(p.pump(p.pump_peak_time), p.stokes(0.0));
    CHECK(p.pump(p.t_min) <= 1e-6 * peak);
    CHECK(p.pump(p.t_max) <= 1e-6 * peak);
    CHECK(p.stokes(p.t_min) <= 1e-6 * peak);
    CHECK(p.stokes(p.t_max) <= 1e-6 * peak);
  }

  SUBCASE("sign flag: negative standing-wave factor folds into a pi phase") {
    FieldGeometry flipped = g;
    flipped.z0 = flipped.lambda / 2.0;  // cos = -1
    const PulsePair p = pulses_atom1(flipped);
    CHECK(p.stokes_sign == -1.0);
    CHECK(p.stokes(0.0) == doctest::Approx(flipped.G0).epsilon(1e-12));
    CHECK(p.stokes(0.0) >= 0.0);
  }

  SUBCASE("speed scaling compresses time but not amplitude") {
    FieldGeometry fast = g;
    fast.v = 3.0 * g.v;
    const PulsePair slow = pulses_atom1(g);
    const PulsePair quick = pulses_atom1(fast);
    for (const double t : {-1e-5, 0.0, 7e-6, 2.2e-5}) {
      CHECK(quick.pump(t / 3.0) == doctest::Approx(slow.pump(t)).epsilon(1e-13));
      CHECK(quick.stokes(t / 3.0) == doctest::Approx(slow.stokes(t)).epsilon(1e-13));
    }
  }
}

TEST_CASE("second-atom pulses") {
  const double tau = 4e-4;
  const FieldGeometry g = second_atom_geometry(tau);
  const PulsePair p = pulses_atom2(g);

  SUBCASE("values at the arrival time") {
    CHECK(p.stokes(tau) == doctest::Approx(g.G0).epsilon(1e-15));
    CHECK(p.pump(tau) ==
          doctest::Approx(g.Omega0 * std::exp(-g.d * g.d / (g.W_L * g.W_L))).epsilon(1e-14));
  }

  SUBCASE("laser peak precedes the cavity peak") {
    CHECK(p.pump_peak_time == doctest::Approx(tau - g.d / g.v));
    CHECK(p.stokes_peak_time == doctest::Approx(tau));
    CHECK(p.pump_peak_time < p.stokes_peak_time);
  }

  SUBCASE("envelope samples match an independent evaluation") {
    for (const double t : {tau, tau - 1.6e-5, tau + 2e-5}) {
      const long double s = static_cast<long double>(g.v) * (t - tau);
      const long double pump_expected =
          g.Omega0 * std::exp(-((s + g.d) / g.W_L) * ((s + g.d) / g.W_L));
      const long double stokes_expected = g.G0 * std::exp(-(s / g.W_C) * (s / g.W_C));
      CHECK(p.pump(t) == doctest::Approx(static_cast<double>(pump_expected)).epsilon(1e-12));
      CHECK(p.stokes(t) ==
            doctest::Approx(static_cast<double>(stokes_expected)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sequence classification") {
  SUBCASE("proportional envelopes are a perfect fractional ending") {
    PulsePair p;
    const double k = 0.73;
    p.stokes = [](double t) { return 1e6 * std::exp(-t * t / 1e-10); };
    p.pump = [k](double t) { return k * 1e6 * std::exp(-t * t / 1e-10); };
    p.t_min = -6e-5;
    p.t_max = 6e-5;
    p.pump_peak_time = p.stokes_peak_time = 0.0;
    const SequenceClassification c = classify_sequence(p);
    CHECK(c.process == ProcessKind::f_stirap);
    CHECK(c.ending_ratio == doctest::Approx(k).epsilon(1e-13));
    CHECK(c.mixing_angle == doctest::Approx(std::atan(k)).epsilon(1e-13));
    CHECK(c.ratio_rel_std < 1e-12);
  }

  SUBCASE("half-transfer operating point classifies as fractional with angle near pi/4") {
    const SequenceClassification c = classify_sequence(pulses_atom1(half_transfer_geometry()));
    CHECK(c.ordering == PulseOrdering::stokes_first);
    CHECK(c.process == ProcessKind::f_stirap);
    CHECK(std::abs(c.mixing_angle - pi / 4.0) < 0.15);
  }

  SUBCASE("second atom: pump first, ratio collapsing to zero, completed transfer") {
    const SequenceClassification c =
        classify_sequence(pulses_atom2(second_atom_geometry(0.0)));
    CHECK(c.ordering == PulseOrdering::pump_first);
    CHECK(c.ending_ratio < 0.05);
    CHECK(c.process == ProcessKind::stirap);
    CHECK(c.mixing_angle < 0.05);
  }

  SUBCASE("long cavity-to-laser distance: stokes dies first, completed transfer") {
    const SequenceClassification c = classify_sequence(pulses_atom1(full_transfer_geometry()));
    CHECK(c.ordering == PulseOrdering::stokes_first);
    CHECK(c.mixing_angle > 1.3);
    CHECK(c.process == ProcessKind::stirap);
  }

  SUBCASE("identically-zero pulse is an error") {
    FieldGeometry node = half_transfer_geometry();
    node.z0 = node.lambda / 4.0;
    CHECK_THROWS_AS(classify_sequence(pulses_atom1(node)), std::invalid_argument);
    FieldGeometry dark = half_transfer_geometry();
    dark.Omega0 = 0.0;
    CHECK_THROWS_AS(classify_sequence(pulses_atom1(dark)), std::invalid_argument);
  }

  SUBCASE("epsilon_rel outside (0,1) is rejected") {
    const PulsePair p = pulses_atom1(half_transfer_geometry());
    ClassifyOptions opt;
    opt.epsilon_rel = 0.0;
    CHECK_THROWS_AS(classify_sequence(p, opt), std::invalid_argument);
  }
}

TEST_CASE("geometry validation") {
  FieldGeometry g = half_transfer_geometry();
  g.W_C = 0.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = half_transfer_geometry();
  g.v = -2.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
  g = half_transfer_geometry();
  g.Omega0 = -1.0;
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}
