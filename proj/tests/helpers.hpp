#pragma once

// Reference operating points shared across the test suites.

#include "fstirap/fields.hpp"

namespace fstirap::testing {

// Optical half-transfer operating point: the atom crosses the cavity mode
// 31.9 um off-axis and meets the laser 30.2 um downstream; the pulses end in
// a ~1:1 ratio, leaving the equal g1/g2 superposition.
inline FieldGeometry half_transfer_geometry() {
  FieldGeometry g;
  g.W_L = 20e-6;
  g.W_C = 30e-6;
  g.lambda = 780e-9;
  g.v = 2.0;
  g.Omega0 = 50.0 * g.v / g.W_L;  // pulse-area products of 50: deep in the
  g.G0 = 50.0 * g.v / g.W_C;      // adiabatic regime
  g.z0 = 31.9e-6;
  g.d = 30.2e-6;
  return g;
}

// Second atom: same beams, crossing on the cavity axis (z0 = 0) with delay
// tau, meeting the laser before the cavity.
inline FieldGeometry second_atom_geometry(double tau) {
  FieldGeometry g = half_transfer_geometry();
  g.z0 = 0.0;
  g.tau = tau;
  return g;
}

// On-axis crossing with a long cavity-to-laser distance: the stokes pulse
// has died away while the pump is still strong, i.e. a completed transfer.
inline FieldGeometry full_transfer_geometry() {
  FieldGeometry g = half_transfer_geometry();
  g.z0 = 0.0;
  g.d = 50e-6;
  return g;
}

}  // namespace fstirap::testing
