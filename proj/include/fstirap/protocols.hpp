#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fstirap/basis.hpp"
#include "fstirap/fields.hpp"
#include "fstirap/propagator.hpp"

namespace fstirap {

struct ProtocolSequencingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProtocolOptions {
  StepControl step;
  int samples = 2000;
  ClassifyOptions classify;
  double excitation_warn_threshold = 0.01;
};

/// Outcome of one entanglement-preparation protocol. All states are kept in
/// the rotating frame; the uncontrollable lab-frame optical phase factor
/// exp(-i(omega_L t + phi_L)) is carried as the symbolic note
/// lab_frame_phase rather than numerically.
struct ProtocolResult {
  std::string protocol;
  StateVector final_state;  // composite basis, rotating frame
  std::vector<std::pair<BasisLabel, std::complex<double>>> branch_amplitudes;
  std::map<std::string, double> populations;  // keyed by BasisLabel::str()
  double concurrence = 0.0;
  double residual_excitation = 0.0;    // excited-level and leftover-photon population
  double factorization_purity = 1.0;   // purity of the reduced subsystem state
  double mixing_angle = 0.0;           // realized, from the pulse classification
  double alpha = 0.0;                  // optical-path laser phase offset (two-cavity)
  SequenceClassification sequence;
  std::vector<std::string> warnings;
  std::string lab_frame_phase;
};

/// Rotating-frame Hamiltonian callable for a pulse pair; the standing-wave
/// sign rides on the stokes coupling, the laser phase on the pump coupling.
HamiltonianFn pulse_hamiltonian(const PulsePair& pulses);

/// f-STIRAP of one atom through the cavity and laser: |g1,0> evolves into
/// cos(theta)|g1,0> - e^{-i phi_L} sin(theta)|g2,1>, entangling the atomic
/// ground state with the cavity photon number.
ProtocolResult atom_photon_protocol(const FieldGeometry& geom,
                                    const ProtocolOptions& options = {});

/// Sequential two-atom protocol: atom 1 runs the f-STIRAP above, atom 2
/// (initially g2, arriving with delay geom2.tau on the z=0 line) absorbs the
/// photon branch by a completed STIRAP, leaving the cavity in vacuum and the
/// atoms entangled. Pulse supports must not overlap.
ProtocolResult atom_atom_protocol(const FieldGeometry& geom1, const FieldGeometry& geom2,
                                  const ProtocolOptions& options = {});

/// Two-cavity protocol: the same atom runs the f-STIRAP with cavity 1, then
/// a completed STIRAP with cavity 2 (separated by geom2.x0 along the flight
/// axis, cavity-then-laser ordering). The laser phase at the second
/// interaction is phi_L + alpha with alpha = 2 pi sqrt(x0^2 + z0^2) / lambda;
/// the atom factorizes in g2 and the cavities share one photon.
ProtocolResult photon_photon_protocol(const FieldGeometry& geom1,
                                      const FieldGeometry& geom2,
                                      const ProtocolOptions& options = {});

/// Laser phase accumulated over the optical path between the two
/// interaction regions.
double optical_path_phase(double x0, double z0, double lambda);

/// Concurrence 2|ad - bc| of a normalized pure state over a declared
/// qubit (x) qubit bipartition, amplitudes in product order (00,01,10,11).
double concurrence(const StateVector& state);

struct Partition {
  enum class Kind { atom, cavity };
  Kind kind = Kind::cavity;
  int index = 0;
};

/// Purity Tr(rho_sub^2) of the reduced density operator of one atom or one
/// cavity factor of a pure composite state; 1 iff the factor is unentangled.
double reduced_purity(const StateVector& state, const Partition& partition);

}  // namespace fstirap
