#include "fstirap/quantum_core.hpp"

#include <cmath>

namespace fstirap {

namespace {
const std::complex<double> kI{0.0, 1.0};
}

void HamiltonianSpec::validate() const {
  if (manifold_index < 0)
    throw std::invalid_argument("manifold index must be non-negative");
  if (omega_laser != omega_cavity || omega_cavity != omega_atom)
    throw std::invalid_argument(
        "resonance required: omega_laser, omega_cavity and omega_atom must be equal");
}

HamiltonianSpec HamiltonianSpec::resonant(double omega, Frame frame, int manifold_index,
                                          double laser_phase) {
  HamiltonianSpec spec;
  spec.frame = frame;
  spec.manifold_index = manifold_index;
  spec.laser_phase = laser_phase;
  spec.omega_laser = spec.omega_cavity = spec.omega_atom = omega;
  spec.validate();
  return spec;
}

Eigen::Matrix3cd make_lambda_hamiltonian(std::complex<double> pump_coupling,
                                         std::complex<double> stokes_coupling) {
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  h(0, 1) = pump_coupling;
  h(1, 0) = std::conj(pump_coupling);
  h(1, 2) = stokes_coupling;
  h(2, 1) = std::conj(stokes_coupling);
  return h;
}

Eigen::Matrix3cd build_effective_hamiltonian(double omega, double g, double phi_L) {
  if (omega < 0.0 || g < 0.0)
    throw std::invalid_argument("couplings must be non-negative");
  return make_lambda_hamiltonian(omega * std::exp(kI * phi_L), g);
}

Eigen::Matrix3cd build_projected_hamiltonian(double omega, double g, double t,
                                             const HamiltonianSpec& spec) {
  spec.validate();
  if (spec.frame != Frame::lab_projected)
    throw std::invalid_argument("spec.frame must be lab_projected");
  if (omega < 0.0 || g < 0.0)
    throw std::invalid_argument("couplings must be non-negative");

  const int n = spec.manifold_index;
  const double fock = std::sqrt(static_cast<double>(n + 1));
  Eigen::Matrix3cd h =
      make_lambda_hamiltonian(omega * std::exp(kI * (spec.omega_laser * t + spec.laser_phase)),
                              g * fock);
  h(0, 0) = n * spec.omega_cavity;
  h(1, 1) = spec.omega_atom + n * spec.omega_cavity;
  h(2, 2) = (n + 1) * spec.omega_cavity;
  return h;
}

StateVector rotating_frame_map(const StateVector& state, double t,
                               const HamiltonianSpec& spec, FrameDirection direction) {
  spec.validate();
  if (state.basis != manifold_basis(spec.manifold_index))
    throw std::invalid_argument("state basis does not match the spec's manifold triple");

  // |lab> = R |rotating> with R = diag(1, e^{-i w_L t}, e^{-i w_L t}).
  const double sign = direction == FrameDirection::to_lab ? -1.0 : 1.0;
  const std::complex<double> factor = std::exp(kI * (sign * spec.omega_laser * t));
  StateVector out = state;
  out.amplitudes[1] *= factor;
  out.amplitudes[2] *= factor;
  return out;
}

StateVector dark_state(double omega, double g, double phi_L) {
  if (omega < 0.0 || g < 0.0)
    throw std::invalid_argument("couplings must be non-negative");
  const double w2 = omega * omega + g * g;
  if (w2 <= 0.0)
    throw DegenerateDarkStateError("dark state undefined: both couplings are zero");
  const double w = std::sqrt(w2);
  Eigen::Vector3cd amps;
  amps << g / w, 0.0, -(omega / w) * std::exp(-kI * phi_L);
  return manifold_state(0, amps);
}

double mixing_angle(double omega_end, double g_end) {
  if (omega_end < 0.0 || g_end < 0.0)
    throw std::invalid_argument("couplings must be non-negative");
  if (omega_end == 0.0 && g_end == 0.0)
    throw std::invalid_argument("mixing angle undefined: both couplings are zero");
  return std::atan2(omega_end, g_end);
}

}  // namespace fstirap
