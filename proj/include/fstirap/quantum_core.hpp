#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "fstirap/basis.hpp"

namespace fstirap {

// Units: hbar = 1 throughout; couplings and carrier frequencies are angular
// frequencies in rad/s, lengths in m, times in s.

enum class Frame { lab_projected, rotating_effective };
enum class FrameDirection { to_lab, to_rotating };

/// Carrier-frequency and phase data for Hamiltonian construction. The model
/// is exactly resonant: the laser, cavity and atomic frequencies must agree.
struct HamiltonianSpec {
  Frame frame = Frame::rotating_effective;
  int manifold_index = 0;
  double laser_phase = 0.0;   // rad
  double omega_laser = 0.0;   // rad/s
  double omega_cavity = 0.0;  // rad/s
  double omega_atom = 0.0;    // rad/s

  void validate() const;

  static HamiltonianSpec resonant(double omega, Frame frame = Frame::rotating_effective,
                                  int manifold_index = 0, double laser_phase = 0.0);
};

/// Thrown by dark_state when both couplings vanish and the dark direction
/// is undefined.
struct DegenerateDarkStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Three-level block Hamiltonian over {(g1,n), (e,n), (g2,n+1)} with the
/// pump coupling on the (g1,e) transition and the stokes coupling on the
/// (e,g2) transition. Entries may be complex; Hermitian by construction.
Eigen::Matrix3cd make_lambda_hamiltonian(std::complex<double> pump_coupling,
                                         std::complex<double> stokes_coupling);

/// Rotating-frame effective Hamiltonian: zero diagonal, pump entry
/// omega*exp(i*phi_L), stokes entry g. Couplings must be non-negative.
Eigen::Matrix3cd build_effective_hamiltonian(double omega, double g, double phi_L);

/// Lab-frame Hamiltonian projected onto the n-manifold triple: carries the
/// photon-number diagonal shift, the excited-level energy, the optical phase
/// exp(+-i(omega_L t + phi_L)) on the pump coupling and the sqrt(n+1) Fock
/// enhancement on the cavity coupling.
Eigen::Matrix3cd build_projected_hamiltonian(double omega, double g, double t,
                                             const HamiltonianSpec& spec);

/// Unitary map between the lab and rotating frames: multiplies the (e,n) and
/// (g2,n+1) amplitudes by exp(-+i omega_L t). Norm is preserved exactly.
StateVector rotating_frame_map(const StateVector& state, double t,
                               const HamiltonianSpec& spec, FrameDirection direction);

/// Zero-eigenvalue eigenstate (G, 0, -Omega e^{-i phi_L})/sqrt(Omega^2+G^2)
/// over the n=0 manifold triple. Has no excited-state component.
StateVector dark_state(double omega, double g, double phi_L);

/// Asymptotic mixing angle atan2(omega_end, g_end), in [0, pi/2].
double mixing_angle(double omega_end, double g_end);

}  // namespace fstirap
