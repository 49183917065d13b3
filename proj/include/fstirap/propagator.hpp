#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fstirap/basis.hpp"
#include "fstirap/fields.hpp"

namespace fstirap {

using HamiltonianFn = std::function<Eigen::Matrix3cd(double)>;

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StepControl {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = std::numeric_limits<double>::infinity();  // s
};

/// Time grid with per-step states and populations from one propagation.
/// norm_drift is the worst deviation of the state norm from 1 over the run;
/// drift beyond 1e-9 is an integration failure, never silently renormalized.
struct Trajectory {
  std::vector<BasisLabel> basis;  // manifold triple
  std::vector<double> times;
  std::vector<Eigen::Vector3cd> states;
  std::vector<Eigen::Vector3d> populations;
  double norm_drift = 0.0;

  const Eigen::Vector3cd& final_state() const { return states.back(); }
  StateVector state_at(std::size_t k) const;
};

/// Integrate i d/dt psi = H(t) psi from t_begin to t_end (either direction)
/// with an adaptive fourth-order commutator-free exponential scheme. Every
/// internal step is a product of exact matrix exponentials of Hermitian
/// samples, so the evolution is unitary to rounding; the step size is
/// controlled by step doubling against rel_tol/abs_tol. The trajectory
/// records `samples` uniformly spaced states (integration lands on each
/// sample time exactly).
Trajectory propagate(const HamiltonianFn& hamiltonian, const Eigen::Vector3cd& initial,
                     double t_begin, double t_end, const StepControl& control = {},
                     int samples = 2000);

Trajectory propagate(const HamiltonianFn& hamiltonian, const StateVector& initial,
                     double t_begin, double t_end, const StepControl& control = {},
                     int samples = 2000);

/// Brute-force reference: fixed-step piecewise-constant evolution by the
/// exact exponential (via eigendecomposition) of the midpoint-sampled
/// Hamiltonian. Serves as the independent oracle for propagate; dt must
/// satisfy max coupling * dt << 1 for accuracy.
Eigen::Vector3cd reference_propagate(const HamiltonianFn& hamiltonian,
                                     const Eigen::Vector3cd& initial, double t_begin,
                                     double t_end, double dt);

enum class AdiabaticityVerdict { adiabatic, marginal, diabatic };

std::string to_string(AdiabaticityVerdict verdict);

struct AdiabaticityThresholds {
  double adiabatic = 10.0;
  double marginal = 3.0;
};

/// Dimensionless pulse-area products Omega0*T_L, G0*T_C and G0*T_int with
/// T = waist / speed. Both pulse products >> 1 is the sufficient condition
/// for adiabatic following.
struct AdiabaticityReport {
  double pump_area_product = 0.0;
  double stokes_area_product = 0.0;
  double interaction_product = 0.0;
  AdiabaticityVerdict verdict = AdiabaticityVerdict::diabatic;
};

AdiabaticityReport adiabaticity_check(const FieldGeometry& geom,
                                      std::optional<double> t_int = std::nullopt,
                                      const AdiabaticityThresholds& thresholds = {});

/// Instantaneous eigenvalues (ascending) and squared overlap with the
/// analytic dark state at each trajectory sample. Where both couplings are
/// negligible the dark direction is undefined and the overlap is NaN.
struct EigenDiagnostics {
  std::vector<Eigen::Vector3d> eigenvalues;  // rad/s
  std::vector<double> dark_overlap;          // |<D|psi>|^2, NaN when undefined
};

EigenDiagnostics instantaneous_eigen_diagnostics(const HamiltonianFn& hamiltonian,
                                                 const Trajectory& trajectory);

}  // namespace fstirap
