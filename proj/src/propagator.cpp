#include "fstirap/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace fstirap {

namespace {

const std::complex<double> kI{0.0, 1.0};
constexpr double kMaxNormDrift = 1e-9;

void check_finite(const Eigen::Matrix3cd& h) {
  if (!h.allFinite()) throw IntegrationError("non-finite Hamiltonian sample");
}

bool lambda_pattern(const Eigen::Matrix3cd& h) {
  return h(0, 0) == 0.0 && h(1, 1) == 0.0 && h(2, 2) == 0.0 && h(0, 2) == 0.0 &&
         h(2, 0) == 0.0;
}

// exp(-i tau H) for H = [[0,p,0],[p*,0,g],[0,g*,0]]. H has eigenvalues
// {0, +-w} with w^2 = |p|^2 + |g|^2, so H^3 = w^2 H and the exponential
// closes after H^2: exp(-i tau H) = I - i sin(w tau)/w H + (cos(w tau)-1)/w^2 H^2.
Eigen::Matrix3cd expm_lambda(const Eigen::Matrix3cd& h, double tau) {
  const std::complex<double> p = h(0, 1);
  const std::complex<double> g = h(1, 2);
  const double w2 = std::norm(p) + std::norm(g);
  if (w2 == 0.0) return Eigen::Matrix3cd::Identity();
  const double w = std::sqrt(w2);
  const double s = std::sin(w * tau) / w;
  const double c = (std::cos(w * tau) - 1.0) / w2;

  Eigen::Matrix3cd u = Eigen::Matrix3cd::Identity();
  u(0, 0) += c * std::norm(p);
  u(0, 1) = -kI * s * p;
  u(0, 2) = c * p * g;
  u(1, 0) = -kI * s * std::conj(p);
  u(1, 1) += c * w2;
  u(1, 2) = -kI * s * g;
  u(2, 0) = c * std::conj(p) * std::conj(g);
  u(2, 1) = -kI * s * std::conj(g);
  u(2, 2) += c * std::norm(g);
  return u;
}

Eigen::Matrix3cd expm_hermitian_eigensolver(const Eigen::Matrix3cd& h, double tau) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h);
  if (es.info() != Eigen::Success)
    throw IntegrationError("eigendecomposition of Hamiltonian sample failed");
  Eigen::Vector3cd phases;
  for (int k = 0; k < 3; ++k) phases(k) = std::exp(-kI * (tau * es.eigenvalues()(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::Matrix3cd expm_step(const Eigen::Matrix3cd& h, double tau) {
  return lambda_pattern(h) ? expm_lambda(h, tau) : expm_hermitian_eigensolver(h, tau);
}

// Fourth-order commutator-free exponential step: two exponentials of
// weighted Gauss-Legendre samples of H over [t, t+dt].
Eigen::Vector3cd cf4_step(const HamiltonianFn& hamiltonian, double t, double dt,
                          const Eigen::Vector3cd& psi) {
  static const double root3over6 = std::sqrt(3.0) / 6.0;
  const double c1 = 0.5 - root3over6;
  const double c2 = 0.5 + root3over6;
  const double a1 = 0.25 + root3over6;
  const double a2 = 0.25 - root3over6;

  const Eigen::Matrix3cd h1 = hamiltonian(t + c1 * dt);
  const Eigen::Matrix3cd h2 = hamiltonian(t + c2 * dt);
  check_finite(h1);
  check_finite(h2);

  const Eigen::Matrix3cd first = a1 * h1 + a2 * h2;
  const Eigen::Matrix3cd second = a2 * h1 + a1 * h2;
  return expm_step(second, dt) * (expm_step(first, dt) * psi);
}

}  // namespace

StateVector Trajectory::state_at(std::size_t k) const {
  Eigen::VectorXcd a(3);
  a << states[k](0), states[k](1), states[k](2);
  return StateVector(basis, std::move(a));
}

Trajectory propagate(const HamiltonianFn& hamiltonian, const Eigen::Vector3cd& initial,
                     double t_begin, double t_end, const StepControl& control,
                     int samples) {
  if (samples < 2) throw std::invalid_argument("samples must be at least 2");
  if (!std::isfinite(t_begin) || !std::isfinite(t_end))
    throw std::invalid_argument("propagation window must be finite");
  if (std::abs(initial.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("initial state must be normalized");
  if (!(control.rel_tol > 0.0) || !(control.abs_tol > 0.0))
    throw std::invalid_argument("tolerances must be positive");

  Trajectory traj;
  traj.basis = manifold_basis(0);
  traj.times.reserve(samples);
  traj.states.reserve(samples);
  traj.populations.reserve(samples);

  const double span = t_end - t_begin;
  const double dir = span >= 0.0 ? 1.0 : -1.0;
  const double h_min = std::max(std::abs(span), std::abs(t_begin)) * 1e-14 +
                       std::numeric_limits<double>::denorm_min();
  const double tol = control.abs_tol + control.rel_tol;

  auto record = [&traj](double t, const Eigen::Vector3cd& psi) {
    traj.times.push_back(t);
    traj.states.push_back(psi);
    traj.populations.emplace_back(std::norm(psi(0)), std::norm(psi(1)), std::norm(psi(2)));
    traj.norm_drift = std::max(traj.norm_drift, std::abs(psi.norm() - 1.0));
  };

  Eigen::Vector3cd psi = initial;
  double t = t_begin;
  record(t, psi);

  double h = std::min(control.max_step, std::abs(span) / 1000.0 + h_min);
  for (int k = 1; k < samples; ++k) {
    const double target = k == samples - 1
                              ? t_end
                              : t_begin + span * (static_cast<double>(k) / (samples - 1));
    while (dir * (target - t) > 0.0) {
      const double remaining = dir * (target - t);
      bool clipped = false;
      double h_try = std::min(h, control.max_step);
      if (h_try >= remaining) {
        h_try = remaining;
        clipped = true;
      }

      const double step = dir * h_try;
      const Eigen::Vector3cd full = cf4_step(hamiltonian, t, step, psi);
      const Eigen::Vector3cd half =
          cf4_step(hamiltonian, t + step / 2.0, step / 2.0,
                   cf4_step(hamiltonian, t, step / 2.0, psi));
      // Richardson estimate of the two-half-step local error (order 4).
      const double err = (full - half).cwiseAbs().maxCoeff() / 15.0;

      const double safe_err = std::max(err, 1e-300);
      const double h_next = std::max(
          h_min, h_try * std::clamp(0.9 * std::pow(tol / safe_err, 0.2), 0.2, 5.0));
      if (err <= tol) {
        psi = half;
        t = clipped ? target : t + step;
        // A step clipped to a sample boundary must not shrink the working
        // step size the controller has built up.
        h = clipped ? std::max(h, h_next) : h_next;
      } else if (h_try <= h_min) {
        throw IntegrationError("step size underflow: local error cannot reach tolerance");
      } else {
        h = h_next;
      }
    }
    t = target;
    record(t, psi);
  }

  if (traj.norm_drift > kMaxNormDrift)
    throw IntegrationError("norm drift exceeded 1e-9; integration is not trustworthy");
  return traj;
}

Trajectory propagate(const HamiltonianFn& hamiltonian, const StateVector& initial,
                     double t_begin, double t_end, const StepControl& control,
                     int samples) {
  if (initial.basis.size() != 3)
    throw std::invalid_argument("initial state must live on a manifold triple");
  Eigen::Vector3cd amps(initial.amplitudes(0), initial.amplitudes(1),
                        initial.amplitudes(2));
  Trajectory traj = propagate(hamiltonian, amps, t_begin, t_end, control, samples);
  traj.basis = initial.basis;
  return traj;
}

Eigen::Vector3cd reference_propagate(const HamiltonianFn& hamiltonian,
                                     const Eigen::Vector3cd& initial, double t_begin,
                                     double t_end, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const double span = t_end - t_begin;
  if (span == 0.0) return initial;

  const auto steps = static_cast<long>(std::ceil(std::abs(span) / dt));
  const double h = span / static_cast<double>(steps);
  Eigen::Vector3cd psi = initial;
  for (long k = 0; k < steps; ++k) {
    const double t_mid = t_begin + (static_cast<double>(k) + 0.5) * h;
    const Eigen::Matrix3cd hm = hamiltonian(t_mid);
    check_finite(hm);
    psi = expm_hermitian_eigensolver(hm, h) * psi;
  }
  return psi;
}

std::string to_string(AdiabaticityVerdict verdict) {
  switch (verdict) {
    case AdiabaticityVerdict::adiabatic: return "adiabatic";
    case AdiabaticityVerdict::marginal: return "marginal";
    case AdiabaticityVerdict::diabatic: return "diabatic";
  }
  throw std::logic_error("unknown verdict");
}

AdiabaticityReport adiabaticity_check(const FieldGeometry& geom,
                                      std::optional<double> t_int,
                                      const AdiabaticityThresholds& thresholds) {
  geom.validate();
  const double t_laser = geom.transit_time_laser();
  const double t_cavity = geom.transit_time_cavity();

  AdiabaticityReport report;
  report.pump_area_product = geom.Omega0 * t_laser;
  report.stokes_area_product = geom.G0 * t_cavity;
  report.interaction_product = geom.G0 * t_int.value_or(std::max(t_laser, t_cavity));

  const double weakest = std::min(report.pump_area_product, report.stokes_area_product);
  if (weakest >= thresholds.adiabatic) {
    report.verdict = AdiabaticityVerdict::adiabatic;
  } else if (weakest >= thresholds.marginal) {
    report.verdict = AdiabaticityVerdict::marginal;
  } else {
    report.verdict = AdiabaticityVerdict::diabatic;
  }
  return report;
}

EigenDiagnostics instantaneous_eigen_diagnostics(const HamiltonianFn& hamiltonian,
                                                 const Trajectory& trajectory) {
  const std::size_t n = trajectory.times.size();
  EigenDiagnostics diag;
  diag.eigenvalues.resize(n);
  diag.dark_overlap.assign(n, std::numeric_limits<double>::quiet_NaN());

  std::vector<double> coupling_norm(n, 0.0);
  std::vector<Eigen::Matrix3cd> hs(n);
  double w_max = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    hs[k] = hamiltonian(trajectory.times[k]);
    check_finite(hs[k]);
    coupling_norm[k] = std::sqrt(std::norm(hs[k](0, 1)) + std::norm(hs[k](1, 2)));
    w_max = std::max(w_max, coupling_norm[k]);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es;
  for (std::size_t k = 0; k < n; ++k) {
    es.compute(hs[k], Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
      throw IntegrationError("eigendecomposition failed in diagnostics");
    diag.eigenvalues[k] = es.eigenvalues();

    const double w = coupling_norm[k];
    if (w == 0.0 || w <= 1e-12 * w_max) continue;  // dark direction undefined
    // Analytic null vector (stokes, 0, -pump*)/w of the coupling block.
    const std::complex<double> pump = hs[k](0, 1);
    const std::complex<double> stokes = hs[k](1, 2);
    const std::complex<double> overlap =
        (std::conj(stokes) * trajectory.states[k](0) -
         pump * trajectory.states[k](2)) /
        w;
    diag.dark_overlap[k] = std::norm(overlap);
  }
  return diag;
}

}  // namespace fstirap
