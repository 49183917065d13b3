#include "fstirap/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fstirap/quantum_core.hpp"

namespace fstirap {

namespace {
const std::complex<double> kI{0.0, 1.0};
}

HamiltonianFn pulse_hamiltonian(const PulsePair& pulses) {
  return [pump = pulses.pump, stokes = pulses.stokes, phase = pulses.phi_L,
          sign = pulses.stokes_sign](double t) {
    return make_lambda_hamiltonian(pump(t) * std::exp(kI * phase), sign * stokes(t));
  };
}

namespace {

PulsePair shift_pulses(const PulsePair& pulses, double dt) {
  PulsePair shifted = pulses;
  shifted.pump = [f = pulses.pump, dt](double t) { return f(t - dt); };
  shifted.stokes = [f = pulses.stokes, dt](double t) { return f(t - dt); };
  shifted.t_min += dt;
  shifted.t_max += dt;
  shifted.pump_peak_time += dt;
  shifted.stokes_peak_time += dt;
  return shifted;
}

// Classification is advisory inside protocols; an unclassifiable pulse pair
// (for instance a blocked laser or a standing-wave node) becomes a warning,
// not a failure.
SequenceClassification classify_or_warn(const PulsePair& pulses,
                                        const ClassifyOptions& options,
                                        std::vector<std::string>& warnings) {
  try {
    SequenceClassification c = classify_sequence(pulses, options);
    if (c.process == ProcessKind::incomplete)
      warnings.push_back("pulse sequence classified as incomplete");
    return c;
  } catch (const std::invalid_argument& err) {
    warnings.push_back(std::string("pulse classification failed: ") + err.what());
    SequenceClassification c;
    c.ending_ratio = std::numeric_limits<double>::quiet_NaN();
    c.mixing_angle = std::numeric_limits<double>::quiet_NaN();
    c.process = ProcessKind::incomplete;
    return c;
  }
}

double concurrence_2x2(std::complex<double> a00, std::complex<double> a01,
                       std::complex<double> a10, std::complex<double> a11) {
  return std::min(1.0, 2.0 * std::abs(a00 * a11 - a01 * a10));
}

StateVector make_state(std::vector<BasisLabel> labels,
                       std::vector<std::complex<double>> amps) {
  Eigen::VectorXcd a(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) a(static_cast<Eigen::Index>(i)) = amps[i];
  return StateVector(std::move(labels), std::move(a));
}

std::map<std::string, double> populations_by_label(const StateVector& state) {
  std::map<std::string, double> p;
  for (std::size_t i = 0; i < state.basis.size(); ++i)
    p[state.basis[i].str()] = std::norm(state.amplitudes(static_cast<Eigen::Index>(i)));
  return p;
}

}  // namespace

double optical_path_phase(double x0, double z0, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  return 2.0 * std::numbers::pi * std::hypot(x0, z0) / lambda;
}

ProtocolResult atom_photon_protocol(const FieldGeometry& geom,
                                    const ProtocolOptions& options) {
  geom.validate();
  ProtocolResult result;
  result.protocol = "atom_photon";
  result.lab_frame_phase = "exp(-i(omega_L*t + phi_L)) on g2_1 relative to g1_0";

  const PulsePair pulses = pulses_atom1(geom);
  result.sequence = classify_or_warn(pulses, options.classify, result.warnings);
  result.mixing_angle = result.sequence.mixing_angle;

  const Trajectory traj =
      propagate(pulse_hamiltonian(pulses), Eigen::Vector3cd(1.0, 0.0, 0.0), pulses.t_min,
                pulses.t_max, options.step, options.samples);
  const Eigen::Vector3cd& fin = traj.final_state();

  result.final_state = manifold_state(0, fin);
  result.branch_amplitudes = {{BasisLabel(AtomLevel::g1, 0), fin(0)},
                              {BasisLabel(AtomLevel::g2, 1), fin(2)}};
  result.populations = populations_by_label(result.final_state);
  // Atom qubit {g1,g2} x photon qubit {0,1}; amplitudes outside that sector
  // (the residual excited state) only lower the entanglement.
  result.concurrence = concurrence_2x2(fin(0), 0.0, 0.0, fin(2));
  result.residual_excitation = std::norm(fin(1));
  result.factorization_purity = reduced_purity(result.final_state,
                                               {Partition::Kind::cavity, 0});
  if (result.residual_excitation > options.excitation_warn_threshold)
    result.warnings.push_back("residual excited-state population above threshold");
  return result;
}

ProtocolResult atom_atom_protocol(const FieldGeometry& geom1, const FieldGeometry& geom2,
                                  const ProtocolOptions& options) {
  geom2.validate();
  ProtocolResult stage1 = atom_photon_protocol(geom1, options);

  const PulsePair pulses1 = pulses_atom1(geom1);
  const PulsePair pulses2 = pulses_atom2(geom2);
  if (pulses2.t_min < pulses1.t_max) {
    std::ostringstream msg;
    msg << "atom-2 pulses begin at " << pulses2.t_min << " s before atom-1 pulses end at "
        << pulses1.t_max << " s; increase tau";
    throw ProtocolSequencingError(msg.str());
  }

  ProtocolResult result;
  result.protocol = "atom_atom";
  result.lab_frame_phase = "none: the optical phase cancels between the two passages";
  result.warnings = stage1.warnings;
  result.sequence = stage1.sequence;
  result.mixing_angle = stage1.mixing_angle;

  const std::complex<double> a = stage1.final_state.amplitudes(0);  // |g1(1), 0>
  const std::complex<double> b = stage1.final_state.amplitudes(1);  // |e(1), 0>
  const std::complex<double> c = stage1.final_state.amplitudes(2);  // |g2(1), 1>

  // The photon branch drives atom 2 through its manifold; the vacuum
  // branches are stationary (atom 2 stays in g2 with no photon to absorb).
  const Trajectory traj2 =
      propagate(pulse_hamiltonian(pulses2), Eigen::Vector3cd(0.0, 0.0, 1.0),
                pulses2.t_min, pulses2.t_max, options.step, options.samples);
  const Eigen::Vector3cd& u = traj2.final_state();

  classify_or_warn(pulses2, options.classify, result.warnings);

  // Labels carry (atom1, atom2, photon number).
  using L = AtomLevel;
  auto label = [](L atom1, L atom2, int n) {
    return BasisLabel({atom1, atom2}, {n});
  };
  result.final_state = make_state(
      {label(L::g1, L::g2, 0), label(L::g2, L::g1, 0), label(L::g2, L::e, 0),
       label(L::g2, L::g2, 1), label(L::e, L::g2, 0)},
      {a, c * u(0), c * u(1), c * u(2), b});
  result.branch_amplitudes = {{label(L::g1, L::g2, 0), a},
                              {label(L::g2, L::g1, 0), c * u(0)}};
  result.populations = populations_by_label(result.final_state);
  result.concurrence = concurrence_2x2(0.0, a, c * u(0), 0.0);
  result.residual_excitation =
      std::norm(c * u(1)) + std::norm(b) + std::norm(c * u(2));
  result.factorization_purity =
      reduced_purity(result.final_state, {Partition::Kind::cavity, 0});
  if (std::norm(c * u(1)) + std::norm(b) > options.excitation_warn_threshold)
    result.warnings.push_back("residual excited-state population above threshold");
  if (std::norm(c * u(2)) > options.excitation_warn_threshold)
    result.warnings.push_back("cavity photon not fully absorbed by atom 2");
  return result;
}

ProtocolResult photon_photon_protocol(const FieldGeometry& geom1,
                                      const FieldGeometry& geom2,
                                      const ProtocolOptions& options) {
  geom2.validate();
  ProtocolResult stage1 = atom_photon_protocol(geom1, options);

  ProtocolResult result;
  result.protocol = "photon_photon";
  result.lab_frame_phase = "common factor exp(-i(omega_L*t + phi_L + alpha)), irrelevant";
  result.warnings = stage1.warnings;
  result.sequence = stage1.sequence;
  result.mixing_angle = stage1.mixing_angle;
  result.alpha = optical_path_phase(geom2.x0, geom1.z0, geom1.lambda);

  // Second interaction: same laser, phase advanced by the optical path
  // between the interaction regions; the atom crosses cavity 2 on its axis
  // (z offset 0 relative to cavity 2) x0 downstream.
  FieldGeometry stage2_geom = geom2;
  stage2_geom.phi_L = geom1.phi_L + result.alpha;
  const double t_shift = geom2.x0 / geom2.v + geom2.tau;
  const PulsePair pulses1 = pulses_atom1(geom1);
  const PulsePair pulses2 = shift_pulses(pulses_atom1(stage2_geom), t_shift);
  if (pulses2.t_min < pulses1.t_max) {
    std::ostringstream msg;
    msg << "second-cavity pulses begin at " << pulses2.t_min
        << " s before the first-cavity pulses end at " << pulses1.t_max
        << " s; increase x0 or tau";
    throw ProtocolSequencingError(msg.str());
  }

  const std::complex<double> a = stage1.final_state.amplitudes(0);  // |g1, 0(1)>
  const std::complex<double> b = stage1.final_state.amplitudes(1);  // |e, 0(1)>
  const std::complex<double> c = stage1.final_state.amplitudes(2);  // |g2, 1(1)>

  // Branch with cavity-1 vacuum enters cavity 2 in (a|g1> + b|e>) (x) |0(2)>
  // and runs the completed STIRAP; the photon branch is stationary (atom in
  // g2 cannot absorb from an empty second cavity).
  const double anorm = std::sqrt(std::norm(a) + std::norm(b));
  Eigen::Vector3cd w = Eigen::Vector3cd::Zero();
  if (anorm > 0.0) {
    const Trajectory traj2 = propagate(
        pulse_hamiltonian(pulses2), Eigen::Vector3cd(a / anorm, b / anorm, 0.0),
        pulses2.t_min, pulses2.t_max, options.step, options.samples);
    w = anorm * traj2.final_state();
  }
  classify_or_warn(pulses2, options.classify, result.warnings);

  // Labels carry one atom and the photon numbers (cavity 1, cavity 2).
  using L = AtomLevel;
  auto label = [](L atom, int n1, int n2) { return BasisLabel({atom}, {n1, n2}); };
  result.final_state = make_state(
      {label(L::g1, 0, 0), label(L::e, 0, 0), label(L::g2, 0, 1), label(L::g2, 1, 0)},
      {w(0), w(1), w(2), c});
  result.branch_amplitudes = {{label(L::g2, 0, 1), w(2)}, {label(L::g2, 1, 0), c}};
  result.populations = populations_by_label(result.final_state);
  // Cavity-2 qubit (x) cavity-1 qubit within the factorized g2 sector.
  result.concurrence = concurrence_2x2(0.0, c, w(2), 0.0);
  result.residual_excitation = std::norm(w(0)) + std::norm(w(1));
  result.factorization_purity =
      reduced_purity(result.final_state, {Partition::Kind::atom, 0});
  if (std::norm(w(1)) > options.excitation_warn_threshold)
    result.warnings.push_back("residual excited-state population above threshold");
  if (std::norm(w(0)) > options.excitation_warn_threshold)
    result.warnings.push_back("second-cavity transfer incomplete");
  return result;
}

double concurrence(const StateVector& state) {
  if (state.basis.size() != 4 || state.amplitudes.size() != 4)
    throw std::invalid_argument("concurrence expects a 2x2 bipartition (4 amplitudes)");
  if (std::abs(state.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("concurrence expects a normalized state");
  return concurrence_2x2(state.amplitudes(0), state.amplitudes(1), state.amplitudes(2),
                         state.amplitudes(3));
}

double reduced_purity(const StateVector& state, const Partition& partition) {
  if (state.basis.empty()) throw std::invalid_argument("empty state");

  // Split each label into (subsystem index, environment key); the reduced
  // density matrix is rho(s,s') = sum_env psi(s,env) conj(psi(s',env)).
  int sub_dim = 0;
  std::vector<int> sub_index(state.basis.size());
  std::vector<std::string> env_key(state.basis.size());
  for (std::size_t i = 0; i < state.basis.size(); ++i) {
    const BasisLabel& l = state.basis[i];
    std::ostringstream env;
    if (partition.kind == Partition::Kind::atom) {
      if (partition.index < 0 || partition.index >= static_cast<int>(l.atoms.size()))
        throw std::invalid_argument("partition atom index out of range");
      sub_index[i] = static_cast<int>(l.atoms[partition.index]);
      sub_dim = 3;
      for (std::size_t k = 0; k < l.atoms.size(); ++k)
        if (static_cast<int>(k) != partition.index) env << to_string(l.atoms[k]) << ';';
      for (int n : l.photons) env << n << ';';
    } else {
      if (partition.index < 0 || partition.index >= static_cast<int>(l.photons.size()))
        throw std::invalid_argument("partition cavity index out of range");
      sub_index[i] = l.photons[partition.index];
      sub_dim = std::max(sub_dim, l.photons[partition.index] + 1);
      for (const AtomLevel a : l.atoms) env << to_string(a) << ';';
      for (std::size_t k = 0; k < l.photons.size(); ++k)
        if (static_cast<int>(k) != partition.index) env << l.photons[k] << ';';
    }
    env_key[i] = env.str();
  }

  std::map<std::string, Eigen::VectorXcd> columns;
  for (std::size_t i = 0; i < state.basis.size(); ++i) {
    auto [it, inserted] = columns.try_emplace(env_key[i], Eigen::VectorXcd::Zero(sub_dim));
    it->second(sub_index[i]) += state.amplitudes(static_cast<Eigen::Index>(i));
  }

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(sub_dim, sub_dim);
  for (const auto& [key, column] : columns) rho += column * column.adjoint();
  return rho.cwiseAbs2().sum();
}

}  // namespace fstirap
