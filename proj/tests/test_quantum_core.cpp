#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <numbers>
#include <random>

#include "fstirap/quantum_core.hpp"

using namespace fstirap;
using std::numbers::pi;

namespace {
constexpr double kOmegaScale = 5e6;  // rad/s, typical optical coupling scale
}

TEST_CASE("effective Hamiltonian structure") {
  SUBCASE("both couplings off gives the zero matrix") {
    const Eigen::Matrix3cd h = build_effective_hamiltonian(0.0, 0.0, 1.234);
    CHECK(h.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("zero laser phase gives a real symmetric matrix") {
    const Eigen::Matrix3cd h = build_effective_hamiltonian(3e6, 4e6, 0.0);
    CHECK(h(0, 1) == std::complex<double>(3e6, 0.0));
    CHECK(h(1, 2) == std::complex<double>(4e6, 0.0));
    CHECK(h(0, 0) == std::complex<double>(0.0, 0.0));
    CHECK(h(1, 1) == std::complex<double>(0.0, 0.0));
    CHECK(h(2, 2) == std::complex<double>(0.0, 0.0));
    CHECK(h(0, 2) == std::complex<double>(0.0, 0.0));
    CHECK(h.imag().cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("laser phase pi flips the sign of the pump entry") {
    const Eigen::Matrix3cd h = build_effective_hamiltonian(1.0, 2.0, pi);
    CHECK(h(0, 1).real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(h(0, 1).imag() == doctest::Approx(0.0).epsilon(1e-15));
  }

  SUBCASE("negative couplings are rejected") {
    CHECK_THROWS_AS(build_effective_hamiltonian(-1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_effective_hamiltonian(0.0, -1.0, 0.0), std::invalid_argument);
  }

  SUBCASE("Hermitian closure is exact for random inputs") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> coupling(0.0, kOmegaScale);
    std::uniform_real_distribution<double> phase(-pi, pi);
    for (int k = 0; k < 100; ++k) {
      const Eigen::Matrix3cd h =
          build_effective_hamiltonian(coupling(rng), coupling(rng), phase(rng));
      CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("projected lab-frame Hamiltonian") {
  SUBCASE("ground manifold at t=0 with zero phase") {
    const auto spec = HamiltonianSpec::resonant(2.4e15, Frame::lab_projected, 0, 0.0);
    const Eigen::Matrix3cd h = build_projected_hamiltonian(3e6, 4e6, 0.0, spec);
    CHECK(h(0, 1) == std::complex<double>(3e6, 0.0));
    CHECK(h(1, 2) == std::complex<double>(4e6, 0.0));
    CHECK(h(0, 0).real() == 0.0);
    CHECK(h(1, 1).real() == doctest::Approx(2.4e15));
    CHECK(h(2, 2).real() == doctest::Approx(2.4e15));
  }

  SUBCASE("cavity coupling picks up the Fock-ladder enhancement") {
    const auto spec = HamiltonianSpec::resonant(2.4e15, Frame::lab_projected, 3, 0.0);
    const Eigen::Matrix3cd h = build_projected_hamiltonian(0.0, 5e6, 0.0, spec);
    CHECK(h(1, 2).real() == doctest::Approx(2.0 * 5e6).epsilon(1e-15));
  }

  SUBCASE("no couplings leaves only the diagonal") {
    const auto spec = HamiltonianSpec::resonant(1e15, Frame::lab_projected, 1, 0.3);
    const Eigen::Matrix3cd h = build_projected_hamiltonian(0.0, 0.0, 1e-7, spec);
    Eigen::Matrix3cd off = h;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() == 0.0);
    CHECK(h(0, 0).real() == doctest::Approx(1e15));
    CHECK(h(1, 1).real() == doctest::Approx(2e15));
    CHECK(h(2, 2).real() == doctest::Approx(2e15));
  }

  SUBCASE("pump entry carries the optical phase") {
    const auto spec = HamiltonianSpec::resonant(2.4e15, Frame::lab_projected, 0, 0.7);
    const double t = 1.3e-15;
    const Eigen::Matrix3cd h = build_projected_hamiltonian(1e6, 0.0, t, spec);
    const std::complex<double> expected =
        1e6 * std::exp(std::complex<double>(0.0, 2.4e15 * t + 0.7));
    CHECK(std::abs(h(0, 1) - expected) < 1e-9 * std::abs(expected));
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("negative manifold index is rejected") {
    HamiltonianSpec spec = HamiltonianSpec::resonant(1e15, Frame::lab_projected);
    spec.manifold_index = -1;
    CHECK_THROWS_AS(build_projected_hamiltonian(1.0, 1.0, 0.0, spec),
                    std::invalid_argument);
  }

  SUBCASE("detuned carrier frequencies are rejected") {
    HamiltonianSpec spec = HamiltonianSpec::resonant(1e15, Frame::lab_projected);
    spec.omega_cavity = 1e15 + 1.0;
    CHECK_THROWS_AS(build_projected_hamiltonian(1.0, 1.0, 0.0, spec),
                    std::invalid_argument);
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  }
}

TEST_CASE("rotating frame map") {
  const auto spec = HamiltonianSpec::resonant(2.4e15);
  Eigen::Vector3cd amps;
  amps << std::complex<double>(0.3, 0.4), std::complex<double>(-0.5, 0.1),
      std::complex<double>(0.2, -0.67);
  amps /= amps.norm();
  const StateVector state = manifold_state(0, amps);

  SUBCASE("t = 0 is the identity") {
    const StateVector out = rotating_frame_map(state, 0.0, spec, FrameDirection::to_lab);
    CHECK((out.amplitudes - state.amplitudes).norm() == 0.0);
  }

  SUBCASE("g1 amplitude is untouched") {
    const StateVector out =
        rotating_frame_map(state, 7.7e-15, spec, FrameDirection::to_lab);
    CHECK(out.amplitudes(0) == state.amplitudes(0));
    CHECK(std::abs(out.amplitudes(1)) ==
          doctest::Approx(std::abs(state.amplitudes(1))).epsilon(1e-14));
  }

  SUBCASE("round trip restores the amplitudes to machine precision") {
    const double t = 3.21e-14;
    const StateVector lab = rotating_frame_map(state, t, spec, FrameDirection::to_lab);
    const StateVector back =
        rotating_frame_map(lab, t, spec, FrameDirection::to_rotating);
    CHECK((back.amplitudes - state.amplitudes).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(back.norm() == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("basis mismatch is an error") {
    const StateVector wrong = manifold_state(1, amps);
    CHECK_THROWS_AS(rotating_frame_map(wrong, 0.0, spec, FrameDirection::to_lab),
                    std::invalid_argument);
  }
}

TEST_CASE("dark state") {
  SUBCASE("no pump leaves the dark state on g1") {
    const StateVector d = dark_state(0.0, 4e6, 0.9);
    CHECK(d.amplitudes(0) == std::complex<double>(1.0, 0.0));
    CHECK(d.amplitudes(1) == std::complex<double>(0.0, 0.0));
    CHECK(d.amplitudes(2) == std::complex<double>(0.0, 0.0));
  }

  SUBCASE("equal couplings give the balanced superposition") {
    const StateVector d = dark_state(2e6, 2e6, 0.0);
    CHECK(d.amplitudes(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(d.amplitudes(2).real() == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(d.amplitudes(1) == std::complex<double>(0.0, 0.0));
  }

  SUBCASE("null vector of the effective Hamiltonian over random couplings") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> coupling(0.0, kOmegaScale);
    std::uniform_real_distribution<double> phase(-pi, pi);
    for (int k = 0; k < 1000; ++k) {
      double omega = coupling(rng), g = coupling(rng);
      if (omega == 0.0 && g == 0.0) omega = 1.0;
      const double phi = phase(rng);
      const Eigen::Matrix3cd h = build_effective_hamiltonian(omega, g, phi);
      const StateVector d = dark_state(omega, g, phi);
      Eigen::Vector3cd amps(d.amplitudes(0), d.amplitudes(1), d.amplitudes(2));
      CHECK((h * amps).norm() <= 1e-12 * (omega + g));
      CHECK(d.amplitudes(1) == std::complex<double>(0.0, 0.0));
    }
  }

  SUBCASE("degenerate case is an error") {
    CHECK_THROWS_AS(dark_state(0.0, 0.0, 0.0), DegenerateDarkStateError);
  }
}

TEST_CASE("mixing angle") {
  CHECK(mixing_angle(0.0, 3e6) == 0.0);
  CHECK(mixing_angle(2e6, 2e6) == doctest::Approx(pi / 4.0).epsilon(1e-15));
  CHECK(mixing_angle(3e6, 0.0) == doctest::Approx(pi / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(mixing_angle(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(mixing_angle(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("laser phase acts as a diagonal phase map on the effective Hamiltonian") {
  // H(phi) = D H(0) D^dagger with D = diag(e^{i phi}, 1, 1), so populations
  // cannot depend on phi.
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coupling(0.0, kOmegaScale);
  std::uniform_real_distribution<double> phase(-pi, pi);
  for (int k = 0; k < 50; ++k) {
    const double omega = coupling(rng), g = coupling(rng), phi = phase(rng);
    const Eigen::Matrix3cd h0 = build_effective_hamiltonian(omega, g, 0.0);
    const Eigen::Matrix3cd hphi = build_effective_hamiltonian(omega, g, phi);
    Eigen::Vector3cd dvec(std::exp(std::complex<double>(0.0, phi)), 1.0, 1.0);
    const Eigen::Matrix3cd conjugated =
        dvec.asDiagonal() * h0 * dvec.conjugate().asDiagonal();
    CHECK((conjugated - hphi).cwiseAbs().maxCoeff() < 1e-9 * (omega + g + 1.0));
  }
}
