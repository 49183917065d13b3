#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fstirap {

enum class AtomLevel { g1, e, g2 };

std::string to_string(AtomLevel level);

/// One product basis state: atomic level(s) x cavity Fock number(s).
/// Single-atom, single-cavity states have one entry in each list; the
/// two-atom and two-cavity protocols extend the lists.
struct BasisLabel {
  std::vector<AtomLevel> atoms;
  std::vector<int> photons;

  BasisLabel() = default;
  BasisLabel(AtomLevel a, int n) : atoms{a}, photons{n} { validate(); }
  BasisLabel(std::vector<AtomLevel> a, std::vector<int> n)
      : atoms(std::move(a)), photons(std::move(n)) {
    validate();
  }

  void validate() const;  // throws std::invalid_argument on photon_number < 0

  /// Rendered as "<level>[.<level>...]_<n>[.<n>...]", e.g. "g1_0",
  /// "g1.g2_0", "g2_0.1". Used for CSV columns and JSON keys.
  std::string str() const;

  bool operator==(const BasisLabel& other) const = default;
};

/// Complex amplitudes over an ordered, labeled basis.
struct StateVector {
  std::vector<BasisLabel> basis;
  Eigen::VectorXcd amplitudes;

  StateVector() = default;
  StateVector(std::vector<BasisLabel> b, Eigen::VectorXcd a);

  double norm() const { return amplitudes.norm(); }
  std::vector<double> populations() const;

  /// Index of a label in the basis, -1 if absent.
  int index_of(const BasisLabel& label) const;
  /// Amplitude of a label, zero if the label is not in the basis.
  std::complex<double> amplitude(const BasisLabel& label) const;
};

/// The invariant three-state block {(g1,n), (e,n), (g2,n+1)} of the resonant
/// atom-cavity system. Basis order is fixed to this triple everywhere.
std::vector<BasisLabel> manifold_basis(int n);

StateVector manifold_state(int n, const Eigen::Vector3cd& amplitudes);

}  // namespace fstirap
