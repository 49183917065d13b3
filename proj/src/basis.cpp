#include "fstirap/basis.hpp"

#include <sstream>
#include <stdexcept>

namespace fstirap {

std::string to_string(AtomLevel level) {
  switch (level) {
    case AtomLevel::g1: return "g1";
    case AtomLevel::e: return "e";
    case AtomLevel::g2: return "g2";
  }
  throw std::logic_error("unknown atom level");
}

void BasisLabel::validate() const {
  for (int n : photons) {
    if (n < 0) throw std::invalid_argument("photon number must be non-negative");
  }
}

std::string BasisLabel::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out << '.';
    out << to_string(atoms[i]);
  }
  out << '_';
  for (std::size_t i = 0; i < photons.size(); ++i) {
    if (i) out << '.';
    out << photons[i];
  }
  return out.str();
}

StateVector::StateVector(std::vector<BasisLabel> b, Eigen::VectorXcd a)
    : basis(std::move(b)), amplitudes(std::move(a)) {
  if (static_cast<Eigen::Index>(basis.size()) != amplitudes.size())
    throw std::invalid_argument("basis and amplitude lengths differ");
}

std::vector<double> StateVector::populations() const {
  std::vector<double> p(basis.size());
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i) p[i] = std::norm(amplitudes[i]);
  return p;
}

int StateVector::index_of(const BasisLabel& label) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == label) return static_cast<int>(i);
  return -1;
}

std::complex<double> StateVector::amplitude(const BasisLabel& label) const {
  const int i = index_of(label);
  return i < 0 ? std::complex<double>{0.0, 0.0} : amplitudes[i];
}

std::vector<BasisLabel> manifold_basis(int n) {
  if (n < 0) throw std::invalid_argument("manifold index must be non-negative");
  return {BasisLabel(AtomLevel::g1, n), BasisLabel(AtomLevel::e, n),
          BasisLabel(AtomLevel::g2, n + 1)};
}

StateVector manifold_state(int n, const Eigen::Vector3cd& amplitudes) {
  Eigen::VectorXcd a(3);
  a << amplitudes(0), amplitudes(1), amplitudes(2);
  return StateVector(manifold_basis(n), std::move(a));
}

}  // namespace fstirap
