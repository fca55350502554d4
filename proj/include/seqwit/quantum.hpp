// Qubit measurement primitives and the named three-qubit resource states.

#pragma once

#include <array>

#include "seqwit/linalg.hpp"

namespace seqwit {

// Pauli matrices and the single-qubit identity.
const ComplexMatrix& identity2();
const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();

// Spin measurement direction in spherical angles (radians).
class Direction {
 public:
  // theta in [0, pi], phi in [0, 2 pi]; throws std::invalid_argument otherwise.
  Direction(double theta, double phi);

  // Folds arbitrary real angles onto the canonical ranges without changing
  // the direction they describe.
  static Direction canonical(double theta, double phi);
  // Direction of a nonzero Cartesian vector.
  static Direction from_vector(const std::array<double, 3>& v);

  static Direction x() { return {kHalfPi, 0.0}; }
  static Direction y() { return {kHalfPi, kHalfPi}; }
  static Direction z() { return {0.0, 0.0}; }

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  std::array<double, 3> unit_vector() const;

  friend bool operator==(const Direction&, const Direction&) = default;

 private:
  static constexpr double kHalfPi = 1.57079632679489661923;
  double theta_;
  double phi_;
};

enum class Outcome : int { Plus = 1, Minus = -1 };

inline constexpr std::array<Outcome, 2> kOutcomes{Outcome::Plus, Outcome::Minus};

inline double sign(Outcome o) { return static_cast<double>(static_cast<int>(o)); }

// Two-outcome spin measurement along `direction`, mixed with white noise so
// that only a fraction `sharpness` of the projective statistics survives.
class UnsharpMeasurement {
 public:
  // sharpness must lie in (0, 1]; throws std::invalid_argument otherwise.
  UnsharpMeasurement(Direction direction, double sharpness);

  const Direction& direction() const { return direction_; }
  double sharpness() const { return sharpness_; }
  // Precision G.
  double precision() const { return sharpness_; }
  // Quality factor F = sqrt(1 - lambda^2); the surviving coherence.
  double quality_factor() const;

 private:
  Direction direction_;
  double sharpness_;
};

// n . sigma
ComplexMatrix observable(const Direction& d);
// (I + o n . sigma) / 2
ComplexMatrix projector(const Direction& d, Outcome o);
// lambda P_o + (1 - lambda) I / 2
ComplexMatrix effect(const UnsharpMeasurement& u, Outcome o);
// sqrt((1 + lambda)/2) P_o + sqrt((1 - lambda)/2) P_{-o}
ComplexMatrix sqrt_effect(const UnsharpMeasurement& u, Outcome o);

enum class StateKind { GHZ, W };

struct NamedState {
  StateKind kind;
  ComplexMatrix density;
};

// Pure density operator of the GHZ or W state in the computational basis.
NamedState named_state(StateKind kind);

// Tr[rho (a (x) b (x) c)] for single-qubit a, b, c, without building the
// 8x8 product operator.
Complex local_expectation(const ComplexMatrix& rho, const ComplexMatrix& a,
                          const ComplexMatrix& b, const ComplexMatrix& c);

}  // namespace seqwit
