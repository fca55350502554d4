#include "seqwit/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace seqwit {

const ComplexMatrix& identity2() {
  static const ComplexMatrix m = ComplexMatrix::identity(2);
  return m;
}

const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m(2, 2, {0.0, 1.0, 1.0, 0.0});
  return m;
}

const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m(2, 2, {0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0});
  return m;
}

const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m(2, 2, {1.0, 0.0, 0.0, -1.0});
  return m;
}

Direction::Direction(double theta, double phi) : theta_(theta), phi_(phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw std::invalid_argument("Direction: theta must lie in [0, pi]");
  }
  if (!(phi >= 0.0 && phi <= 2.0 * std::numbers::pi)) {
    throw std::invalid_argument("Direction: phi must lie in [0, 2 pi]");
  }
}

Direction Direction::canonical(double theta, double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw std::invalid_argument("Direction::canonical: non-finite angle");
  }
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  double p = phi;
  if (t > std::numbers::pi) {
    // (theta, phi) and (2 pi - theta, phi + pi) describe the same vector.
    t = two_pi - t;
    p += std::numbers::pi;
  }
  p = std::fmod(p, two_pi);
  if (p < 0.0) p += two_pi;
  return {t, p};
}

Direction Direction::from_vector(const std::array<double, 3>& v) {
  const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (norm == 0.0) throw std::invalid_argument("Direction::from_vector: zero vector");
  const double theta = std::acos(std::clamp(v[2] / norm, -1.0, 1.0));
  double phi = std::atan2(v[1], v[0]);
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return {theta, phi};
}

std::array<double, 3> Direction::unit_vector() const {
  const double s = std::sin(theta_);
  return {s * std::cos(phi_), s * std::sin(phi_), std::cos(theta_)};
}

UnsharpMeasurement::UnsharpMeasurement(Direction direction, double sharpness)
    : direction_(direction), sharpness_(sharpness) {
  if (!(sharpness > 0.0 && sharpness <= 1.0)) {
    throw std::invalid_argument("UnsharpMeasurement: sharpness must lie in (0, 1]");
  }
}

double UnsharpMeasurement::quality_factor() const {
  return std::sqrt(1.0 - sharpness_ * sharpness_);
}

ComplexMatrix observable(const Direction& d) {
  const auto n = d.unit_vector();
  // Assemble entrywise so that axis directions come out exactly.
  return ComplexMatrix(2, 2, {n[2], Complex(n[0], -n[1]), Complex(n[0], n[1]), -n[2]});
}

ComplexMatrix projector(const Direction& d, Outcome o) {
  ComplexMatrix p = sign(o) * observable(d);
  p += identity2();
  p *= 0.5;
  return p;
}

ComplexMatrix effect(const UnsharpMeasurement& u, Outcome o) {
  const double lambda = u.sharpness();
  return lambda * projector(u.direction(), o) + (0.5 * (1.0 - lambda)) * identity2();
}

ComplexMatrix sqrt_effect(const UnsharpMeasurement& u, Outcome o) {
  const double lambda = u.sharpness();
  const Outcome opposite = o == Outcome::Plus ? Outcome::Minus : Outcome::Plus;
  return std::sqrt(0.5 * (1.0 + lambda)) * projector(u.direction(), o) +
         std::sqrt(0.5 * (1.0 - lambda)) * projector(u.direction(), opposite);
}

NamedState named_state(StateKind kind) {
  std::vector<Complex> psi(8, 0.0);
  switch (kind) {
    case StateKind::GHZ: {
      const double a = 1.0 / std::numbers::sqrt2;
      psi[0b000] = a;
      psi[0b111] = a;
      break;
    }
    case StateKind::W: {
      const double a = 1.0 / std::numbers::sqrt3;
      psi[0b001] = a;
      psi[0b010] = a;
      psi[0b100] = a;
      break;
    }
  }
  return {kind, ComplexMatrix::outer(psi)};
}

Complex local_expectation(const ComplexMatrix& rho, const ComplexMatrix& a,
                          const ComplexMatrix& b, const ComplexMatrix& c) {
  // Tr[rho O] = sum_{r,s} rho(r, s) O(s, r) with O(s, r) factorised per qubit.
  Complex total = 0.0;
  for (std::size_t r = 0; r < 8; ++r) {
    const std::size_t ra = r >> 2, rb = (r >> 1) & 1U, rc = r & 1U;
    for (std::size_t s = 0; s < 8; ++s) {
      const Complex rs = rho(r, s);
      if (rs == Complex(0.0, 0.0)) continue;
      const std::size_t sa = s >> 2, sb = (s >> 1) & 1U, sc = s & 1U;
      total += rs * a(sa, ra) * b(sb, rb) * c(sc, rc);
    }
  }
  return total;
}

}  // namespace seqwit
