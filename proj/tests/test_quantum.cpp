#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracle.hpp"
#include "seqwit/quantum.hpp"

using namespace seqwit;

TEST(Direction, ValidatesRanges) {
  EXPECT_THROW(Direction(-0.1, 0), std::invalid_argument);
  EXPECT_THROW(Direction(4.0, 0), std::invalid_argument);
  EXPECT_THROW(Direction(1.0, 7.0), std::invalid_argument);
  EXPECT_NO_THROW(Direction(std::numbers::pi, 2 * std::numbers::pi));
}

TEST(Direction, CanonicalFoldingKeepsVector) {
  for (double theta : {-2.0, -0.3, 0.4, 3.5, 7.9}) {
    for (double phi : {-9.0, -1.0, 0.5, 6.5, 13.0}) {
      const Direction d = Direction::canonical(theta, phi);
      const auto v = d.unit_vector();
      const auto expected = oracle::polar(theta, phi);
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(v[k], expected[k], 1e-12);
    }
  }
}

TEST(Direction, FromVectorRoundTrip) {
  const Direction d = Direction::from_vector({1, 1, 0});
  EXPECT_NEAR(d.theta(), std::numbers::pi / 2, 1e-15);
  EXPECT_NEAR(d.phi(), std::numbers::pi / 4, 1e-15);
}

TEST(Quantum, ObservableMatchesPaulis) {
  EXPECT_LT(max_abs_diff(observable(Direction::x()), pauli_x()), 1e-15);
  EXPECT_LT(max_abs_diff(observable(Direction::y()), pauli_y()), 1e-15);
  EXPECT_LT(max_abs_diff(observable(Direction::z()), pauli_z()), 1e-15);
}

TEST(Quantum, EffectExample) {
  const UnsharpMeasurement u(Direction::z(), 0.5);
  EXPECT_LT(max_abs_diff(effect(u, Outcome::Plus), ComplexMatrix::diagonal({0.75, 0.25})), 1e-15);
  EXPECT_LT(max_abs_diff(effect(u, Outcome::Minus), ComplexMatrix::diagonal({0.25, 0.75})),
            1e-15);
}

TEST(Quantum, SqrtEffectExample) {
  const UnsharpMeasurement u(Direction::z(), 0.6);
  EXPECT_LT(max_abs_diff(sqrt_effect(u, Outcome::Plus),
                         ComplexMatrix::diagonal({std::sqrt(0.8), std::sqrt(0.2)})),
            1e-15);
}

TEST(Quantum, EffectsFormPovmAndSquareRootsSquare) {
  for (double lambda : {0.01, 0.3, 0.74, 1.0}) {
    for (const Direction& d : {Direction(0.3, 1.1), Direction(2.0, 5.5), Direction::y()}) {
      const UnsharpMeasurement u(d, lambda);
      EXPECT_LT(max_abs_diff(effect(u, Outcome::Plus) + effect(u, Outcome::Minus), identity2()),
                1e-14);
      for (Outcome o : kOutcomes) {
        const ComplexMatrix s = sqrt_effect(u, o);
        EXPECT_LT(max_abs_diff(s * s, effect(u, o)), 1e-14);
        EXPECT_TRUE(is_hermitian(s));
        for (double ev : eig_hermitian(effect(u, o))) EXPECT_GE(ev, -1e-15);
      }
    }
  }
}

TEST(Quantum, UnsharpExpectationIsScaledSharpExpectation) {
  const ComplexMatrix rho = 0.5 * (identity2() + 0.3 * pauli_x() - 0.5 * pauli_y() + 0.6 * pauli_z());
  for (double lambda : {0.2, 0.9}) {
    const UnsharpMeasurement u(Direction(1.0, 2.0), lambda);
    const double unsharp =
        trace_of_product(effect(u, Outcome::Plus) - effect(u, Outcome::Minus), rho).real();
    const double sharp = trace_of_product(observable(u.direction()), rho).real();
    EXPECT_NEAR(unsharp, lambda * sharp, 1e-14);
  }
}

TEST(Quantum, SharpnessValidationAndQualityFactor) {
  EXPECT_THROW(UnsharpMeasurement(Direction::z(), 0.0), std::invalid_argument);
  EXPECT_THROW(UnsharpMeasurement(Direction::z(), 1.01), std::invalid_argument);
  const UnsharpMeasurement u(Direction::z(), 0.6);
  EXPECT_NEAR(u.quality_factor(), 0.8, 1e-15);
  EXPECT_NEAR(u.quality_factor() * u.quality_factor() + u.precision() * u.precision(), 1.0,
              1e-15);
}

TEST(Quantum, NamedStates) {
  EXPECT_LT(max_abs_diff(named_state(StateKind::GHZ).density, oracle::ghz()), 1e-15);
  EXPECT_LT(max_abs_diff(named_state(StateKind::W).density, oracle::w()), 1e-15);
}

TEST(Quantum, LocalExpectationMatchesFullTrace) {
  const ComplexMatrix rho = oracle::ghz();
  EXPECT_NEAR(local_expectation(rho, pauli_x(), pauli_x(), pauli_x()).real(), 1.0, 1e-15);
  EXPECT_NEAR(local_expectation(rho, pauli_x(), pauli_y(), pauli_y()).real(), -1.0, 1e-15);
  const ComplexMatrix w = oracle::w();
  const ComplexMatrix a = observable(Direction(0.4, 0.2));
  const ComplexMatrix b = observable(Direction(1.4, 3.2));
  const ComplexMatrix c = observable(Direction(2.4, 5.2));
  EXPECT_LT(std::abs(local_expectation(w, a, b, c) - (w * kron(a, b, c)).trace()), 1e-14);
}
