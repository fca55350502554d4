#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracle.hpp"
#include "seqwit/sequential.hpp"

using namespace seqwit;

namespace {

const NamedState kGhz = named_state(StateKind::GHZ);

CharlieStage xy_stage(double lambda) {
  return CharlieStage::uniform({Direction::y(), Direction::x()}, lambda);
}

}  // namespace

TEST(CharlieStage, Validation) {
  EXPECT_THROW(CharlieStage({}, {}), std::invalid_argument);
  EXPECT_THROW(CharlieStage({UnsharpMeasurement(Direction::x(), 0.5)}, {0.9}),
               std::invalid_argument);
  EXPECT_THROW(CharlieStage({UnsharpMeasurement(Direction::x(), 0.5),
                             UnsharpMeasurement(Direction::y(), 0.6)},
                            {0.5, 0.5}),
               std::invalid_argument);
  EXPECT_THROW(CharlieStage({UnsharpMeasurement(Direction::x(), 0.5),
                             UnsharpMeasurement(Direction::y(), 0.5)},
                            {1.5, -0.5}),
               std::invalid_argument);
}

TEST(AveragedChannel, SharpZOnGhzDephases) {
  const ComplexMatrix out =
      averaged_channel(kGhz.density, CharlieStage::uniform({Direction::z()}, 1.0));
  EXPECT_LT(max_abs_diff(out, ComplexMatrix::diagonal({0.5, 0, 0, 0, 0, 0, 0, 0.5})), 1e-15);
}

TEST(AveragedChannel, XYStageShrinksXxxCorrelation) {
  for (double lambda : {0.1, 0.5, 0.74, 1.0}) {
    const double f = std::sqrt(1 - lambda * lambda);
    const ComplexMatrix out = averaged_channel(kGhz.density, xy_stage(lambda));
    EXPECT_NEAR(local_expectation(out, pauli_x(), pauli_x(), pauli_x()).real(), (1 + f) / 2,
                1e-14);
  }
}

TEST(AveragedChannel, MatchesBruteForceKraus) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ComplexMatrix rho = random_state(seed);
    const CharlieStage stage =
        CharlieStage::uniform({Direction(0.3, 1.0), Direction(2.1, 4.0), Direction::x()}, 0.37);
    const ComplexMatrix expected = oracle::averaged(
        rho, {oracle::polar(0.3, 1.0), oracle::polar(2.1, 4.0), oracle::polar(std::numbers::pi / 2, 0)},
        0.37);
    EXPECT_LT(max_abs_diff(averaged_channel(rho, stage), expected), 1e-14);
  }
}

TEST(AveragedChannel, IsTracePreservingAndPositive) {
  const CharlieStage stage = CharlieStage::uniform({Direction(0.7, 0.2), Direction(1.7, 3.0)}, 0.8);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix out = averaged_channel(random_state(seed), stage);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-13);
    EXPECT_TRUE(is_hermitian(out, 1e-13));
    EXPECT_GE(eig_hermitian(out).front(), -1e-13);
  }
}

TEST(AveragedChannel, NoSignallingToAliceAndBob) {
  const CharlieStage stage = CharlieStage::uniform({Direction(0.2, 0.9), Direction(2.5, 1.5)}, 0.9);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix rho = random_state(seed);
    EXPECT_LT(max_abs_diff(partial_trace(averaged_channel(rho, stage), {Qubit::A, Qubit::B}),
                           partial_trace(rho, {Qubit::A, Qubit::B})),
              1e-14);
  }
}

TEST(AveragedChannel, CompositionMatchesSequentialApplication) {
  const CharlieStage s1 = xy_stage(0.6);
  const CharlieStage s2 = CharlieStage::uniform({Direction(1.0, 1.0)}, 0.3);
  const ComplexMatrix rho = random_state(42);
  const AveragedChannel both = AveragedChannel(s2).after(AveragedChannel(s1));
  EXPECT_LT(max_abs_diff(both.apply(rho), averaged_channel(averaged_channel(rho, s1), s2)), 1e-14);
  EXPECT_EQ(max_abs_diff(AveragedChannel().apply(rho), rho), 0.0);
}

TEST(Luders, OutcomeProbabilitiesSumToOne) {
  const ComplexMatrix rho = random_state(5);
  const UnsharpMeasurement u(Direction(0.9, 2.2), 0.45);
  double total = 0;
  for (Outcome o : kOutcomes) total += luders_map(rho, u, o).trace().real();
  EXPECT_NEAR(total, 1.0, 1e-14);
}

TEST(ChainCorrelation, GhzExamples) {
  const std::vector<CharlieStage> one{xy_stage(0.74)};
  EXPECT_NEAR(chain_correlation(kGhz, one, 1, Direction::x(), Direction::y(), 0), -0.74, 1e-12);

  const std::vector<CharlieStage> two{xy_stage(0.74), xy_stage(1.0)};
  const double f = std::sqrt(1 - 0.74 * 0.74);
  const double expected = -(1 + f) / 2;
  EXPECT_NEAR(chain_correlation(kGhz, two, 2, Direction::x(), Direction::y(), 0), expected, 1e-12);
  EXPECT_NEAR(expected, -0.8363, 5e-5);
}

TEST(ChainCorrelation, LinearInFinalSharpness) {
  const ComplexMatrix rho = random_state(9);
  const Direction a(0.5, 0.1), b(1.2, 4.4);
  auto at = [&](double lambda) {
    return chain_correlation(rho, {xy_stage(0.5), xy_stage(lambda)}, 2, a, b, 1);
  };
  EXPECT_NEAR(at(0.8), 0.8 * at(1.0), 1e-14);
  EXPECT_NEAR(at(0.2) + at(0.6), 2 * at(0.4), 1e-14);
}

TEST(ChainCorrelation, AgreesWithPropagatorAndBruteForce) {
  const ComplexMatrix rho = random_state(17);
  const std::vector<CharlieStage> stages{xy_stage(0.3), xy_stage(0.8), xy_stage(0.55)};
  const ChainPropagator chain(rho, stages);
  const Direction a(0.4, 0.3), b(2.0, 5.0);
  ComplexMatrix brute = rho;
  const std::vector<std::array<double, 3>> dirs{oracle::polar(std::numbers::pi / 2, std::numbers::pi / 2),
                                                oracle::polar(std::numbers::pi / 2, 0)};
  for (std::size_t m = 1; m <= 3; ++m) {
    const double expected =
        stages[m - 1].sharpness() *
        oracle::expectation(brute, oracle::polar(0.4, 0.3), oracle::polar(2.0, 5.0), dirs[0]);
    EXPECT_NEAR(chain_correlation(rho, stages, m, a, b, 0), expected, 1e-13);
    EXPECT_NEAR(chain.correlation(m, a, b, 0), expected, 1e-13);
    brute = oracle::averaged(brute, dirs, stages[m - 1].sharpness());
  }
}

TEST(ChainCorrelation, RejectsBadIndices) {
  const std::vector<CharlieStage> stages{xy_stage(0.5)};
  EXPECT_THROW(chain_correlation(kGhz, stages, 0, Direction::x(), Direction::x(), 0),
               std::out_of_range);
  EXPECT_THROW(chain_correlation(kGhz, stages, 2, Direction::x(), Direction::x(), 0),
               std::out_of_range);
  EXPECT_THROW(chain_correlation(kGhz, stages, 1, Direction::x(), Direction::x(), 2),
               std::out_of_range);
}

TEST(BranchOracle, AgreesOnFixedChain) {
  const ComplexMatrix rho = random_state(2);
  const std::vector<CharlieStage> stages{
      CharlieStage::uniform({Direction(0.1, 0.2), Direction(1.3, 2.2), Direction(2.9, 6.0)}, 0.6),
      xy_stage(0.2), xy_stage(0.9)};
  for (std::size_t m = 1; m <= 3; ++m) {
    EXPECT_NEAR(branch_oracle_correlation(rho, stages, m, Direction(0.7, 0.7), Direction(1.9, 3.3), 1),
                chain_correlation(rho, stages, m, Direction(0.7, 0.7), Direction(1.9, 3.3), 1),
                1e-13);
  }
}

TEST(BranchOracle, RefusesExcessiveBranching) {
  std::vector<Direction> many;
  for (int k = 0; k < 40; ++k) many.push_back(Direction(0.05 * k, 0.1 * k));
  const std::vector<CharlieStage> stages(5, CharlieStage::uniform(many, 0.5));
  EXPECT_THROW(branch_oracle_correlation(kGhz.density, stages, 5, Direction::x(), Direction::x(), 0),
               std::length_error);
}

TEST(OracleCheck, DeterministicAndTight) {
  const OracleCheck a = oracle_check(30, 123);
  const OracleCheck b = oracle_check(30, 123);
  EXPECT_EQ(a.differences, b.differences);
  EXPECT_LE(a.max_difference, 1e-10);
}

TEST(RandomState, IsDensityOperator) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ComplexMatrix rho = random_state(seed);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
    EXPECT_TRUE(is_hermitian(rho));
    EXPECT_GE(eig_hermitian(rho).front(), -1e-14);
  }
}
