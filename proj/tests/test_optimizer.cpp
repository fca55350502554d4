#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "seqwit/optimizer.hpp"

using namespace seqwit;

namespace {

OptimizerOptions quick() {
  OptimizerOptions o;
  o.evaluations_per_phase = 800;
  o.simplex_restarts = 1;
  o.threads = 1;
  return o;
}

}  // namespace

TEST(Squash, RoundTripAndRange) {
  for (double s : {0.01, 0.3, 0.74, 0.99}) EXPECT_NEAR(squash_sharpness(unsquash_sharpness(s)), s, 1e-12);
  EXPECT_GT(squash_sharpness(-1e6), 0.0);
  EXPECT_LE(squash_sharpness(1e6), 1.0);
}

TEST(Problem, ParameterLayoutAndValidation) {
  const OptimizationProblem p{InequalityKind::Mermin, 3, {{1, kMerminBound}, {2, kMerminBound}}};
  EXPECT_EQ(p.parameter_count(), 22u);
  EXPECT_THROW(p.decode(std::vector<double>(5, 0.0)), std::invalid_argument);
  EXPECT_THROW((OptimizationProblem{InequalityKind::Mermin, 0, {}}.validate()),
               std::invalid_argument);
  EXPECT_THROW((OptimizationProblem{InequalityKind::Mermin, 2, {{2, 1.0}}}.validate()),
               std::invalid_argument);
}

TEST(Problem, SymmetricStartFitsConstraints) {
  const OptimizationProblem p{InequalityKind::Mermin, 2, {{1, 2.96}}};
  const auto values = evaluate_stages(p, p.symmetric_start());
  EXPECT_NEAR(values[0], 2.96, 1e-9);
  const MeasurementPlan plan = p.decode(p.symmetric_start());
  EXPECT_EQ(plan.alice[0], Direction::y());
  EXPECT_EQ(plan.charlies.back().sharpness, 1.0);
}

TEST(Optimizer, SingleCharlieMerminMaximumIsFour) {
  const OptimizationProblem p{InequalityKind::Mermin, 1, {}};
  const OptimizationResult r = maximize(p, 3, 1, quick());
  EXPECT_NEAR(r.best_value, 4.0, 1e-6);
  EXPECT_TRUE(r.converged);
}

TEST(Optimizer, SingleCharlieUffinkMaximumIsSixteen) {
  const OptimizationProblem p{InequalityKind::Uffink, 1, {}};
  EXPECT_NEAR(maximize(p, 3, 1, quick()).best_value, 16.0, 1e-6);
}

TEST(Optimizer, ConstrainedThirdCharlieStaysWithinBound) {
  const OptimizationProblem p{InequalityKind::Mermin, 3, {{1, kMerminBound}, {2, kMerminBound}}};
  const OptimizationResult r = maximize(p, 4, 7, quick());
  EXPECT_LE(r.max_feasible_objective, kMerminBound + 1e-9);
  EXPECT_EQ(r.stage_values.size(), 3u);
  EXPECT_EQ(r.constraint_residuals.size(), 2u);
}

TEST(Optimizer, BitwiseDeterministicAcrossThreadCounts) {
  const OptimizationProblem p{InequalityKind::Uffink, 2, {{1, 8.0}}};
  OptimizerOptions one = quick();
  OptimizerOptions many = quick();
  many.threads = 3;
  const OptimizationResult a = maximize(p, 5, 99, one);
  const OptimizationResult b = maximize(p, 5, 99, many);
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.best_parameters, b.best_parameters);
  EXPECT_EQ(a.max_feasible_objective, b.max_feasible_objective);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(Optimizer, ResultAnglesAreCanonical) {
  const OptimizationProblem p{InequalityKind::Mermin, 2, {{1, kMerminBound}}};
  const OptimizationResult r = maximize(p, 2, 3, quick());
  ASSERT_EQ(r.best_parameters.size(), p.parameter_count());
  for (std::size_t k = 0; k < r.best_parameters.size(); ++k) {
    const bool is_sharpness = k >= 8 && (k - 8) % 5 == 4;
    const double v = r.best_parameters[k];
    if (is_sharpness) {
      EXPECT_GT(v, 0.0);
      EXPECT_LE(v, 1.0);
    } else {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 2 * std::numbers::pi);
    }
  }
}

TEST(FeasibleScan, FindsSymmetricFeasiblePoints) {
  const OptimizationProblem p{InequalityKind::Mermin, 3, {{1, kMerminBound}, {2, kMerminBound}}};
  const FeasibleScan scan = feasible_scan(p, 2000, 5);
  EXPECT_EQ(scan.samples, 2000u);
  EXPECT_GT(scan.feasible, 0u);
  EXPECT_LE(scan.max_feasible_objective, kMerminBound);
}
