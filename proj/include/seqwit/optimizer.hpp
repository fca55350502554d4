// Constrained maximisation of a Charlie's Mermin or Uffink value over all
// measurement angles and the earlier Charlies' sharpness parameters.
//
// Parameter vector layout for n Charlies (length 8 + 5n - 1):
//   [alice theta0, phi0, theta1, phi1, bob theta0, phi0, theta1, phi1,
//    charlie_1 theta0, phi0, theta1, phi1, s_1, ..., charlie_n theta0, phi0,
//    theta1, phi1]
// The final Charlie measures sharply. Each s_k is an unconstrained value
// mapped to the sharpness by a logistic squash onto (0, 1).

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "seqwit/inequalities.hpp"
#include "seqwit/quantum.hpp"

namespace seqwit {

struct StageConstraint {
  std::size_t stage;  // 1-based
  double lower_bound;
};

struct OptimizationProblem {
  InequalityKind objective;
  std::size_t target_stage;
  std::vector<StageConstraint> constraints;
  StateKind initial_state = StateKind::GHZ;

  std::size_t parameter_count() const { return 8 + 5 * target_stage - 1; }
  // Throws std::invalid_argument when raw has the wrong length.
  MeasurementPlan decode(std::span<const double> raw) const;
  // Raw vector at the all-symmetric settings, with each constrained earlier
  // Charlie's sharpness fitted so its symmetric-setting value sits on its
  // lower bound.
  std::vector<double> symmetric_start() const;
  // Throws std::invalid_argument for a target stage of 0 or a constraint
  // outside [1, target_stage).
  void validate() const;
};

double squash_sharpness(double raw);
double unsquash_sharpness(double sharpness);

struct OptimizerOptions {
  // Quadratic penalty weights used in successive phases of every restart.
  std::vector<double> penalty_schedule{1e1, 1e3, 1e5, 1e7};
  std::size_t evaluations_per_phase = 3000;
  // Fresh simplexes built around the incumbent within one phase.
  std::size_t simplex_restarts = 2;
  double feasibility_tolerance = 1e-6;
  // 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct OptimizationResult {
  double best_value;
  // Angles folded into canonical ranges and sharpness values (not raw s_k).
  std::vector<double> best_parameters;
  MeasurementPlan best_plan;
  // Value of every stage at the best plan.
  std::vector<double> stage_values;
  // value - lower_bound, one per constraint.
  std::vector<double> constraint_residuals;
  int restarts_used;
  bool converged;
  // Largest objective over every evaluated point that satisfied all
  // constraints exactly, across all restarts; -infinity when none did.
  double max_feasible_objective;
  std::size_t evaluations;
};

// Multi-start Nelder-Mead on the penalised objective. Restart 0 starts from
// symmetric_start(); the others from seeded random or perturbed points.
// Results are bitwise reproducible for a given (problem, restarts, seed).
OptimizationResult maximize(const OptimizationProblem& problem, int restarts, std::uint64_t seed,
                            const OptimizerOptions& options = {});

struct FeasibleScan {
  std::size_t samples;
  std::size_t feasible;
  double max_feasible_objective;
};

// Random points scattered around the symmetric settings with random earlier
// sharpness values; reports the best objective among those satisfying every
// constraint.
FeasibleScan feasible_scan(const OptimizationProblem& problem, std::size_t samples,
                           std::uint64_t seed);

// Per-stage inequality values of a raw parameter vector.
std::vector<double> evaluate_stages(const OptimizationProblem& problem,
                                    std::span<const double> raw);

}  // namespace seqwit
