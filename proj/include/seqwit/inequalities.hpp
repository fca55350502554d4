// Mermin and Uffink genuine-entanglement tests for every Charlie of a chain.

#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <vector>

#include "seqwit/linalg.hpp"
#include "seqwit/quantum.hpp"
#include "seqwit/sequential.hpp"

namespace seqwit {

inline constexpr double kMerminBound = 2.0 * std::numbers::sqrt2;
inline constexpr double kUffinkBound = 8.0;

enum class InequalityKind { Mermin, Uffink };

struct CharlieSettings {
  std::array<Direction, 2> directions;
  double sharpness;
};

// Alice's and Bob's two projective settings plus the two unsharp settings and
// sharpness of every Charlie. Setting index 0 and 1 follow the correlator
// subscripts.
struct MeasurementPlan {
  std::array<Direction, 2> alice;
  std::array<Direction, 2> bob;
  std::vector<CharlieSettings> charlies;

  // Every party measures y (index 0) or x (index 1); one Charlie per entry of
  // `sharpness`.
  static MeasurementPlan symmetric(const std::vector<double>& sharpness);

  // Unbiased two-setting stages, one per Charlie.
  std::vector<CharlieStage> stages() const;
};

// Setting-averaged correlators of one stage, indexed by (alice, bob, charlie)
// setting bits.
struct StageCorrelators {
  std::array<double, 8> values{};
  double at(int i, int j, int l) const { return values[4 * i + 2 * j + l]; }
};

// All eight correlators for every Charlie of the plan.
std::vector<StageCorrelators> stage_correlators(const MeasurementPlan& plan,
                                                const ComplexMatrix& initial);

// |C100 + C010 + C001 - C111|
double mermin_value(const StageCorrelators& c);
// (C100 + C010 + C001 - C111)^2 + (C110 + C011 + C101 - C000)^2
double uffink_value(const StageCorrelators& c);
double inequality_value(InequalityKind kind, const StageCorrelators& c);
double inequality_bound(InequalityKind kind);

struct ChainReport {
  InequalityKind kind;
  std::vector<double> values;
  double bound;
  // verdicts[m] == (values[m] > bound)
  std::vector<bool> verdicts;
};

// 100 (value - bound) / bound
double percent_violation(double value, double bound);

ChainReport mermin_chain(const MeasurementPlan& plan, const NamedState& initial);
ChainReport uffink_chain(const MeasurementPlan& plan, const NamedState& initial);
ChainReport inequality_chain(InequalityKind kind, const MeasurementPlan& plan,
                             const ComplexMatrix& initial);

}  // namespace seqwit
