#include "seqwit/inequalities.hpp"

#include <cmath>
#include <stdexcept>

namespace seqwit {
namespace {

struct CorrelatorTerm {
  int alice;
  int bob;
  int charlie;
  double sign;
};

constexpr std::array<CorrelatorTerm, 4> kMerminTerms{{
    {1, 0, 0, +1.0},
    {0, 1, 0, +1.0},
    {0, 0, 1, +1.0},
    {1, 1, 1, -1.0},
}};

constexpr std::array<CorrelatorTerm, 4> kUffinkSecondTerms{{
    {1, 1, 0, +1.0},
    {0, 1, 1, +1.0},
    {1, 0, 1, +1.0},
    {0, 0, 0, -1.0},
}};

double bracket(const StageCorrelators& c, const std::array<CorrelatorTerm, 4>& terms) {
  double sum = 0.0;
  for (const auto& t : terms) sum += t.sign * c.at(t.alice, t.bob, t.charlie);
  return sum;
}

}  // namespace

MeasurementPlan MeasurementPlan::symmetric(const std::vector<double>& sharpness) {
  const std::array<Direction, 2> pair{Direction::y(), Direction::x()};
  MeasurementPlan plan{pair, pair, {}};
  for (double lambda : sharpness) plan.charlies.push_back({pair, lambda});
  return plan;
}

std::vector<CharlieStage> MeasurementPlan::stages() const {
  std::vector<CharlieStage> out;
  out.reserve(charlies.size());
  for (const auto& c : charlies) {
    out.push_back(CharlieStage::uniform({c.directions[0], c.directions[1]}, c.sharpness));
  }
  return out;
}

std::vector<StageCorrelators> stage_correlators(const MeasurementPlan& plan,
                                                const ComplexMatrix& initial) {
  if (plan.charlies.empty()) throw std::invalid_argument("stage_correlators: no Charlies");
  const ChainPropagator chain(initial, plan.stages());

  const std::array<ComplexMatrix, 2> alice{observable(plan.alice[0]), observable(plan.alice[1])};
  const std::array<ComplexMatrix, 2> bob{observable(plan.bob[0]), observable(plan.bob[1])};

  std::vector<StageCorrelators> out(plan.charlies.size());
  for (std::size_t m = 1; m <= plan.charlies.size(); ++m) {
    const auto& charlie = plan.charlies[m - 1];
    const ComplexMatrix& rho = chain.state_before(m);
    for (int l = 0; l < 2; ++l) {
      const ComplexMatrix c = observable(charlie.directions[l]);
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          out[m - 1].values[4 * i + 2 * j + l] =
              charlie.sharpness * local_expectation(rho, alice[i], bob[j], c).real();
        }
      }
    }
  }
  return out;
}

double mermin_value(const StageCorrelators& c) { return std::abs(bracket(c, kMerminTerms)); }

double uffink_value(const StageCorrelators& c) {
  const double first = bracket(c, kMerminTerms);
  const double second = bracket(c, kUffinkSecondTerms);
  return first * first + second * second;
}

double inequality_value(InequalityKind kind, const StageCorrelators& c) {
  return kind == InequalityKind::Mermin ? mermin_value(c) : uffink_value(c);
}

double inequality_bound(InequalityKind kind) {
  return kind == InequalityKind::Mermin ? kMerminBound : kUffinkBound;
}

double percent_violation(double value, double bound) { return 100.0 * (value - bound) / bound; }

ChainReport inequality_chain(InequalityKind kind, const MeasurementPlan& plan,
                             const ComplexMatrix& initial) {
  ChainReport report{kind, {}, inequality_bound(kind), {}};
  for (const auto& c : stage_correlators(plan, initial)) {
    const double v = inequality_value(kind, c);
    report.values.push_back(v);
    report.verdicts.push_back(v > report.bound);
  }
  return report;
}

ChainReport mermin_chain(const MeasurementPlan& plan, const NamedState& initial) {
  return inequality_chain(InequalityKind::Mermin, plan, initial.density);
}

ChainReport uffink_chain(const MeasurementPlan& plan, const NamedState& initial) {
  return inequality_chain(InequalityKind::Uffink, plan, initial.density);
}

}  // namespace seqwit
