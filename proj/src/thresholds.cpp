#include "seqwit/thresholds.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "seqwit/sequential.hpp"

namespace seqwit {

bool ThresholdTable::strictly_increasing() const {
  return std::adjacent_find(minima.begin(), minima.end(), std::greater_equal<>()) ==
         minima.end();
}

ThresholdTable threshold_chain(WitnessKind kind, const ThresholdOptions& options) {
  if (!(options.lambda_cap > 0.0 && options.lambda_cap <= 1.0)) {
    throw std::invalid_argument("threshold_chain: lambda cap must lie in (0, 1]");
  }
  if (!(options.epsilon >= 0.0)) {
    throw std::invalid_argument("threshold_chain: epsilon must be non-negative");
  }

  const WitnessSpec spec = build_witness(kind);
  ComplexMatrix rho = options.initial_state
                          ? *options.initial_state
                          : named_state(kind == WitnessKind::W ? StateKind::W : StateKind::GHZ)
                                .density;

  ThresholdTable table{kind,
                       {},
                       0,
                       "lambda_i = lambda_i^min for all i < m",
                       ChainTermination::StageLimit,
                       options.max_stages + 1,
                       std::nullopt,
                       {}};
  if (options.epsilon > 0.0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "lambda_i = lambda_i^min + %.6g for all i < m",
                  options.epsilon);
    table.convention = buf;
  }

  for (std::size_t m = 1; m <= options.max_stages; ++m) {
    const AffineWitnessValue affine = affine_coefficients(spec, rho);
    char buf[160];
    // Slopes at rounding level (traceless Charlie factors) count as zero.
    if (affine.beta <= 1e-14) {
      table.termination = ChainTermination::NonPositiveSlope;
      table.terminal_stage = m;
      std::snprintf(buf, sizeof buf,
                    "stage %zu: slope beta = %.6g <= 0, expectation %.6g cannot turn negative", m,
                    affine.beta, affine.alpha);
      table.diagnostic = buf;
      break;
    }
    if (affine.alpha <= 0.0) {
      table.termination = ChainTermination::NonPositiveOffset;
      table.terminal_stage = m;
      std::snprintf(buf, sizeof buf, "stage %zu: offset alpha = %.6g <= 0, no finite minimum", m,
                    affine.alpha);
      table.diagnostic = buf;
      break;
    }
    const double root = affine.alpha / affine.beta;
    if (root >= options.lambda_cap) {
      table.termination = ChainTermination::CapReached;
      table.terminal_stage = m;
      table.terminal_root = root;
      std::snprintf(buf, sizeof buf, "stage %zu: required sharpness %.6g >= cap %.6g", m, root,
                    options.lambda_cap);
      table.diagnostic = buf;
      break;
    }
    table.minima.push_back(root);
    const double applied = std::min(root + options.epsilon, options.lambda_cap);
    rho = AveragedChannel(spec.stage(applied)).apply(rho);
  }
  table.chain_length = table.minima.size();
  return table;
}

}  // namespace seqwit
