// Minimal sharpness each Charlie of a witness chain needs in order to see a
// negative witness expectation, with every earlier Charlie measuring at its
// own minimum.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "seqwit/linalg.hpp"
#include "seqwit/witnesses.hpp"

namespace seqwit {

enum class ChainTermination {
  // The next minimum reached the cap: no admissible sharpness left.
  CapReached,
  // beta <= 0: the expectation cannot become negative for any sharpness.
  NonPositiveSlope,
  // alpha <= 0: the expectation is already non-positive as lambda -> 0.
  NonPositiveOffset,
  StageLimit,
};

struct ThresholdOptions {
  double lambda_cap = 1.0;
  // Earlier Charlies measure at lambda_min + epsilon (clamped to the cap).
  double epsilon = 0.0;
  // Replaces the witness's own pure state as the chain input.
  std::optional<ComplexMatrix> initial_state;
  std::size_t max_stages = 64;
};

struct ThresholdTable {
  WitnessKind witness_kind;
  std::vector<double> minima;
  std::size_t chain_length;
  std::string convention;
  ChainTermination termination;
  // 1-based index of the first Charlie without an admissible sharpness.
  std::size_t terminal_stage;
  // The unclipped root alpha/beta at the terminal stage, when defined.
  std::optional<double> terminal_root;
  std::string diagnostic;

  bool strictly_increasing() const;
};

ThresholdTable threshold_chain(WitnessKind kind, const ThresholdOptions& options = {});

}  // namespace seqwit
