// Dispatch of a parsed RunConfig to the module operation it names.

#pragma once

#include <string>

#include "seqwit/report.hpp"

namespace seqwit {

struct RunOutcome {
  Report report;
  // 0 success, 3 numerical diagnostic.
  int exit_code = 0;
  // Human-readable notes for stderr; empty when there is nothing to say.
  std::string diagnostics;
};

// Measurement plan described by cfg.angles, or the symmetric plan when absent.
MeasurementPlan plan_from_config(const RunConfig& cfg);

RunOutcome run(const RunConfig& cfg);

}  // namespace seqwit
