#include "seqwit/run.hpp"

#include <cmath>
#include <string>

#include "seqwit/optimizer.hpp"
#include "seqwit/sequential.hpp"
#include "seqwit/thresholds.hpp"
#include "seqwit/witnesses.hpp"

namespace seqwit {
namespace {

using ojson = nlohmann::ordered_json;

ojson quantized(const std::vector<double>& xs) {
  ojson out = ojson::array();
  for (double x : xs) out.push_back(quantize(x));
  return out;
}

ojson finite_or_null(double x) { return std::isfinite(x) ? ojson(quantize(x)) : ojson(nullptr); }

Report base_report(const RunConfig& cfg) {
  Report r;
  r.command = command_name(cfg.command);
  r.seed = cfg.seed;
  return r;
}

void set_rows(Report& r, const std::vector<double>& values, const std::vector<bool>& verdicts) {
  for (double v : values) r.values.emplace_back(quantize(v));
  r.verdicts = verdicts;
}

WitnessKind witness_for(const RunConfig& cfg) {
  if (cfg.witness) return *cfg.witness;
  return cfg.state == StateKind::W ? WitnessKind::W : WitnessKind::GHZ;
}

RunOutcome run_inequality(const RunConfig& cfg, InequalityKind kind) {
  RunOutcome out{base_report(cfg), 0, {}};
  out.report.inputs["state"] = state_name(cfg.state);
  out.report.inputs["lambdas"] = quantized(cfg.lambdas);
  if (cfg.angles) out.report.inputs["angles"] = quantized(*cfg.angles);
  const ChainReport chain =
      inequality_chain(kind, plan_from_config(cfg), named_state(cfg.state).density);
  set_rows(out.report, chain.values, chain.verdicts);
  out.report.bound = quantize(chain.bound);
  return out;
}

RunOutcome run_witness_chain(const RunConfig& cfg) {
  RunOutcome out{base_report(cfg), 0, {}};
  const WitnessKind kind = witness_for(cfg);
  out.report.inputs["state"] = state_name(cfg.state);
  out.report.inputs["witness"] = witness_name(kind);
  out.report.inputs["lambdas"] = quantized(cfg.lambdas);
  const WitnessChainReport chain =
      witness_chain(build_witness(kind), named_state(cfg.state).density, cfg.lambdas);
  set_rows(out.report, chain.values, chain.verdicts);
  out.report.bound = 0.0;
  return out;
}

RunOutcome run_thresholds(const RunConfig& cfg) {
  RunOutcome out{base_report(cfg), 0, {}};
  const WitnessKind kind = witness_for(cfg);
  out.report.inputs["witness"] = witness_name(kind);
  out.report.inputs["epsilon"] = quantize(cfg.epsilon);
  out.report.inputs["cap"] = quantize(cfg.cap);
  ThresholdOptions options;
  options.lambda_cap = cfg.cap;
  options.epsilon = cfg.epsilon;
  const ThresholdTable table = threshold_chain(kind, options);
  set_rows(out.report, table.minima, std::vector<bool>(table.minima.size(), true));
  // Terminator row: the first Charlie with no admissible sharpness.
  out.report.values.emplace_back(std::nullopt);
  out.report.verdicts.push_back(false);
  out.report.bound = quantize(cfg.cap);
  out.report.details["chain_length"] = table.chain_length;
  out.report.details["terminal_stage"] = table.terminal_stage;
  out.report.details["terminal_root"] =
      table.terminal_root ? finite_or_null(*table.terminal_root) : ojson(nullptr);
  out.report.details["convention"] = table.convention;
  if (table.termination != ChainTermination::CapReached) out.diagnostics = table.diagnostic;
  return out;
}

RunOutcome run_optimize(const RunConfig& cfg) {
  RunOutcome out{base_report(cfg), 0, {}};
  const double level = cfg.constraint.value_or(inequality_bound(cfg.objective));
  out.report.inputs["objective"] = objective_name(cfg.objective);
  out.report.inputs["state"] = state_name(cfg.state);
  out.report.inputs["stages"] = cfg.stages;
  out.report.inputs["constraint"] = quantize(level);
  out.report.inputs["restarts"] = cfg.restarts;

  OptimizationProblem problem{cfg.objective, cfg.stages, {}, cfg.state};
  for (std::size_t m = 1; m < cfg.stages; ++m) problem.constraints.push_back({m, level});
  const OptimizationResult result = maximize(problem, cfg.restarts, cfg.seed);

  std::vector<bool> verdicts;
  const double bound = inequality_bound(cfg.objective);
  for (double v : result.stage_values) verdicts.push_back(v > bound);
  set_rows(out.report, result.stage_values, verdicts);
  out.report.bound = quantize(bound);

  ojson& d = out.report.details;
  d["best_value"] = quantize(result.best_value);
  d["best_parameters"] = quantized(result.best_parameters);
  d["constraint_residuals"] = quantized(result.constraint_residuals);
  d["restarts_used"] = result.restarts_used;
  d["converged"] = result.converged;
  d["max_feasible_objective"] = finite_or_null(result.max_feasible_objective);
  d["evaluations"] = result.evaluations;
  if (!result.converged) {
    out.exit_code = 3;
    out.diagnostics = "optimize: no restart satisfied every constraint within tolerance";
  }
  return out;
}

RunOutcome run_oracle_check(const RunConfig& cfg) {
  constexpr double kTolerance = 1e-10;
  RunOutcome out{base_report(cfg), 0, {}};
  out.report.inputs["instances"] = cfg.instances;
  const OracleCheck check = oracle_check(cfg.instances, cfg.seed);
  std::size_t failures = 0;
  for (double diff : check.differences) {
    out.report.values.emplace_back(quantize(diff));
    out.report.verdicts.push_back(diff <= kTolerance);
    if (diff > kTolerance) ++failures;
  }
  out.report.bound = kTolerance;
  out.report.details["max_difference"] = quantize(check.max_difference);
  out.report.details["failures"] = failures;
  if (failures > 0) {
    out.exit_code = 3;
    out.diagnostics = "oracle-check: " + std::to_string(failures) +
                      " instance(s) differ from the branch oracle by more than 1e-10";
  }
  return out;
}

std::string cut_name(Bipartition cut) {
  switch (cut) {
    case Bipartition::A_BC: return "A|BC";
    case Bipartition::B_AC: return "B|AC";
    case Bipartition::C_AB: return "C|AB";
  }
  return "?";
}

RunOutcome run_positivity_fuzz(const RunConfig& cfg) {
  constexpr double kTolerance = -1e-10;
  RunOutcome out{base_report(cfg), 0, {}};
  const std::vector<double> grid = default_lambda_grid();
  out.report.inputs["samples"] = cfg.samples;
  out.report.inputs["lambda_grid"] = quantized(grid);
  const auto cells = positivity_fuzz(cfg.samples, cfg.seed, grid);
  ojson rows = ojson::array();
  std::size_t failures = 0;
  for (const auto& cell : cells) {
    out.report.values.emplace_back(quantize(cell.min_expectation));
    const bool ok = cell.min_expectation >= kTolerance;
    out.report.verdicts.push_back(ok);
    if (!ok) ++failures;
    rows.push_back(ojson{{"witness", witness_name(cell.witness)},
                         {"cut", cut_name(cell.cut)},
                         {"states", cell.states},
                         {"min_expectation", quantize(cell.min_expectation)},
                         {"min_margin", quantize(cell.min_margin)}});
  }
  out.report.bound = kTolerance;
  out.report.details["cells"] = rows;
  if (failures > 0) {
    out.exit_code = 3;
    out.diagnostics = "positivity-fuzz: a biseparable state gave a negative witness expectation";
  }
  return out;
}

}  // namespace

MeasurementPlan plan_from_config(const RunConfig& cfg) {
  MeasurementPlan plan = MeasurementPlan::symmetric(cfg.lambdas);
  if (!cfg.angles) return plan;
  const std::vector<double>& a = *cfg.angles;
  auto dir = [&](std::size_t k) { return Direction(a[2 * k], a[2 * k + 1]); };
  plan.alice = {dir(0), dir(1)};
  plan.bob = {dir(2), dir(3)};
  for (std::size_t m = 0; m < plan.charlies.size(); ++m) {
    plan.charlies[m].directions = {dir(4 + 2 * m), dir(5 + 2 * m)};
  }
  return plan;
}

RunOutcome run(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::MerminChain: return run_inequality(cfg, InequalityKind::Mermin);
    case Command::UffinkChain: return run_inequality(cfg, InequalityKind::Uffink);
    case Command::WitnessChain: return run_witness_chain(cfg);
    case Command::Thresholds: return run_thresholds(cfg);
    case Command::Optimize: return run_optimize(cfg);
    case Command::OracleCheck: return run_oracle_check(cfg);
    case Command::PositivityFuzz: return run_positivity_fuzz(cfg);
  }
  throw UsageError("unknown command");
}

}  // namespace seqwit
