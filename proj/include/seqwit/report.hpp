// Run configuration and machine-readable result emission for the seqwit CLI.
//
// CSV layout: header `stage,value,bound,violated`, one row per stage in
// ascending order. JSON layout: {command, inputs, values, bound, verdicts,
// meta{seed, version}} in that key order, plus `details` for commands that
// produce more than a per-stage table. Floating-point numbers carry 12
// significant digits in both formats.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "seqwit/inequalities.hpp"
#include "seqwit/quantum.hpp"
#include "seqwit/witnesses.hpp"

namespace seqwit {

inline constexpr const char* kVersion = "0.1.0";

enum class Command {
  MerminChain,
  UffinkChain,
  WitnessChain,
  Thresholds,
  Optimize,
  OracleCheck,
  PositivityFuzz,
};

enum class OutputFormat { Json, Csv };

struct RunConfig {
  Command command = Command::MerminChain;
  StateKind state = StateKind::GHZ;
  std::vector<double> lambdas;
  // Radians: alice (theta0, phi0, theta1, phi1), bob (same), then four per
  // Charlie. Absent means the symmetric settings.
  std::optional<std::vector<double>> angles;
  OutputFormat output_format = OutputFormat::Csv;
  std::uint64_t seed = 0;
  int restarts = 100;
  // Defaults to the witness matching `state`.
  std::optional<WitnessKind> witness;
  double epsilon = 0.0;
  double cap = 1.0;
  InequalityKind objective = InequalityKind::Mermin;
  std::size_t stages = 3;
  // Lower bound imposed on every earlier Charlie; defaults to the
  // inequality's biseparable bound.
  std::optional<double> constraint;
  std::size_t instances = 200;
  std::size_t samples = 10000;
};

// Bad command line or config file. The message names the offending key.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string usage();

// args excludes the program name; args[0] is the command. A `--config FILE`
// flag loads a flat JSON object whose keys are the long flag names; flags
// given on the command line override file values, and file values override
// `env_seed` (the SEQWIT_SEED environment variable).
RunConfig parse_config(std::span<const std::string> args,
                       std::optional<std::string> env_seed = std::nullopt);

// Applies a flat JSON config object on top of `base`.
RunConfig apply_config_text(RunConfig base, std::string_view json_text);

std::string command_name(Command c);
std::string state_name(StateKind s);
std::string witness_name(WitnessKind w);
std::string objective_name(InequalityKind k);

struct Report {
  std::string command;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  // nullopt marks the terminator row of a threshold table; such rows print
  // empty value and bound cells in CSV.
  std::vector<std::optional<double>> values;
  std::optional<double> bound;
  std::vector<bool> verdicts;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  nlohmann::ordered_json details;

  friend bool operator==(const Report&, const Report&) = default;
};

// %.12g
std::string format_number(double value);
// value rounded to 12 significant digits.
double quantize(double value);

std::string emit_report(const Report& report, OutputFormat format);
// Inverse of emit_report(..., OutputFormat::Json).
Report parse_report_json(std::string_view text);

}  // namespace seqwit
