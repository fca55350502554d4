#include "seqwit/report.hpp"

#include <algorithm>
#include <array>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"

namespace seqwit {
namespace {

using ojson = nlohmann::ordered_json;

constexpr std::array<const char*, 14> kKeys{
    "state",   "lambdas",    "angles",    "format",     "seed",   "restarts",  "witness",
    "epsilon", "cap",        "objective", "stages",     "constraint", "instances", "samples",
};

bool known_key(std::string_view key) {
  return std::any_of(kKeys.begin(), kKeys.end(), [&](const char* k) { return key == k; });
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double number_from_text(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    throw UsageError(key + ": '" + text + "' is not a finite number");
  }
  return v;
}

double number_of(const std::string& key, const ojson& value) {
  if (value.is_number()) {
    const double v = value.get<double>();
    if (!std::isfinite(v)) throw UsageError(key + ": not a finite number");
    return v;
  }
  if (value.is_string()) return number_from_text(key, value.get<std::string>());
  throw UsageError(key + ": expected a number");
}

std::uint64_t unsigned_of(const std::string& key, const ojson& value) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (value.is_number_integer()) {
    if (value.get<std::int64_t>() < 0) throw UsageError(key + ": must be non-negative");
    return static_cast<std::uint64_t>(value.get<std::int64_t>());
  }
  if (value.is_string()) {
    const std::string t = trim(value.get<std::string>());
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw UsageError(key + ": '" + t + "' is not a non-negative integer");
    }
    errno = 0;
    const unsigned long long v = std::strtoull(t.c_str(), nullptr, 10);
    if (errno == ERANGE) throw UsageError(key + ": '" + t + "' is out of range");
    return v;
  }
  throw UsageError(key + ": expected a non-negative integer");
}

std::vector<double> list_of(const std::string& key, const ojson& value) {
  std::vector<double> out;
  if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      out.push_back(number_of(key + "[" + std::to_string(i) + "]", value[i]));
    }
    return out;
  }
  if (value.is_number()) return {number_of(key + "[0]", value)};
  if (!value.is_string()) throw UsageError(key + ": expected a comma-separated list of numbers");
  std::stringstream stream(value.get<std::string>());
  std::string item;
  while (std::getline(stream, item, ',')) {
    out.push_back(number_from_text(key + "[" + std::to_string(out.size()) + "]", item));
  }
  if (out.empty()) throw UsageError(key + ": empty list");
  return out;
}

std::string text_of(const std::string& key, const ojson& value) {
  if (!value.is_string()) throw UsageError(key + ": expected a string");
  return lower(trim(value.get<std::string>()));
}

StateKind state_of(const std::string& key, const ojson& value) {
  const std::string t = text_of(key, value);
  if (t == "ghz") return StateKind::GHZ;
  if (t == "w") return StateKind::W;
  throw UsageError(key + ": '" + t + "' is not one of ghz, w");
}

void apply_field(RunConfig& cfg, const std::string& key, const ojson& value) {
  if (key == "state") {
    cfg.state = state_of(key, value);
  } else if (key == "witness") {
    cfg.witness = state_of(key, value) == StateKind::W ? WitnessKind::W : WitnessKind::GHZ;
  } else if (key == "lambdas") {
    cfg.lambdas = list_of(key, value);
    for (std::size_t i = 0; i < cfg.lambdas.size(); ++i) {
      const double l = cfg.lambdas[i];
      if (!(l > 0.0 && l <= 1.0)) {
        throw UsageError("lambdas[" + std::to_string(i) + "] = " + format_number(l) +
                         " outside (0, 1]");
      }
    }
  } else if (key == "angles") {
    cfg.angles = list_of(key, value);
  } else if (key == "format") {
    const std::string t = text_of(key, value);
    if (t == "json") {
      cfg.output_format = OutputFormat::Json;
    } else if (t == "csv") {
      cfg.output_format = OutputFormat::Csv;
    } else {
      throw UsageError("format: '" + t + "' is not one of json, csv");
    }
  } else if (key == "seed") {
    cfg.seed = unsigned_of(key, value);
  } else if (key == "restarts") {
    const std::uint64_t r = unsigned_of(key, value);
    if (r < 1 || r > 100000) throw UsageError("restarts: must lie in [1, 100000]");
    cfg.restarts = static_cast<int>(r);
  } else if (key == "epsilon") {
    cfg.epsilon = number_of(key, value);
    if (cfg.epsilon < 0.0) throw UsageError("epsilon: must be non-negative");
  } else if (key == "cap") {
    cfg.cap = number_of(key, value);
    if (!(cfg.cap > 0.0 && cfg.cap <= 1.0)) throw UsageError("cap: must lie in (0, 1]");
  } else if (key == "objective") {
    const std::string t = text_of(key, value);
    if (t == "mermin") {
      cfg.objective = InequalityKind::Mermin;
    } else if (t == "uffink") {
      cfg.objective = InequalityKind::Uffink;
    } else {
      throw UsageError("objective: '" + t + "' is not one of mermin, uffink");
    }
  } else if (key == "stages") {
    const std::uint64_t s = unsigned_of(key, value);
    if (s < 1 || s > 16) throw UsageError("stages: must lie in [1, 16]");
    cfg.stages = s;
  } else if (key == "constraint") {
    cfg.constraint = number_of(key, value);
  } else if (key == "instances") {
    cfg.instances = unsigned_of(key, value);
    if (cfg.instances < 1) throw UsageError("instances: must be >= 1");
  } else if (key == "samples") {
    cfg.samples = unsigned_of(key, value);
    if (cfg.samples < 1) throw UsageError("samples: must be >= 1");
  } else {
    throw UsageError("unknown key '" + key + "'");
  }
}

std::optional<Command> command_from(std::string_view name) {
  constexpr std::array<std::pair<std::string_view, Command>, 7> kCommands{{
      {"mermin-chain", Command::MerminChain},
      {"uffink-chain", Command::UffinkChain},
      {"witness-chain", Command::WitnessChain},
      {"thresholds", Command::Thresholds},
      {"optimize", Command::Optimize},
      {"oracle-check", Command::OracleCheck},
      {"positivity-fuzz", Command::PositivityFuzz},
  }};
  for (const auto& [n, c] : kCommands) {
    if (n == name) return c;
  }
  return std::nullopt;
}

void validate_required(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::MerminChain:
    case Command::UffinkChain:
    case Command::WitnessChain:
      if (cfg.lambdas.empty()) throw UsageError("missing required field 'lambdas'");
      break;
    case Command::Thresholds:
      if (!cfg.witness) throw UsageError("missing required field 'witness'");
      break;
    default:
      break;
  }
  if (cfg.angles) {
    if (cfg.command != Command::MerminChain && cfg.command != Command::UffinkChain) {
      throw UsageError("angles: only accepted by mermin-chain and uffink-chain");
    }
    const std::size_t expected = 8 + 4 * cfg.lambdas.size();
    if (cfg.angles->size() != expected) {
      throw UsageError("angles: expected " + std::to_string(expected) + " values for " +
                       std::to_string(cfg.lambdas.size()) + " Charlies, got " +
                       std::to_string(cfg.angles->size()));
    }
    for (std::size_t i = 0; i < expected; ++i) {
      const double a = (*cfg.angles)[i];
      const bool is_theta = i % 2 == 0;
      const double upper = is_theta ? std::numbers::pi : 2.0 * std::numbers::pi;
      if (!(a >= 0.0 && a <= upper)) {
        throw UsageError("angles[" + std::to_string(i) + "] = " + format_number(a) +
                         (is_theta ? " outside [0, pi]" : " outside [0, 2 pi]"));
      }
    }
  }
}

ojson number_or_null(const std::optional<double>& v) {
  return v ? ojson(quantize(*v)) : ojson(nullptr);
}

}  // namespace

std::string usage() {
  return R"(usage: seqwit <command> [options]

commands:
  mermin-chain     Mermin value of every Charlie        (--lambdas required)
  uffink-chain     Uffink value of every Charlie        (--lambdas required)
  witness-chain    witness expectation of every Charlie (--lambdas required)
  thresholds       minimal sharpness chain of a witness (--witness required)
  optimize         constrained maximisation of the last Charlie's value
  oracle-check     averaged-channel vs branch-enumeration differential check
  positivity-fuzz  witness expectations on sampled biseparable states

options:
  --state ghz|w          initial state (default ghz)
  --lambdas L1,L2,...    sharpness of each Charlie, each in (0, 1]
  --angles A1,A2,...     explicit settings in radians: alice th0,ph0,th1,ph1,
                         bob th0,ph0,th1,ph1, then th0,ph0,th1,ph1 per Charlie
  --witness ghz|w        witness (default: matches --state)
  --epsilon E            thresholds: earlier Charlies at lambda_min + E
  --cap C                thresholds: sharpness cap (default 1)
  --objective mermin|uffink   optimize objective (default mermin)
  --stages N             optimize: number of Charlies (default 3)
  --constraint V         optimize: lower bound on earlier Charlies
                         (default: the inequality's bound)
  --restarts N           optimize restarts (default 100)
  --instances N          oracle-check instances (default 200)
  --samples N            positivity-fuzz samples per bipartition (default 10000)
  --seed S               RNG seed (default $SEQWIT_SEED, else 0)
  --format csv|json      output format (default csv)
  --config FILE          flat JSON object keyed by long flag names

exit status: 0 success, 2 usage error, 3 numerical diagnostic
)";
}

std::string command_name(Command c) {
  switch (c) {
    case Command::MerminChain: return "mermin-chain";
    case Command::UffinkChain: return "uffink-chain";
    case Command::WitnessChain: return "witness-chain";
    case Command::Thresholds: return "thresholds";
    case Command::Optimize: return "optimize";
    case Command::OracleCheck: return "oracle-check";
    case Command::PositivityFuzz: return "positivity-fuzz";
  }
  return "unknown";
}

std::string state_name(StateKind s) { return s == StateKind::GHZ ? "ghz" : "w"; }
std::string witness_name(WitnessKind w) { return w == WitnessKind::GHZ ? "ghz" : "w"; }
std::string objective_name(InequalityKind k) {
  return k == InequalityKind::Mermin ? "mermin" : "uffink";
}

RunConfig apply_config_text(RunConfig base, std::string_view json_text) {
  ojson doc;
  try {
    doc = ojson::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config: expected a flat JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!known_key(key)) throw UsageError("config: unknown key '" + key + "'");
    apply_field(base, key, value);
  }
  return base;
}

RunConfig parse_config(std::span<const std::string> args, std::optional<std::string> env_seed) {
  if (args.empty()) throw UsageError(usage());
  const std::string& name = args.front();
  if (name == "-h" || name == "--help") throw UsageError(usage());
  const auto command = command_from(name);
  if (!command) throw UsageError("unknown command '" + name + "'\n\n" + usage());

  RunConfig cfg;
  cfg.command = *command;
  if (env_seed && !trim(*env_seed).empty()) {
    apply_field(cfg, "seed", ojson(*env_seed));
  }

  CLI::App app{"seqwit"};
  std::vector<std::string> values(kKeys.size());
  for (std::size_t i = 0; i < kKeys.size(); ++i) {
    app.add_option(std::string("--") + kKeys[i], values[i]);
  }
  std::string config_path;
  app.add_option("--config", config_path);

  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (app.count("--config") > 0) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("config: cannot read '" + config_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    cfg = apply_config_text(cfg, buffer.str());
  }
  for (std::size_t i = 0; i < kKeys.size(); ++i) {
    if (app.count(std::string("--") + kKeys[i]) > 0) apply_field(cfg, kKeys[i], ojson(values[i]));
  }
  validate_required(cfg);
  return cfg;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double quantize(double value) {
  if (!std::isfinite(value)) return value;
  return std::strtod(format_number(value).c_str(), nullptr);
}

std::string emit_report(const Report& report, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    std::string out = "stage,value,bound,violated\n";
    for (std::size_t i = 0; i < report.values.size(); ++i) {
      out += std::to_string(i + 1);
      out += ',';
      if (report.values[i]) {
        out += format_number(*report.values[i]);
        out += ',';
        if (report.bound) out += format_number(*report.bound);
      } else {
        out += ',';
      }
      out += ',';
      out += i < report.verdicts.size() && report.verdicts[i] ? "true" : "false";
      out += '\n';
    }
    return out;
  }

  ojson doc = ojson::object();
  doc["command"] = report.command;
  doc["inputs"] = report.inputs;
  ojson values = ojson::array();
  for (const auto& v : report.values) values.push_back(number_or_null(v));
  doc["values"] = values;
  doc["bound"] = number_or_null(report.bound);
  ojson verdicts = ojson::array();
  for (bool v : report.verdicts) verdicts.push_back(v);
  doc["verdicts"] = verdicts;
  doc["meta"] = ojson{{"seed", report.seed}, {"version", report.version}};
  if (!report.details.is_null()) doc["details"] = report.details;
  return doc.dump(2) + "\n";
}

Report parse_report_json(std::string_view text) {
  const ojson doc = ojson::parse(text);
  Report r;
  r.command = doc.at("command").get<std::string>();
  r.inputs = doc.at("inputs");
  for (const auto& v : doc.at("values")) {
    r.values.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
  }
  const auto& bound = doc.at("bound");
  r.bound = bound.is_null() ? std::nullopt : std::optional<double>(bound.get<double>());
  for (const auto& v : doc.at("verdicts")) r.verdicts.push_back(v.get<bool>());
  r.seed = doc.at("meta").at("seed").get<std::uint64_t>();
  r.version = doc.at("meta").at("version").get<std::string>();
  if (doc.contains("details")) r.details = doc.at("details");
  return r;
}

}  // namespace seqwit
