#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "seqwit/report.hpp"
#include "seqwit/run.hpp"

using namespace seqwit;

namespace {

RunConfig parse(std::vector<std::string> args, std::optional<std::string> env = std::nullopt) {
  return parse_config(args, env);
}

std::string usage_message(std::vector<std::string> args) {
  try {
    parse(std::move(args));
  } catch (const UsageError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(ParseConfig, MerminChainExample) {
  const RunConfig c = parse({"mermin-chain", "--state", "ghz", "--lambdas", "0.74,1.0"});
  EXPECT_EQ(c.command, Command::MerminChain);
  EXPECT_EQ(c.state, StateKind::GHZ);
  EXPECT_EQ(c.lambdas, (std::vector<double>{0.74, 1.0}));
  EXPECT_EQ(c.output_format, OutputFormat::Csv);
}

TEST(ParseConfig, ErrorsNameTheKey) {
  EXPECT_NE(usage_message({"mermin-chain", "--lambdas", "1.2"}).find("lambdas[0]"), std::string::npos);
  EXPECT_NE(usage_message({"mermin-chain", "--lambdas", "0.5,0"}).find("lambdas[1]"),
            std::string::npos);
  EXPECT_NE(usage_message({"mermin-chain"}).find("lambdas"), std::string::npos);
  EXPECT_NE(usage_message({"thresholds"}).find("witness"), std::string::npos);
  EXPECT_NE(usage_message({"mermin-chain", "--lambdas", "1", "--bogus", "2"}).find("--bogus"),
            std::string::npos);
  EXPECT_NE(usage_message({"uffink-chain", "--lambdas", "1", "--angles", "1,2"}).find("angles"),
            std::string::npos);
  EXPECT_NE(usage_message({"frobnicate"}).find("frobnicate"), std::string::npos);
}

TEST(ParseConfig, EmptyArgumentsGiveUsage) {
  EXPECT_NE(usage_message({}).find("usage:"), std::string::npos);
}

TEST(ParseConfig, SeedPrecedence) {
  EXPECT_EQ(parse({"oracle-check"}).seed, 0u);
  EXPECT_EQ(parse({"oracle-check"}, "17").seed, 17u);
  EXPECT_EQ(parse({"oracle-check", "--seed", "5"}, "17").seed, 5u);
  const RunConfig from_file = apply_config_text(parse({"oracle-check"}, "17"), R"({"seed": 9})");
  EXPECT_EQ(from_file.seed, 9u);
}

TEST(ParseConfig, ConfigFileWithFlagOverride) {
  const std::string path = testing::TempDir() + "seqwit_cfg.json";
  {
    std::ofstream out(path);
    out << R"({"lambdas": [0.74, 1.0], "state": "ghz", "format": "json", "seed": 3})";
  }
  const RunConfig c = parse({"uffink-chain", "--config", path, "--seed", "4"});
  EXPECT_EQ(c.lambdas, (std::vector<double>{0.74, 1.0}));
  EXPECT_EQ(c.output_format, OutputFormat::Json);
  EXPECT_EQ(c.seed, 4u);
  std::remove(path.c_str());
}

TEST(ParseConfig, ConfigRejectsUnknownKeys) {
  EXPECT_THROW(apply_config_text(RunConfig{}, R"({"lamdas": [0.5]})"), UsageError);
  EXPECT_THROW(apply_config_text(RunConfig{}, R"([1, 2])"), UsageError);
  EXPECT_THROW(apply_config_text(RunConfig{}, R"({"lambdas": [2.0]})"), UsageError);
}

TEST(Emit, CsvLayout) {
  const RunConfig c = parse({"mermin-chain", "--lambdas", "0.74,1.0"});
  const std::string csv = emit_report(run(c).report, OutputFormat::Csv);
  EXPECT_EQ(csv.rfind("stage,value,bound,violated\n1,2.96,2.82842712475,true\n2,3.3452137", 0), 0u);
}

TEST(Emit, ThresholdTerminatorRow) {
  const RunConfig c = parse({"thresholds", "--witness", "ghz"});
  const std::string csv = emit_report(run(c).report, OutputFormat::Csv);
  EXPECT_NE(csv.find("\n12,0.795"), std::string::npos);
  EXPECT_NE(csv.find(",1,true\n13,,,false\n"), std::string::npos);
}

TEST(Emit, JsonFieldOrderAndRoundTrip) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"mermin-chain", "--lambdas", "0.74,1.0"},
           {"thresholds", "--witness", "w"},
           {"witness-chain", "--state", "w", "--lambdas", "0.6,0.7"},
           {"oracle-check", "--instances", "5", "--seed", "2"}}) {
    const RunConfig c = parse(args);
    const Report r = run(c).report;
    const std::string json = emit_report(r, OutputFormat::Json);
    EXPECT_LT(json.find("\"command\""), json.find("\"inputs\""));
    EXPECT_LT(json.find("\"inputs\""), json.find("\"values\""));
    EXPECT_LT(json.find("\"values\""), json.find("\"bound\""));
    EXPECT_LT(json.find("\"bound\""), json.find("\"verdicts\""));
    EXPECT_LT(json.find("\"verdicts\""), json.find("\"meta\""));
    EXPECT_EQ(parse_report_json(json), r);
  }
}

TEST(Emit, IdenticalConfigGivesIdenticalBytes) {
  const RunConfig c = parse({"positivity-fuzz", "--samples", "50", "--seed", "11"});
  EXPECT_EQ(emit_report(run(c).report, OutputFormat::Json),
            emit_report(run(c).report, OutputFormat::Json));
}

TEST(Emit, NumbersCarryTwelveSignificantDigits) {
  EXPECT_EQ(format_number(2.8284271247461903), "2.82842712475");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(quantize(1.0 / 3), 0.333333333333);
}

TEST(Run, WitnessChainDefaultsToMatchingWitness) {
  const Report r = run(parse({"witness-chain", "--state", "ghz", "--lambdas", "0.6"})).report;
  EXPECT_EQ(r.inputs["witness"], "ghz");
  ASSERT_TRUE(r.values[0].has_value());
  EXPECT_NEAR(*r.values[0], -0.2, 1e-12);
  EXPECT_TRUE(r.verdicts[0]);
}

TEST(Run, ExplicitAnglesReproduceSymmetricPlan) {
  const std::string sym = "1.5707963267948966,1.5707963267948966,1.5707963267948966,0";
  const std::string angles = sym + "," + sym + "," + sym;
  const Report a = run(parse({"mermin-chain", "--lambdas", "0.74", "--angles", angles})).report;
  const Report b = run(parse({"mermin-chain", "--lambdas", "0.74"})).report;
  EXPECT_EQ(a.values, b.values);
}
