#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "seqwit/report.hpp"
#include "seqwit/run.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env_seed;
  if (const char* s = std::getenv("SEQWIT_SEED")) env_seed = s;

  try {
    const seqwit::RunConfig cfg = seqwit::parse_config(args, env_seed);
    const seqwit::RunOutcome outcome = seqwit::run(cfg);
    std::cout << seqwit::emit_report(outcome.report, cfg.output_format);
    if (!outcome.diagnostics.empty()) std::cerr << outcome.diagnostics << '\n';
    return outcome.exit_code;
  } catch (const seqwit::UsageError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "seqwit: " << e.what() << '\n';
    return 3;
  }
}
