// Acceptance suite runner: one line per criterion, exit 0 only if all pass.
#include <CLI11.hpp>
#include <iostream>

#include "wgqed/harness.hpp"

namespace h = wgqed::harness;

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  h::SuiteOptions opt;
  app.add_option("--only", opt.only, "criterion ids")->delimiter(',');
  app.add_flag("--stop-on-failure", opt.stop_on_failure);
  app.add_option("--seed", opt.seed);
  CLI11_PARSE(app, argc, argv);
  opt.on_result = [](const h::CriterionResult& r) { std::cout << h::format_result(r) << std::endl; };
  const auto results = h::run_suite(opt);
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed;
  std::cout << "summary " << passed << '/' << results.size() << " passed\n";
  return passed == results.size() ? h::kExitOk : h::kExitTolerance;
}
