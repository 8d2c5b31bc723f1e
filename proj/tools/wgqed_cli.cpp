#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "wgqed/errors.hpp"
#include "wgqed/harness.hpp"

namespace h = wgqed::harness;

namespace {

std::string default_out_dir() {
  if (const char* env = std::getenv("WGQED_OUT_DIR"); env && *env) return env;
  return "out";
}

struct Common {
  std::string config;
  std::string out = default_out_dir();
  int workers = 1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "INI experiment file")->required()->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "output directory (default $WGQED_OUT_DIR or ./out)");
  app->add_option("--workers", c.workers, "parallel experiments")->check(CLI::Range(1, 256));
}

// Runs the sections of the config; with a kind filter only those of that kind.
int run_configs(const Common& c, const h::ExperimentKind* only) {
  std::vector<h::ExperimentConfig> configs;
  try {
    for (auto& cfg : h::load_config(c.config))
      if (!only || cfg.kind == *only) configs.push_back(std::move(cfg));
  } catch (const wgqed::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return h::kExitConfig;
  }
  if (configs.empty()) {
    std::cerr << "config error: no experiment";
    if (only) std::cerr << " of kind " << h::kind_name(*only);
    std::cerr << " in " << c.config << '\n';
    return h::kExitConfig;
  }
  const auto res = h::run_batch(configs, c.out, c.workers);
  for (const auto& m : res.messages) std::cout << m << '\n';
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waveguide QED scattering: analytic S-matrix, lattice simulation, comparisons"};
  app.require_subcommand(1);
  std::uint64_t seed = h::SuiteOptions{}.seed;
  app.add_option("--seed", seed, "seed for randomised property checks (never physics)");

  Common run_opts;
  auto* run = app.add_subcommand("run", "run every experiment in a config file");
  add_common(run, run_opts);

  std::vector<std::pair<h::ExperimentKind, CLI::App*>> kind_cmds;
  std::vector<Common> kind_opts(h::all_kinds().size());
  for (std::size_t i = 0; i < h::all_kinds().size(); ++i) {
    const auto kind = h::all_kinds()[i];
    auto* sub = app.add_subcommand(h::kind_name(kind), "run the " + h::kind_name(kind) + " experiments of a config");
    add_common(sub, kind_opts[i]);
    kind_cmds.emplace_back(kind, sub);
  }

  std::vector<int> only;
  bool stop = false;
  auto* validate = app.add_subcommand("validate", "run the acceptance suite");
  validate->add_option("--only", only, "criterion ids")->delimiter(',');
  validate->add_flag("--stop-on-failure", stop, "stop at the first failing criterion");

  auto* check = app.add_subcommand("check-config", "parse and validate a config file without running it");
  std::string check_path;
  check->add_option("--config", check_path, "INI experiment file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : h::kExitConfig;
  }

  try {
    if (*run) return run_configs(run_opts, nullptr);
    for (std::size_t i = 0; i < kind_cmds.size(); ++i)
      if (*kind_cmds[i].second) return run_configs(kind_opts[i], &kind_cmds[i].first);
    if (*check) {
      const auto configs = h::load_config(check_path);
      for (const auto& c : configs) std::cout << c.id << ": " << h::kind_name(c.kind) << " ok\n";
      return h::kExitOk;
    }
    if (*validate) {
      h::SuiteOptions opt;
      opt.only = only;
      opt.stop_on_failure = stop;
      opt.seed = seed;
      opt.on_result = [](const h::CriterionResult& r) { std::cout << h::format_result(r) << std::endl; };
      const auto results = h::run_suite(opt);
      std::size_t passed = 0;
      for (const auto& r : results) passed += r.passed;
      std::cout << "summary " << passed << '/' << results.size() << " passed\n";
      return passed == results.size() ? h::kExitOk : h::kExitTolerance;
    }
  } catch (const wgqed::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return h::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return h::kExitNumeric;
  }
  return h::kExitOk;
}
