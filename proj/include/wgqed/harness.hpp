#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wgqed/krylovsim.hpp"
#include "wgqed/smatrix.hpp"
#include "wgqed/vertex.hpp"

namespace wgqed::harness {

enum class ExperimentKind {
  BoundEnergies,
  BoundProfile,
  Emission,
  OnePhotonRT,
  BoundToBound,
  FreeToBound,
  FreeToFree,
  Simulate,
  Compare,
};

// CLI / config spelling: bound-energies, bound-profile, emission,
// one-photon-rt, b2b, f2b, f2f, simulate, compare.
std::string kind_name(ExperimentKind kind);
ExperimentKind parse_kind(const std::string& name);
const std::vector<ExperimentKind>& all_kinds();

// What a simulate / compare experiment runs.
enum class Target { Emission, OnePhoton, BoundToBound, FreeToBound, FreeToFree };
std::string target_name(Target t);

struct ExperimentConfig {
  std::string id;  // INI section name
  ExperimentKind kind = ExperimentKind::BoundEnergies;
  Target target = Target::BoundToBound;
  ModelParams params;

  // bound-energies sweep
  std::vector<double> g_primes;
  double omega_min = -3.0, omega_max = 3.0;
  int omega_points = 61;
  // bound-profile
  long profile_sites = 40;
  // emission
  double t_max = 30.0;
  double t_step = 0.1;
  // one-photon-rt
  int k_points = 200;

  // Packet centres for b2b / f2b / f2f / one-photon runs; s and xc shared.
  std::vector<double> k0s;
  WavepacketSpec packet;
  Branch branch = Branch::Minus;
  int order = 1;
  QuadratureConfig qc;
  ShellGrids grids;
  sim::SimConfig sim;

  // compare: declared tolerance for the target's metric (see run_experiment).
  double tolerance = 0.02;
};

// Reads every section of an INI file. Each section is one experiment; keys
// are validated (type, range, known name) before anything is computed and
// errors name "section.key".
std::vector<ExperimentConfig> load_config(const std::filesystem::path& path);
std::vector<ExperimentConfig> parse_config(const std::string& text);
void validate(const ExperimentConfig& cfg);

struct CsvTable {
  std::string title;                 // what the numbers are
  std::vector<std::string> columns;  // "name [unit]"
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> provenance;
};

// %.17g numbers, '.' decimal point, '\n' line endings. Header lines start with
// '#': title, provenance key=value pairs, then the column names.
std::string format_csv(const CsvTable& table);
std::string format_number(double v);
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

struct ComparisonPoint {
  double x = 0.0;  // sample coordinate (k0, t, ...)
  std::string quantity;
  double analytic = 0.0;
  double simulated = 0.0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;
};

struct ComparisonReport {
  std::string id;
  std::string target;
  std::string metric;  // max_abs | max_ratio | correlation
  double value = 0.0;  // metric value
  double tolerance = 0.0;
  bool passed = false;
  std::vector<ComparisonPoint> points;
  std::vector<std::pair<std::string, std::string>> provenance;
};

std::string format_report(const ComparisonReport& report);

struct RunResult {
  std::vector<std::filesystem::path> files;
  std::optional<ComparisonReport> report;
};

// Runs one experiment and writes <out>/<id>.csv (and <id>.report for
// compare). On any error the files of this experiment are removed and the
// error is rethrown as ConfigError or NumericError with the section name
// prepended.
//
// Compare metrics: emission, one-photon and b2b use the largest absolute
// deviation (<= tolerance); f2b the largest ratio max(a/s, s/a) between the
// trapping rates (<= tolerance); f2f the intensity correlation (>= tolerance).
RunResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitTolerance = 4;

struct BatchResult {
  int exit_code = kExitOk;
  std::vector<std::string> messages;
};

// Runs experiments on up to `workers` threads. Exit code is the most severe
// one seen (config > numeric > tolerance).
BatchResult run_batch(const std::vector<ExperimentConfig>& configs, const std::filesystem::path& out_dir,
                      int workers);

// --- acceptance suite ---------------------------------------------------------

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured deviations vs pinned tolerances
  double seconds = 0.0;
};

struct SuiteOptions {
  // Criteria to run (empty = all), executed in suite order regardless.
  std::vector<int> only;
  bool stop_on_failure = false;
  std::uint64_t seed = 20240601;
  std::function<void(const CriterionResult&)> on_result;
};

// Suite order: closed forms and identities, then independent oracles, then the
// analytic-versus-simulation cross-checks:
//   3, 1, 4, 2, 6, 7, 5, 8, 9, 10, 11, 12.
const std::vector<int>& suite_order();
std::vector<CriterionResult> run_suite(const SuiteOptions& options);
CriterionResult run_criterion(int id, std::uint64_t seed);

// One machine-readable line: "criterion <id> PASS|FAIL <name> :: <detail>".
std::string format_result(const CriterionResult& r);

}  // namespace wgqed::harness
