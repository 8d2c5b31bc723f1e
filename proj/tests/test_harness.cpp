#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wgqed/errors.hpp"
#include "wgqed/experiments.hpp"
#include "wgqed/harness.hpp"

using namespace wgqed;
using namespace wgqed::harness;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto d = std::filesystem::temp_directory_path() / ("wgqed_test_" + name);
  std::filesystem::remove_all(d);
  return d;
}

std::string config_key_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("config parsing") {
  const auto cfgs = parse_config(
      "[b2b_weak]\nkind = b2b\ng_prime = 0.5\nk0 = pi/6, pi/2, 2pi/3\ns = 12\norder = 1\neta = 1e-6\n");
  REQUIRE(cfgs.size() == 1);
  CHECK(cfgs[0].id == "b2b_weak");
  CHECK(cfgs[0].kind == ExperimentKind::BoundToBound);
  REQUIRE(cfgs[0].k0s.size() == 3);
  CHECK(cfgs[0].k0s[2] == doctest::Approx(2 * kPi / 3));
  CHECK(cfgs[0].qc.eta == 1e-6);
}

TEST_CASE("config errors name the offending key") {
  CHECK(config_key_error("[a]\nkind = b2b\ng_prime = 0.5\nk0 = pi/2\ns = 0.2\n") == "a.s");
  CHECK(config_key_error("[a]\nkind = emission\ng_prime = 2\ncolour = red\n") == "a.colour");
  CHECK(config_key_error("[a]\nkind = emission\ng_prime = two\n") == "a.g_prime");
  CHECK(config_key_error("[a]\nkind = nonsense\n") == "a.kind");
  CHECK(config_key_error("[a]\nkind = b2b\ng_prime = 0.5\nOmega = 0.3\nk0 = 1\n") == "a.Omega");
  CHECK(config_key_error("[a]\nkind = f2f\ng_prime = 0.5\nk0 = 1, 2\n") == "a.k0");
  CHECK(config_key_error("kind = emission\n") != "");
  CHECK(config_key_error("") == "config");
}

TEST_CASE("number formatting round-trips doubles") {
  for (double v : {0.1, 1.0 / 3.0, -2.5440392990281379, 1e-300}) CHECK(std::stod(format_number(v)) == v);
  CHECK(format_number(0.5) == "0.5");
}

TEST_CASE("csv layout") {
  CsvTable t{"title", {"a [1]", "b"}, {{1.0, 2.0}}, {{"eta", "1e-06"}}};
  CHECK(format_csv(t) == "# title\n# eta=1e-06\na [1],b\n1,2\n");
}

TEST_CASE("experiment outputs are deterministic") {
  const auto cfgs = parse_config(
      "[energies]\nkind = bound-energies\ng_primes = 1, 2\nomega_points = 7\n"
      "[profile]\nkind = bound-profile\ng_prime = 0.5\nprofile_sites = 10\n");
  const auto d1 = scratch_dir("det1"), d2 = scratch_dir("det2");
  const auto r1 = run_batch(cfgs, d1, 2);
  const auto r2 = run_batch(cfgs, d2, 1);
  CHECK(r1.exit_code == kExitOk);
  CHECK(r2.exit_code == kExitOk);
  for (const char* f : {"energies.csv", "profile.csv"}) {
    const auto a = slurp(d1 / f);
    CHECK(!a.empty());
    CHECK(a == slurp(d2 / f));
  }
  std::filesystem::remove_all(d1);
  std::filesystem::remove_all(d2);
}

TEST_CASE("provenance is embedded in the csv") {
  const auto cfgs = parse_config("[b]\nkind = b2b\ng_prime = 0.5\nk0 = pi/2\neta = 1e-5\norder = 1\n");
  const auto d = scratch_dir("prov");
  run_experiment(cfgs[0], d);
  const auto text = slurp(d / "b.csv");
  CHECK(text.find("# eta=1.0000000000000001e-05") != std::string::npos);
  CHECK(text.find("# order=1") != std::string::npos);
  std::filesystem::remove_all(d);
}

TEST_CASE("failed experiments leave no output and report their section") {
  // Valid config, but the shell grid cannot reach the requested accuracy.
  const auto cfgs = parse_config(
      "[bad]\nkind = f2b\ng_prime = 0.5\nk0 = pi/2\nn_p = 4\nn_delta = 4\nshell_rel_tol = 1e-12\nshell_refinements = 0\n");
  const auto d = scratch_dir("fail");
  bool threw = false;
  try {
    run_experiment(cfgs[0], d);
  } catch (const std::exception& e) {
    threw = true;
    CHECK(std::string(e.what()).find("bad") != std::string::npos);
  }
  CHECK(threw);
  CHECK(!std::filesystem::exists(d / "bad.csv"));
  CHECK(run_batch(cfgs, d, 1).exit_code == kExitNumeric);
  std::filesystem::remove_all(d);
}

TEST_CASE("compare reports a tolerance failure") {
  const auto cfgs = parse_config(
      "[em]\nkind = compare\ntarget = emission\ng_prime = 2\nt_max = 5\nt_step = 0.5\ntolerance = 1e-30\n");
  const auto d = scratch_dir("cmp");
  const auto r = run_batch(cfgs, d, 1);
  CHECK(r.exit_code == kExitTolerance);
  CHECK(std::filesystem::exists(d / "em.report"));
  std::filesystem::remove_all(d);
}

TEST_CASE("intensity correlation") {
  CHECK(experiments::intensity_correlation({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
  CHECK(experiments::intensity_correlation({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
}

TEST_CASE("suite order and result format") {
  CHECK(suite_order().front() == 3);
  CHECK(suite_order().size() == 12);
  const auto r = run_criterion(1, 1);
  CHECK(r.passed);
  CHECK(format_result(r).rfind("criterion 1 PASS", 0) == 0);
}
