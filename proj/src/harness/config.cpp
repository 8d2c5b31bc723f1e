#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "wgqed/errors.hpp"
#include "wgqed/harness.hpp"

namespace wgqed::harness {

namespace {

const std::vector<std::pair<ExperimentKind, std::string>>& kind_table() {
  static const std::vector<std::pair<ExperimentKind, std::string>> t{
      {ExperimentKind::BoundEnergies, "bound-energies"}, {ExperimentKind::BoundProfile, "bound-profile"},
      {ExperimentKind::Emission, "emission"},            {ExperimentKind::OnePhotonRT, "one-photon-rt"},
      {ExperimentKind::BoundToBound, "b2b"},             {ExperimentKind::FreeToBound, "f2b"},
      {ExperimentKind::FreeToFree, "f2f"},               {ExperimentKind::Simulate, "simulate"},
      {ExperimentKind::Compare, "compare"}};
  return t;
}

const std::vector<std::pair<Target, std::string>>& target_table() {
  static const std::vector<std::pair<Target, std::string>> t{{Target::Emission, "emission"},
                                                             {Target::OnePhoton, "one-photon"},
                                                             {Target::BoundToBound, "b2b"},
                                                             {Target::FreeToBound, "f2b"},
                                                             {Target::FreeToFree, "f2f"}};
  return t;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> k{
      "kind",          "target",         "J",           "Omega",        "g_prime",      "g_primes",
      "omega_min",     "omega_max",      "omega_points", "profile_sites", "t_max",       "t_step",
      "k_points",      "k0",             "s",           "xc",           "branch",       "order",
      "eta",           "rel_tol",        "abs_tol",     "max_depth",    "principal_value",
      "n_out",         "n_p",            "n_delta",     "shell_rel_tol", "shell_refinements", "sim_dt",      "sim_krylov_dim",
      "sim_step_tol",  "sim_flux_threshold", "sim_quiet_time", "sim_sample_every", "tolerance"};
  return k;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_plain(const std::string& s, double& v) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [p, ec] = std::from_chars(first, last, v);
  return ec == std::errc() && p == last;
}

// A number, optionally times pi: "0.5", "pi", "2pi", "2*pi/5", "pi/6".
bool parse_value(const std::string& raw, double& v) {
  const std::string s = trim(raw);
  const auto pi = s.find("pi");
  if (pi == std::string::npos) return parse_plain(s, v);
  std::string head = trim(s.substr(0, pi));
  std::string tail = trim(s.substr(pi + 2));
  if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
  double a = 1.0, b = 1.0;
  if (head == "-") a = -1.0;
  else if (!head.empty() && !parse_plain(head, a)) return false;
  if (!tail.empty()) {
    if (tail[0] != '/' || !parse_plain(trim(tail.substr(1)), b) || b == 0.0) return false;
  }
  v = a * kPi / b;
  return std::isfinite(v);
}

struct Section {
  std::string name;
  const boost::property_tree::ptree& tree;

  bool has(const std::string& key) const { return tree.find(key) != tree.not_found(); }
  std::string raw(const std::string& key) const { return tree.find(key)->second.data(); }
  std::string path(const std::string& key) const { return name + "." + key; }

  double number(const std::string& key, double def) const {
    if (!has(key)) return def;
    double v = 0.0;
    if (!parse_value(raw(key), v)) throw ConfigError(path(key), "expected a number, got '" + raw(key) + "'");
    return v;
  }
  long integer(const std::string& key, long def) const {
    if (!has(key)) return def;
    const std::string s = trim(raw(key));
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
      throw ConfigError(path(key), "expected an integer, got '" + s + "'");
    return v;
  }
  std::vector<double> list(const std::string& key, std::vector<double> def) const {
    if (!has(key)) return def;
    std::vector<double> out;
    std::stringstream ss(raw(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      double v = 0.0;
      if (!parse_value(item, v)) throw ConfigError(path(key), "bad list entry '" + trim(item) + "'");
      out.push_back(v);
    }
    if (out.empty()) throw ConfigError(path(key), "empty list");
    return out;
  }
  bool flag(const std::string& key, bool def) const {
    if (!has(key)) return def;
    const std::string s = trim(raw(key));
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError(path(key), "expected true or false, got '" + s + "'");
  }
};

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

ExperimentConfig parse_section(const std::string& name, const boost::property_tree::ptree& tree) {
  const Section sec{name, tree};
  for (const auto& [key, child] : tree) {
    if (!child.empty()) throw ConfigError(sec.path(key), "nested keys are not supported");
    if (!known_keys().count(key)) throw ConfigError(sec.path(key), "unknown key");
  }
  ExperimentConfig c;
  c.id = name;
  require(sec.has("kind"), sec.path("kind"), "missing");
  try {
    c.kind = parse_kind(trim(sec.raw("kind")));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(sec.path("kind"), e.what());
  }
  if (sec.has("target")) {
    const std::string t = trim(sec.raw("target"));
    const auto& tt = target_table();
    const auto it = std::find_if(tt.begin(), tt.end(), [&](const auto& p) { return p.second == t; });
    require(it != tt.end(), sec.path("target"), "unknown target '" + t + "'");
    c.target = it->first;
  } else {
    require(c.kind != ExperimentKind::Simulate && c.kind != ExperimentKind::Compare, sec.path("target"),
            "missing");
  }

  const double J = sec.number("J", 1.0);
  const double Omega = sec.number("Omega", 0.0);
  const double gp = sec.number("g_prime", 0.5);
  require(J > 0, sec.path("J"), "must be positive");
  require(gp >= 0, sec.path("g_prime"), "must be non-negative");
  c.params = ModelParams(J, Omega, gp);

  c.g_primes = sec.list("g_primes", {gp});
  for (double g : c.g_primes) require(g > 0, sec.path("g_primes"), "entries must be positive");
  c.omega_min = sec.number("omega_min", c.omega_min);
  c.omega_max = sec.number("omega_max", c.omega_max);
  c.omega_points = static_cast<int>(sec.integer("omega_points", c.omega_points));
  require(c.omega_max >= c.omega_min, sec.path("omega_max"), "must not be below omega_min");
  require(c.omega_points >= 1 && c.omega_points <= 100000, sec.path("omega_points"), "out of range");
  c.profile_sites = sec.integer("profile_sites", c.profile_sites);
  require(c.profile_sites >= 1 && c.profile_sites <= 100000, sec.path("profile_sites"), "out of range");
  c.t_max = sec.number("t_max", c.t_max);
  c.t_step = sec.number("t_step", c.t_step);
  require(c.t_max > 0, sec.path("t_max"), "must be positive");
  require(c.t_step > 0 && c.t_step <= c.t_max, sec.path("t_step"), "must be in (0, t_max]");
  c.k_points = static_cast<int>(sec.integer("k_points", c.k_points));
  require(c.k_points >= 2 && c.k_points <= 1000000, sec.path("k_points"), "out of range");

  c.k0s = sec.list("k0", {kPi / 2});
  c.packet.s = sec.number("s", 12.0);
  c.packet.xc = sec.number("xc", 0.0);
  require(c.packet.s > 0, sec.path("s"), "must be positive");
  for (double k0 : c.k0s) {
    require(k0 > -kPi && k0 < kPi, sec.path("k0"), "entries must lie in (-pi, pi)");
    WavepacketSpec w = c.packet;
    w.k0 = k0;
    // The packet only fails validation through its width.
    try {
      w.validate();
    } catch (const NumericError& e) {
      throw ConfigError(sec.path("s"), e.what());
    }
  }
  c.packet.k0 = c.k0s.front();

  if (sec.has("branch")) {
    const std::string b = trim(sec.raw("branch"));
    require(b == "plus" || b == "minus", sec.path("branch"), "expected plus or minus");
    c.branch = b == "plus" ? Branch::Plus : Branch::Minus;
  }
  c.order = static_cast<int>(sec.integer("order", c.order));
  require(c.order >= 0 && c.order <= 6, sec.path("order"), "must be in [0, 6]");

  c.qc.eta = sec.number("eta", c.qc.eta);
  c.qc.rel_tol = sec.number("rel_tol", c.qc.rel_tol);
  c.qc.abs_tol = sec.number("abs_tol", c.qc.abs_tol);
  c.qc.max_depth = static_cast<int>(sec.integer("max_depth", c.qc.max_depth));
  c.qc.principal_value = sec.flag("principal_value", c.qc.principal_value);
  require(c.qc.eta > 0, sec.path("eta"), "must be positive");
  require(c.qc.rel_tol > 0, sec.path("rel_tol"), "must be positive");
  require(c.qc.abs_tol > 0, sec.path("abs_tol"), "must be positive");
  require(c.qc.max_depth >= 1 && c.qc.max_depth <= 200, sec.path("max_depth"), "must be in [1, 200]");

  c.grids.n_out = static_cast<int>(sec.integer("n_out", c.grids.n_out));
  c.grids.n_p = static_cast<int>(sec.integer("n_p", c.grids.n_p));
  c.grids.n_delta = static_cast<int>(sec.integer("n_delta", c.grids.n_delta));
  c.grids.rel_tol = sec.number("shell_rel_tol", c.grids.rel_tol);
  require(c.grids.n_out >= 2 && c.grids.n_out % 2 == 0, sec.path("n_out"), "must be even and >= 2");
  require(c.grids.n_p >= 4, sec.path("n_p"), "must be at least 4");
  require(c.grids.n_delta >= 4, sec.path("n_delta"), "must be at least 4");
  require(c.grids.rel_tol > 0, sec.path("shell_rel_tol"), "must be positive");
  c.grids.max_refinements = static_cast<int>(sec.integer("shell_refinements", c.grids.max_refinements));
  require(c.grids.max_refinements >= 0 && c.grids.max_refinements <= 6, sec.path("shell_refinements"),
          "must be in [0, 6]");

  c.sim.dt = sec.number("sim_dt", c.sim.dt);
  c.sim.krylov_dim = static_cast<int>(sec.integer("sim_krylov_dim", c.sim.krylov_dim));
  c.sim.step_tol = sec.number("sim_step_tol", c.sim.step_tol);
  c.sim.flux_threshold = sec.number("sim_flux_threshold", c.sim.flux_threshold);
  c.sim.quiet_time = sec.number("sim_quiet_time", c.sim.quiet_time);
  c.sim.sample_every = sec.number("sim_sample_every", c.sim.sample_every);
  try {
    c.sim.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(name + "." + std::string("sim_") + e.key().substr(4), e.what());
  }

  c.tolerance = sec.number("tolerance", c.tolerance);
  require(c.tolerance > 0, sec.path("tolerance"), "must be positive");
  validate(c);
  return c;
}

}  // namespace

std::string kind_name(ExperimentKind kind) {
  for (const auto& [k, n] : kind_table())
    if (k == kind) return n;
  return "unknown";
}

ExperimentKind parse_kind(const std::string& name) {
  for (const auto& [k, n] : kind_table())
    if (n == name) return k;
  throw std::invalid_argument("unknown experiment kind '" + name + "'");
}

const std::vector<ExperimentKind>& all_kinds() {
  static const std::vector<ExperimentKind> v = [] {
    std::vector<ExperimentKind> out;
    for (const auto& [k, n] : kind_table()) out.push_back(k);
    return out;
  }();
  return v;
}

std::string target_name(Target t) {
  for (const auto& [k, n] : target_table())
    if (k == t) return n;
  return "unknown";
}

void validate(const ExperimentConfig& c) {
  const std::string p = c.id + ".";
  const bool zero_omega_needed =
      c.kind == ExperimentKind::Emission || c.kind == ExperimentKind::BoundToBound ||
      c.kind == ExperimentKind::FreeToBound || c.kind == ExperimentKind::FreeToFree ||
      ((c.kind == ExperimentKind::Simulate || c.kind == ExperimentKind::Compare) &&
       c.target != Target::OnePhoton);
  if (zero_omega_needed && c.params.Omega() != 0.0) throw ConfigError(p + "Omega", "this experiment needs Omega = 0");
  const bool needs_coupling = c.kind == ExperimentKind::BoundProfile || c.kind == ExperimentKind::BoundToBound ||
                              c.kind == ExperimentKind::FreeToBound ||
                              ((c.kind == ExperimentKind::Simulate || c.kind == ExperimentKind::Compare) &&
                               (c.target == Target::BoundToBound || c.target == Target::FreeToBound));
  if (needs_coupling && !(c.params.g_prime() > 0)) throw ConfigError(p + "g_prime", "must be positive here");
  if (c.kind == ExperimentKind::FreeToFree && c.k0s.size() != 1)
    throw ConfigError(p + "k0", "f2f takes a single packet centre");
}

std::vector<ExperimentConfig> parse_config(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()), e.message());
  }
  std::vector<ExperimentConfig> out;
  for (const auto& [name, section] : tree) {
    if (!section.data().empty()) throw ConfigError(name, "keys must live inside an [experiment] section");
    if (section.empty()) throw ConfigError(name, "empty experiment section");
    out.push_back(parse_section(name, section));
  }
  if (out.empty()) throw ConfigError("config", "no experiments defined");
  return out;
}

std::vector<ExperimentConfig> load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace wgqed::harness
