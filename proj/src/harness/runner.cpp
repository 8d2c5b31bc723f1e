#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "wgqed/emission.hpp"
#include "wgqed/errors.hpp"
#include "wgqed/experiments.hpp"
#include "wgqed/harness.hpp"

namespace wgqed::harness {

namespace {

using Provenance = std::vector<std::pair<std::string, std::string>>;

Provenance model_provenance(const ExperimentConfig& c) {
  return {{"experiment", c.id},
          {"kind", kind_name(c.kind)},
          {"J", format_number(c.params.J())},
          {"Omega", format_number(c.params.Omega())},
          {"g_prime", format_number(c.params.g_prime())}};
}

void add_quadrature(Provenance& p, const ExperimentConfig& c) {
  p.emplace_back("order", std::to_string(c.order));
  p.emplace_back("eta", format_number(c.qc.eta));
  p.emplace_back("rel_tol", format_number(c.qc.rel_tol));
  p.emplace_back("abs_tol", format_number(c.qc.abs_tol));
  p.emplace_back("principal_value", c.qc.principal_value ? "true" : "false");
}

void add_packet(Provenance& p, const ExperimentConfig& c) {
  p.emplace_back("s", format_number(c.packet.s));
  p.emplace_back("xc", format_number(c.packet.xc));
}

void add_grids(Provenance& p, const ExperimentConfig& c) {
  p.emplace_back("n_out", std::to_string(c.grids.n_out));
  p.emplace_back("n_p", std::to_string(c.grids.n_p));
  p.emplace_back("n_delta", std::to_string(c.grids.n_delta));
  p.emplace_back("shell_rel_tol", format_number(c.grids.rel_tol));
  p.emplace_back("shell_refinements", std::to_string(c.grids.max_refinements));
}

// N varies per run and goes into the table rows; the rest is shared.
void add_sim(Provenance& p, const ExperimentConfig& c) {
  p.emplace_back("dt", format_number(c.sim.dt));
  p.emplace_back("krylov_dim", std::to_string(c.sim.krylov_dim));
  p.emplace_back("step_tol", format_number(c.sim.step_tol));
  p.emplace_back("completion_threshold", format_number(c.sim.flux_threshold));
  p.emplace_back("quiet_time", format_number(c.sim.quiet_time));
}

WavepacketSpec packet_at(const ExperimentConfig& c, double k0) {
  WavepacketSpec w = c.packet;
  w.k0 = k0;
  return w;
}

std::vector<double> time_grid(const ExperimentConfig& c) {
  std::vector<double> t;
  const long n = static_cast<long>(std::floor(c.t_max / c.t_step + 1e-9));
  for (long i = 0; i <= n; ++i) t.push_back(static_cast<double>(i) * c.t_step);
  return t;
}

CsvTable bound_energies(const ExperimentConfig& c) {
  CsvTable t{"bound-state energies and qubit weights versus qubit splitting",
             {"g_prime", "Omega [J]", "omega_plus [J]", "omega_minus [J]", "p_b_plus", "p_b_minus"},
             {},
             model_provenance(c)};
  for (double g : c.g_primes)
    for (int i = 0; i < c.omega_points; ++i) {
      const double Om = c.omega_points == 1 ? c.omega_min
                                            : c.omega_min + (c.omega_max - c.omega_min) * i / (c.omega_points - 1);
      const ModelParams p(c.params.J(), Om, g);
      const auto [wp, wm] = bound_state_energies(p);
      t.rows.push_back({g, Om, wp, wm, bound_residue(p, Branch::Plus), bound_residue(p, Branch::Minus)});
    }
  return t;
}

CsvTable bound_profile(const ExperimentConfig& c) {
  CsvTable t{"photonic amplitude of the bound states along the waveguide",
             {"x [sites]", "phi_plus", "phi_minus"},
             {},
             model_provenance(c)};
  const auto bp = make_bound_state(c.params, Branch::Plus);
  const auto bm = make_bound_state(c.params, Branch::Minus);
  for (long x = -c.profile_sites; x <= c.profile_sites; ++x)
    t.rows.push_back({static_cast<double>(x), bound_amplitude_x(bp, x), bound_amplitude_x(bm, x)});
  return t;
}

CsvTable emission(const ExperimentConfig& c) {
  CsvTable t{"survival amplitude of an initially excited qubit",
             {"t [1/J]", "re_e", "im_e", "abs2_e"},
             {},
             model_provenance(c)};
  for (double tt : time_grid(c)) {
    const cplx e = survival_amplitude(c.params, tt);
    t.rows.push_back({tt, e.real(), e.imag(), std::norm(e)});
  }
  return t;
}

CsvTable one_photon_rt(const ExperimentConfig& c) {
  CsvTable t{"single-photon reflection and transmission amplitudes",
             {"k [1/site]", "re_r", "im_r", "re_t", "im_t", "R", "T"},
             {},
             model_provenance(c)};
  for (int i = 0; i < c.k_points; ++i) {
    const double k = -kPi + (i + 0.5) * 2.0 * kPi / c.k_points;
    if (std::abs(std::sin(k)) < 1e-12) continue;
    const auto rt = one_photon_rt(c.params, k);
    t.rows.push_back({k, rt.r.real(), rt.r.imag(), rt.t.real(), rt.t.imag(), std::norm(rt.r), std::norm(rt.t)});
  }
  return t;
}

CsvTable b2b(const ExperimentConfig& c) {
  auto prov = model_provenance(c);
  add_quadrature(prov, c);
  add_packet(prov, c);
  prov.emplace_back("branch", c.branch == Branch::Plus ? "plus" : "minus");
  CsvTable t{"packet-averaged reflection and transmission of a photon off the bound state",
             {"k0 [1/site]", "R", "T", "one_minus_R_minus_T"},
             {},
             prov};
  for (double k0 : c.k0s) {
    const auto rt = bound_to_bound_packet(c.params, packet_at(c, k0), c.branch, c.order, c.qc);
    t.rows.push_back({k0, rt.R, rt.T, 1.0 - rt.R - rt.T});
  }
  return t;
}

CsvTable f2b(const ExperimentConfig& c) {
  auto prov = model_provenance(c);
  add_quadrature(prov, c);
  add_packet(prov, c);
  add_grids(prov, c);
  CsvTable t{"trapping probability of two identical photon packets into the bound states",
             {"k0 [1/site]", "trap_minus", "trap_plus", "trap_total", "error_minus", "error_plus"},
             {},
             prov};
  for (double k0 : c.k0s) {
    const TwoPhotonPacket f(packet_at(c, k0));
    const auto m = free_to_bound_out_state(c.params, f, Branch::Minus, c.order, c.qc, c.grids);
    const auto p = free_to_bound_out_state(c.params, f, Branch::Plus, c.order, c.qc, c.grids);
    t.rows.push_back({k0, m.trap_probability, p.trap_probability, m.trap_probability + p.trap_probability,
                      m.quadrature_error, p.quadrature_error});
  }
  return t;
}

CsvTable spectrum_table(const std::string& title, const std::vector<double>& p, const std::vector<cplx>& amp,
                        Provenance prov) {
  CsvTable t{title, {"p1 [1/site]", "p2 [1/site]", "re", "im", "intensity"}, {}, std::move(prov)};
  const std::size_t n = p.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx a = amp[i * n + j];
      t.rows.push_back({p[i], p[j], a.real(), a.imag(), std::norm(a)});
    }
  return t;
}

CsvTable f2f(const ExperimentConfig& c) {
  auto prov = model_provenance(c);
  add_quadrature(prov, c);
  add_packet(prov, c);
  add_grids(prov, c);
  prov.emplace_back("k0", format_number(c.k0s.front()));
  const auto out = free_to_free_out_state(c.params, TwoPhotonPacket(packet_at(c, c.k0s.front())), c.order, c.qc,
                                          c.grids);
  prov.emplace_back("norm", format_number(out.norm));
  return spectrum_table("two-photon out-state in the free channel", out.p, out.amplitude, prov);
}

// Two-photon simulations take xc from the plan; give the analytic side the same.
WavepacketSpec planned_packet(const ExperimentConfig& c, double k0, bool bound_state) {
  return experiments::plan_scattering(c.params, packet_at(c, k0), bound_state, c.sim).spec;
}

CsvTable simulate(const ExperimentConfig& c) {
  auto prov = model_provenance(c);
  prov.emplace_back("target", target_name(c.target));
  add_sim(prov, c);
  switch (c.target) {
    case Target::Emission: {
      const auto r = experiments::simulate_emission(c.params, c.t_max, c.t_step, c.sim);
      prov.emplace_back("N", std::to_string(r.run.config.N));
      CsvTable t{"simulated qubit survival amplitude", {"t [1/J]", "re_e", "im_e", "abs2_e"}, {}, prov};
      for (std::size_t i = 0; i < r.t.size(); ++i)
        t.rows.push_back({r.t[i], r.amplitude[i].real(), r.amplitude[i].imag(), std::norm(r.amplitude[i])});
      return t;
    }
    case Target::OnePhoton: {
      add_packet(prov, c);
      CsvTable t{"simulated single-photon packet reflection and transmission",
                 {"k0 [1/site]", "R", "T", "N", "completion_time [1/J]"},
                 {},
                 prov};
      for (double k0 : c.k0s) {
        const auto r = experiments::simulate_one_photon(c.params, packet_at(c, k0), c.sim);
        t.rows.push_back({k0, r.rt.R, r.rt.T, static_cast<double>(r.run.config.N), r.run.completion_time});
      }
      return t;
    }
    case Target::BoundToBound: {
      add_packet(prov, c);
      CsvTable t{"simulated reflection and transmission of a photon off the bound state",
                 {"k0 [1/site]", "R", "T", "R_up_sector", "T_up_sector", "N", "xc [sites]", "completion_time [1/J]",
                  "channel_residual"},
                 {},
                 prov};
      for (double k0 : c.k0s) {
        const auto r = experiments::simulate_bound_to_bound(c.params, packet_at(c, k0), c.branch, c.sim);
        t.rows.push_back({k0, r.rt.R, r.rt.T, r.up_sector.R, r.up_sector.T, static_cast<double>(r.run.config.N),
                          r.run.xc, r.run.completion_time, r.run.channel_residual});
      }
      return t;
    }
    case Target::FreeToBound: {
      add_packet(prov, c);
      CsvTable t{"simulated trapping probability of two identical photon packets",
                 {"k0 [1/site]", "trap_total", "trap_up_sector", "N", "xc [sites]", "completion_time [1/J]",
                  "channel_residual"},
                 {},
                 prov};
      for (double k0 : c.k0s) {
        const auto r = experiments::simulate_two_photon(c.params, packet_at(c, k0), c.sim);
        t.rows.push_back({k0, r.trapping_rate, r.up_sector_rate, static_cast<double>(r.run.config.N), r.run.xc,
                          r.run.completion_time, r.run.channel_residual});
      }
      return t;
    }
    case Target::FreeToFree: {
      add_packet(prov, c);
      const auto r = experiments::simulate_two_photon(c.params, packet_at(c, c.k0s.front()), c.sim, c.grids.n_out);
      prov.emplace_back("k0", format_number(c.k0s.front()));
      prov.emplace_back("N", std::to_string(r.run.config.N));
      prov.emplace_back("xc", format_number(r.run.xc));
      prov.emplace_back("power", format_number(r.spectrum.power));
      return spectrum_table("simulated down-sector two-photon spectrum", r.spectrum.p, r.spectrum.amplitude, prov);
    }
  }
  throw ConfigError(c.id + ".target", "unsupported target");
}

ComparisonReport compare(const ExperimentConfig& c, CsvTable& table) {
  ComparisonReport rep;
  rep.id = c.id;
  rep.target = target_name(c.target);
  rep.tolerance = c.tolerance;
  rep.provenance = model_provenance(c);
  add_quadrature(rep.provenance, c);
  add_sim(rep.provenance, c);
  auto point = [](double x, const std::string& q, double a, double s) {
    const double d = std::abs(a - s);
    return ComparisonPoint{x, q, a, s, d, std::abs(a) > 0 ? d / std::abs(a) : d};
  };
  table.provenance = rep.provenance;

  switch (c.target) {
    case Target::Emission: {
      rep.metric = "max_abs";
      const auto r = experiments::simulate_emission(c.params, c.t_max, c.t_step, c.sim);
      rep.provenance.emplace_back("N", std::to_string(r.run.config.N));
      table.title = "qubit survival amplitude, closed form versus simulation";
      table.columns = {"t [1/J]", "re_analytic", "im_analytic", "re_sim", "im_sim", "abs_dev"};
      for (std::size_t i = 0; i < r.t.size(); ++i) {
        const cplx a = survival_amplitude(c.params, r.t[i]);
        const double d = std::abs(a - r.amplitude[i]);
        rep.points.push_back({r.t[i], "e", std::abs(a), std::abs(r.amplitude[i]), d, std::abs(a) > 0 ? d / std::abs(a) : d});
        rep.value = std::max(rep.value, d);
        table.rows.push_back({r.t[i], a.real(), a.imag(), r.amplitude[i].real(), r.amplitude[i].imag(), d});
      }
      rep.passed = rep.value <= c.tolerance;
      break;
    }
    case Target::OnePhoton:
    case Target::BoundToBound: {
      rep.metric = "max_abs";
      add_packet(rep.provenance, c);
      table.title = "packet reflection and transmission, analytic versus simulation";
      table.columns = {"k0 [1/site]", "R_analytic", "T_analytic", "R_sim", "T_sim", "N"};
      for (double k0 : c.k0s) {
        PacketRT a, s;
        long N = 0;
        if (c.target == Target::OnePhoton) {
          a = one_photon_packet(c.params, packet_at(c, k0));
          const auto r = experiments::simulate_one_photon(c.params, packet_at(c, k0), c.sim);
          s = r.rt;
          N = r.run.config.N;
        } else {
          a = bound_to_bound_packet(c.params, packet_at(c, k0), c.branch, c.order, c.qc);
          const auto r = experiments::simulate_bound_to_bound(c.params, packet_at(c, k0), c.branch, c.sim);
          s = r.rt;
          N = r.run.config.N;
        }
        rep.points.push_back(point(k0, "R", a.R, s.R));
        rep.points.push_back(point(k0, "T", a.T, s.T));
        rep.value = std::max({rep.value, std::abs(a.R - s.R), std::abs(a.T - s.T)});
        table.rows.push_back({k0, a.R, a.T, s.R, s.T, static_cast<double>(N)});
      }
      rep.passed = rep.value <= c.tolerance;
      break;
    }
    case Target::FreeToBound: {
      rep.metric = "max_ratio";
      add_packet(rep.provenance, c);
      add_grids(rep.provenance, c);
      table.title = "total trapping probability, analytic versus simulation";
      table.columns = {"k0 [1/site]", "trap_analytic", "trap_sim", "trap_sim_up_sector", "ratio", "N"};
      for (double k0 : c.k0s) {
        const auto r = experiments::simulate_two_photon(c.params, packet_at(c, k0), c.sim);
        const double a =
            experiments::analytic_trapping_rate(c.params, planned_packet(c, k0, false), c.order, c.qc, c.grids);
        const double ratio = std::max(a / r.trapping_rate, r.trapping_rate / a);
        rep.points.push_back(point(k0, "trap", a, r.trapping_rate));
        rep.value = std::max(rep.value, ratio);
        table.rows.push_back({k0, a, r.trapping_rate, r.up_sector_rate, ratio, static_cast<double>(r.run.config.N)});
      }
      rep.passed = rep.value <= c.tolerance;
      break;
    }
    case Target::FreeToFree: {
      rep.metric = "correlation";
      add_packet(rep.provenance, c);
      add_grids(rep.provenance, c);
      const double k0 = c.k0s.front();
      const auto r = experiments::simulate_two_photon(c.params, packet_at(c, k0), c.sim, c.grids.n_out);
      const auto a = free_to_free_out_state(c.params, TwoPhotonPacket(planned_packet(c, k0, false)), c.order, c.qc,
                                            c.grids);
      std::vector<double> ia, is;
      table.title = "two-photon free-channel intensity, analytic versus simulation";
      table.columns = {"p1 [1/site]", "p2 [1/site]", "intensity_analytic", "intensity_sim"};
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) {
          ia.push_back(std::norm(a.at(i, j)));
          is.push_back(std::norm(r.spectrum.at(i, j)));
          table.rows.push_back({a.p[i], a.p[j], ia.back(), is.back()});
        }
      rep.value = experiments::intensity_correlation(ia, is);
      rep.points.push_back(point(k0, "norm", a.norm, r.spectrum.power));
      rep.provenance.emplace_back("N", std::to_string(r.run.config.N));
      rep.passed = rep.value >= c.tolerance;
      break;
    }
  }
  table.provenance = rep.provenance;
  return rep;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  validate(cfg);
  RunResult res;
  try {
    std::filesystem::create_directories(out_dir);
    CsvTable table;
    switch (cfg.kind) {
      case ExperimentKind::BoundEnergies: table = bound_energies(cfg); break;
      case ExperimentKind::BoundProfile: table = bound_profile(cfg); break;
      case ExperimentKind::Emission: table = emission(cfg); break;
      case ExperimentKind::OnePhotonRT: table = one_photon_rt(cfg); break;
      case ExperimentKind::BoundToBound: table = b2b(cfg); break;
      case ExperimentKind::FreeToBound: table = f2b(cfg); break;
      case ExperimentKind::FreeToFree: table = f2f(cfg); break;
      case ExperimentKind::Simulate: table = simulate(cfg); break;
      case ExperimentKind::Compare: res.report = compare(cfg, table); break;
    }
    const auto csv = out_dir / (cfg.id + ".csv");
    write_file_atomic(csv, format_csv(table));
    res.files.push_back(csv);
    if (res.report) {
      const auto rep = out_dir / (cfg.id + ".report");
      write_file_atomic(rep, format_report(*res.report));
      res.files.push_back(rep);
    }
  } catch (const ConfigError&) {
    for (const auto& f : res.files) std::filesystem::remove(f);
    throw;
  } catch (const std::exception& e) {
    for (const auto& f : res.files) std::filesystem::remove(f);
    throw NumericError(cfg.id + ": " + e.what());
  }
  return res;
}

BatchResult run_batch(const std::vector<ExperimentConfig>& configs, const std::filesystem::path& out_dir,
                      int workers) {
  std::vector<int> codes(configs.size(), kExitOk);
  std::vector<std::string> messages(configs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      const auto& c = configs[i];
      try {
        const auto r = run_experiment(c, out_dir);
        if (r.report && !r.report->passed) {
          codes[i] = kExitTolerance;
          messages[i] = c.id + ": FAIL " + r.report->metric + "=" + format_number(r.report->value) +
                        " tolerance=" + format_number(r.report->tolerance);
        } else {
          messages[i] = c.id + ": ok";
          if (r.report) messages[i] += " " + r.report->metric + "=" + format_number(r.report->value);
        }
      } catch (const ConfigError& e) {
        codes[i] = kExitConfig;
        messages[i] = std::string("config error: ") + e.what();
      } catch (const std::exception& e) {
        codes[i] = kExitNumeric;
        messages[i] = std::string("numeric error: ") + e.what();
      }
    }
  };
  const int n = std::clamp(workers, 1, static_cast<int>(std::max<std::size_t>(configs.size(), 1)));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  BatchResult out;
  out.messages = messages;
  for (int c : codes) {
    if (c == kExitConfig) out.exit_code = kExitConfig;
    else if (c == kExitNumeric && out.exit_code != kExitConfig) out.exit_code = kExitNumeric;
    else if (c == kExitTolerance && out.exit_code == kExitOk) out.exit_code = kExitTolerance;
  }
  return out;
}

}  // namespace wgqed::harness
