#include "wgqed/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "wgqed/errors.hpp"

namespace wgqed::experiments {

namespace {

using Clock = std::chrono::steady_clock;

// Sites beyond which the bound-state cloud holds less than 1e-6 probability.
double cloud_extent(const ModelParams& params) {
  double d = 0.0;
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    const double rho = std::abs(bound_decay_ratio(make_bound_state(params, b)));
    if (rho > 0.0) d = std::max(d, std::ceil(std::log(1e-6) / (2.0 * std::log(rho))));
  }
  return d;
}

// Runs the evolution while tracking conservation laws; throws if the
// scattering does not finish within the plan.
struct Tracker {
  double n0 = 1.0, e0 = 0.0;
  bool first = true;
  SimRun* run;

  void operator()(const sim::LatticeState&, const sim::Observation& ob) {
    if (first) {
      e0 = ob.energy;
      first = false;
    }
    run->norm_drift = std::max(run->norm_drift, std::abs(ob.norm * ob.norm - 1.0));
    run->energy_drift = std::max(run->energy_drift, std::abs(ob.energy - e0));
    run->channel_residual = std::max(run->channel_residual, std::abs(ob.down_norm + ob.up_norm - 1.0));
  }
};

sim::EvolveResult run_to_completion(const sim::Hamiltonian& H, sim::LatticeState st, const sim::SimConfig& cfg,
                                    SimRun& run, bool require_completion, const sim::Monitor& monitor = {}) {
  const auto t0 = Clock::now();
  run.config = cfg;
  Tracker tracker{1.0, 0.0, true, &run};
  auto res = sim::evolve(H, std::move(st), cfg, require_completion, monitor,
                         [&](const sim::LatticeState& s, const sim::Observation& o) { tracker(s, o); });
  run.completed = res.completed;
  run.completion_time = res.completion_time;
  run.wall_probability = res.wall_probability;
  run.stats = res.stats;
  run.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (require_completion && !res.completed) {
    const auto& last = res.trajectory.back();
    throw NumericError("scattering incomplete at t = " + std::to_string(cfg.t_max) + ", residual current " +
                       std::to_string(last.completion_rate));
  }
  return res;
}

void require_zero_omega(const ModelParams& params, const char* what) {
  if (params.Omega() != 0.0) throw DomainError(std::string(what) + " requires Omega = 0");
}

}  // namespace

SimPlan plan_scattering(const ModelParams& params, const WavepacketSpec& packet, bool bound_state,
                        const sim::SimConfig& base) {
  packet.validate();
  const double v0 = group_speed(params, packet.k0);
  if (v0 < 0.05 * params.J()) throw DomainError("packet group speed too small for a scattering run");
  const double s = packet.s;
  SimPlan plan{base, packet};

  const double cloud = bound_state ? cloud_extent(params) : 0.0;
  if (packet.xc == 0.0) plan.spec.xc = -std::ceil(std::max(cloud + 3.0 * s, 5.0 * s));
  const double dist = std::abs(plan.spec.xc);

  // Time budget for the scattering itself, then a lattice whose first wall
  // echo (packet front 6s ahead of the centre, at most 2J fast, qubit -> wall
  // -> qubit) cannot arrive earlier.
  const double twoJ = 2.0 * params.J();
  plan.config.min_time = dist / v0;
  const double budget = plan.config.min_time + (16.0 * s + 80.0) / v0;
  const double lead = std::max(dist - 6.0 * s, 0.0);
  double L = std::max(dist + 3.0 * s, 0.5 * (twoJ * budget - lead));
  if (bound_state) L = std::max(L, static_cast<double>(sim::required_sites(params, plan.spec, true) / 2));
  L = std::ceil(L);
  plan.config.N = 2 * static_cast<long>(L) + 1;
  plan.config.t_max = std::floor((lead + 2.0 * L) / twoJ);
  // Photons that reach a wall stay on their side of the qubit until the echo
  // time, so region-resolved probabilities are unaffected; spectra are not
  // and re-enable the wall check.
  plan.config.wall_tol = std::numeric_limits<double>::infinity();
  return plan;
}

BoundToBoundSim simulate_bound_to_bound(const ModelParams& params, const WavepacketSpec& packet, Branch branch,
                                        const sim::SimConfig& base) {
  require_zero_omega(params, "bound-to-bound simulation");
  const SimPlan plan = plan_scattering(params, packet, true, base);
  const sim::LatticeBasis basis(plan.config.N, sim::Sector::Two);
  const sim::Hamiltonian H(params, basis);
  BoundToBoundSim out;
  out.run.xc = plan.spec.xc;
  out.run.echo_time = plan.config.t_max;
  const sim::Monitor monitor = [&](const sim::LatticeState& st) {
    const auto A = sim::bound_channel_amplitudes(st, params, branch);
    double left = 0.0, right = 0.0;
    for (long i = 0; i < basis.N(); ++i) {
      if (i < basis.L()) left += std::norm(A[static_cast<std::size_t>(i)]);
      if (i > basis.L()) right += std::norm(A[static_cast<std::size_t>(i)]);
    }
    return std::vector<double>{left, right};
  };
  auto res = run_to_completion(H, sim::prepare_bound_product(basis, params, plan.spec, branch), plan.config,
                               out.run, true, monitor);
  const auto& fin = res.trajectory.back().monitored;
  out.rt.R = fin[0];
  out.rt.T = fin[1];
  const double pb = bound_residue(params, branch);
  out.up_sector.R = sim::measure_up_sector(res.final_state, sim::Region::Left, pb);
  out.up_sector.T = sim::measure_up_sector(res.final_state, sim::Region::Right, pb);
  return out;
}

TwoPhotonSim simulate_two_photon(const ModelParams& params, const WavepacketSpec& packet,
                                 const sim::SimConfig& base, int spectrum_points) {
  require_zero_omega(params, "two-photon trapping simulation");
  SimPlan plan = plan_scattering(params, packet, false, base);
  if (spectrum_points > 0) {
    // Outgoing photons must not touch the walls before the spectrum is taken.
    const double reach = std::abs(plan.spec.xc) + 2.0 * params.J() * plan.config.t_max;
    plan.config.N = std::max(plan.config.N, 2 * static_cast<long>(std::ceil(0.5 * reach + 6.0 * packet.s)) + 1);
    plan.config.wall_tol = base.wall_tol;
  }
  const sim::LatticeBasis basis(plan.config.N, sim::Sector::Two);
  const sim::Hamiltonian H(params, basis);
  TwoPhotonSim out;
  out.run.xc = plan.spec.xc;
  out.run.echo_time = plan.config.t_max;
  const sim::Monitor monitor = [&](const sim::LatticeState& st) {
    return std::vector<double>{
        sim::bound_channel_probability(st, params, Branch::Minus, sim::Region::All),
        sim::bound_channel_probability(st, params, Branch::Plus, sim::Region::All)};
  };
  auto res = run_to_completion(H, sim::prepare_two_photon_gaussian(basis, plan.spec, plan.spec), plan.config,
                               out.run, true, monitor);
  const auto& fin = res.trajectory.back().monitored;
  out.trapping_rate = fin[0] + fin[1];
  // Both branches share p_b at Omega = 0.
  out.up_sector_rate = sim::trapping_rate(res.final_state, bound_residue(params, Branch::Minus));
  if (spectrum_points > 0) out.spectrum = sim::spectrum_down_sector(res.final_state, spectrum_points);
  return out;
}

EmissionSim simulate_emission(const ModelParams& params, double t_max, double sample_every,
                              const sim::SimConfig& base) {
  sim::SimConfig cfg = base;
  // Emitted light travels at most 2J; keep it away from the walls.
  cfg.N = 2 * static_cast<long>(std::ceil(2.0 * params.J() * t_max + 40.0)) + 1;
  cfg.t_max = t_max;
  cfg.sample_every = sample_every;
  const sim::LatticeBasis basis(cfg.N, sim::Sector::One);
  const sim::Hamiltonian H(params, basis);
  EmissionSim out;
  auto res = run_to_completion(H, sim::prepare_excited_qubit(basis), cfg, out.run, false);
  for (const auto& ob : res.trajectory) {
    out.t.push_back(ob.t);
    out.amplitude.push_back(ob.up_amplitude);
  }
  return out;
}

OnePhotonSim simulate_one_photon(const ModelParams& params, const WavepacketSpec& packet,
                                 const sim::SimConfig& base) {
  const SimPlan plan = plan_scattering(params, packet, false, base);
  const sim::LatticeBasis basis(plan.config.N, sim::Sector::One);
  const sim::Hamiltonian H(params, basis);
  OnePhotonSim out;
  out.run.xc = plan.spec.xc;
  out.run.echo_time = plan.config.t_max;
  auto res = run_to_completion(H, sim::prepare_one_photon_gaussian(basis, plan.spec), plan.config, out.run, true);
  const auto& st = res.final_state;
  for (long x = -basis.L(); x <= basis.L(); ++x) {
    const double w = std::norm(st.amp[static_cast<Eigen::Index>(basis.photon(x))]);
    if (x < 0) out.rt.R += w;
    if (x > 0) out.rt.T += w;
  }
  return out;
}

double analytic_trapping_rate(const ModelParams& params, const WavepacketSpec& packet, int order,
                              const QuadratureConfig& qc, const ShellGrids& grids) {
  const TwoPhotonPacket f(packet);
  double total = 0.0;
  for (Branch b : {Branch::Minus, Branch::Plus})
    total += free_to_bound_out_state(params, f, b, order, qc, grids).trap_probability;
  return total;
}

double intensity_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) throw DomainError("intensity grids differ in size");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (!(saa > 0 && sbb > 0)) throw DomainError("constant intensity grid");
  return sab / std::sqrt(saa * sbb);
}

}  // namespace wgqed::experiments
