#pragma once

#include <string>
#include <vector>

#include "wgqed/krylovsim.hpp"
#include "wgqed/smatrix.hpp"

// Simulation drivers shared by the CLI and the acceptance suite. Each one picks
// a lattice and packet offset large enough for its scattering problem, runs to
// completion and reduces the final state to the quantities the analytic side
// predicts.
namespace wgqed::experiments {

struct SimRun {
  sim::SimConfig config;
  double xc = 0.0;
  bool completed = false;
  double completion_time = 0.0;
  double wall_probability = 0.0;
  // Largest |<psi|psi> - 1| and |<H>(t) - <H>(0)| over all samples.
  double norm_drift = 0.0;
  double energy_drift = 0.0;
  // Largest |down + up - 1| over all samples; with P_trap = up / p_b and
  // P_free = down - (1 - p_b) up / p_b this is |P_free + P_trap - 1|.
  double channel_residual = 0.0;
  // Earliest time at which a wall echo can reach the qubit.
  double echo_time = 0.0;
  sim::StepStats stats;
  double seconds = 0.0;
};

// Lattice and timing plan for a packet scattering run. bound_state selects
// the photon + bound-state initial condition.
struct SimPlan {
  sim::SimConfig config;
  WavepacketSpec spec;  // with xc filled in
};

SimPlan plan_scattering(const ModelParams& params, const WavepacketSpec& packet, bool bound_state,
                        const sim::SimConfig& base);

struct BoundToBoundSim {
  PacketRT rt;         // bound-channel projection left / right of the qubit
  PacketRT up_sector;  // up-sector probability left / right divided by p_b
  SimRun run;
};

// A photon packet from the left onto the bound state. R and T are the
// photon-times-bound-state probabilities left and right of the qubit; they
// converge to the up-sector / p_b values as t -> infinity but settle much
// earlier, which the completion test relies on.
BoundToBoundSim simulate_bound_to_bound(const ModelParams& params, const WavepacketSpec& packet,
                                        Branch branch, const sim::SimConfig& base);

struct TwoPhotonSim {
  double trapping_rate = 0.0;    // summed bound-channel projections
  double up_sector_rate = 0.0;   // up-sector probability / p_b
  sim::Spectrum spectrum;  // empty unless requested
  SimRun run;
};

// Two photons in the same Gaussian packet from the left, qubit in its ground
// state. spectrum_points > 0 also records the down-sector momentum spectrum.
TwoPhotonSim simulate_two_photon(const ModelParams& params, const WavepacketSpec& packet,
                                 const sim::SimConfig& base, int spectrum_points = 0);

struct EmissionSim {
  std::vector<double> t;
  std::vector<cplx> amplitude;
  SimRun run;
};

// Initially excited qubit sampled at the given cadence up to t_max.
EmissionSim simulate_emission(const ModelParams& params, double t_max, double sample_every,
                              const sim::SimConfig& base);

// Photon packet sent through an empty-qubit lattice; R and T from the photon
// probability left and right of the qubit.
struct OnePhotonSim {
  PacketRT rt;
  SimRun run;
};
OnePhotonSim simulate_one_photon(const ModelParams& params, const WavepacketSpec& packet,
                                 const sim::SimConfig& base);

// Analytic total trapping rate <out_-|out_-> + <out_+|out_+>.
double analytic_trapping_rate(const ModelParams& params, const WavepacketSpec& packet, int order,
                              const QuadratureConfig& qc, const ShellGrids& grids);

// Pearson correlation of two equally sized intensity grids.
double intensity_correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace wgqed::experiments
