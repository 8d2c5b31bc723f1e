#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wgqed/model.hpp"
#include "wgqed/resolvent.hpp"
#include "wgqed/smatrix.hpp"

// Time-domain lattice simulation of H_d in the one- and two-excitation sectors.
namespace wgqed::sim {

using Vector = Eigen::VectorXcd;

enum class Sector : std::int64_t { One = 1, Two = 2 };

// Sites x in [-L, L], N = 2L + 1, qubit at x = 0.
//
// One excitation: N photon states |x, down> followed by |up>.
// Two excitations: the down sector in packed upper-triangular order
// (x1 <= x2) followed by the N states |x, up>. All basis states are
// orthonormal Fock states: x1 < x2 is |1_x1 1_x2>, x1 = x2 is |2_x> =
// (a_x^dag)^2 / sqrt(2) |0>. In terms of a symmetric first-quantised
// psi(x1, x2) with sum |psi|^2 = 1 the amplitudes are sqrt(2) psi(x1, x2)
// off the diagonal and psi(x, x) on it.
class LatticeBasis {
 public:
  LatticeBasis(long N, Sector sector);

  long N() const { return N_; }
  long L() const { return L_; }
  Sector sector() const { return sector_; }
  std::size_t dim() const { return dim_; }
  std::size_t down_dim() const { return down_dim_; }

  long site(long x) const;  // x + L, checked
  std::size_t photon(long x) const;  // one excitation: |x, down>
  std::size_t up() const;            // one excitation: |up>
  std::size_t pair(long x1, long x2) const;  // two excitations, either order
  std::size_t up_photon(long x) const;       // two excitations: |x, up>

  struct Config {
    bool up = false;
    long x1 = 0;  // photon coordinates; unused ones are 0
    long x2 = 0;
    int photons = 0;
  };
  Config decode(std::size_t index) const;

  // Packed offset of row i (site index) in the down sector.
  std::size_t row_offset(long i) const {
    return static_cast<std::size_t>(i) * N_ - static_cast<std::size_t>(i) * (i - 1) / 2;
  }

 private:
  long N_, L_;
  Sector sector_;
  std::size_t dim_, down_dim_;
};

// Matrix-free H_d. The photon on-site energy is zero, the qubit carries
// +-Omega/2 and the coupling is g' (sigma^+ a_0 + a_0^dag sigma^-).
class Hamiltonian {
 public:
  Hamiltonian(const ModelParams& params, const LatticeBasis& basis);
  void apply(const Vector& in, Vector& out) const;
  Vector operator*(const Vector& v) const;
  // Upper bound on the spectral radius.
  double norm_bound() const;
  const ModelParams& params() const { return params_; }
  const LatticeBasis& basis() const { return basis_; }
  // Dense matrix, for small lattices and tests.
  Eigen::MatrixXcd dense() const;

 private:
  ModelParams params_;
  LatticeBasis basis_;
};

struct LatticeState {
  LatticeBasis basis{3, Sector::One};
  Vector amp;
  double time = 0.0;

  double norm() const { return amp.norm(); }
};

struct SimConfig {
  long N = 601;
  // Target step; the propagator halves it when the Krylov error estimate
  // exceeds step_tol.
  double dt = 0.5;
  double t_max = 400.0;
  int krylov_dim = 30;
  double step_tol = 1e-10;
  // Observation cadence.
  double sample_every = 1.0;
  // Completion: the completion rate (see evolve) stays below flux_threshold
  // for quiet_time, checked only after min_time.
  double flux_threshold = 1e-8;
  double quiet_time = 10.0;
  double min_time = 0.0;
  // Probability allowed in the wall_width outermost sites at completion.
  long wall_width = 5;
  double wall_tol = 1e-8;

  void validate() const;
};

struct StepStats {
  long steps = 0;
  long matvecs = 0;
  long halvings = 0;
  double max_error = 0.0;
};

// Lanczos approximation of exp(-i H dt) v with full reorthogonalisation. The
// subspace grows until the a posteriori estimate
// beta_m |e_m^T exp(-i dt T_m) e_1| drops below tol (at most max_dim); if it
// never does, dt is halved on the same subspace.
class KrylovPropagator {
 public:
  KrylovPropagator(const Hamiltonian& H, int max_dim, double tol);
  // Advances v in place by at most dt; returns the step actually taken.
  double step(Vector& v, double dt);
  const StepStats& stats() const { return stats_; }

 private:
  const Hamiltonian& H_;
  int max_dim_;
  double tol_;
  Eigen::MatrixXcd V_;
  Vector w_;
  StepStats stats_;
};

struct Observation {
  double t = 0.0;
  double norm = 0.0;
  double energy = 0.0;
  double down_norm = 0.0;
  double up_norm = 0.0;
  double up_left = 0.0;
  double up_right = 0.0;
  double flux_down = 0.0;  // largest |current| over the two qubit bonds
  double flux_up = 0.0;
  cplx up_amplitude;       // one excitation only: <up|psi>
  std::vector<double> monitored;  // monitor values, when a monitor is set
  double completion_rate = 0.0;
};

struct EvolveResult {
  LatticeState final_state;
  std::vector<Observation> trajectory;
  bool completed = false;
  double completion_time = 0.0;
  double wall_probability = 0.0;
  StepStats stats;
};

using Monitor = std::function<std::vector<double>(const LatticeState&)>;
using Observer = std::function<void(const LatticeState&, const Observation&)>;

// Propagates to t_max, or until completion if stop_on_completion.
//
// Without a monitor the completion rate is the larger of the down- and
// up-sector currents through the two qubit bonds. With a monitor it is the
// largest change per unit time of the monitored probabilities between samples:
// the net probability current into the measured regions, including exchange
// between the sectors at the qubit. The observer, when set, sees every
// sampled state.
EvolveResult evolve(const Hamiltonian& H, LatticeState state, const SimConfig& cfg,
                    bool stop_on_completion = true, const Monitor& monitor = {},
                    const Observer& observer = {});

Observation observe(const Hamiltonian& H, const LatticeState& state);

// --- state preparation -------------------------------------------------------

LatticeState prepare_excited_qubit(const LatticeBasis& basis);
LatticeState prepare_one_photon_gaussian(const LatticeBasis& basis, const WavepacketSpec& spec);
// Symmetrised f1(x1) f2(x2) in the two-excitation down sector.
LatticeState prepare_two_photon_gaussian(const LatticeBasis& basis, const WavepacketSpec& spec1,
                                         const WavepacketSpec& spec2);
// a_f^dag |Psi_branch>: photon packet times the atom-photon bound state.
LatticeState prepare_bound_product(const LatticeBasis& basis, const ModelParams& params,
                                   const WavepacketSpec& spec, Branch branch);
// Bound state in the one-excitation sector.
LatticeState prepare_bound_state(const LatticeBasis& basis, const ModelParams& params,
                                 Branch branch);

// Smallest odd N for which the bound-state tail drops below tol at the walls
// and a packet at spec.xc keeps 3s clearance from the walls.
long required_sites(const ModelParams& params, const WavepacketSpec& spec, bool bound_state,
                    double tol = 1e-8);

// --- measurements -------------------------------------------------------------

enum class Region { Left, Right, All };

double up_probability(const LatticeState& state, Region region);
double down_probability(const LatticeState& state);
// Up-sector probability in the region divided by p_b.
double measure_up_sector(const LatticeState& state, Region region, double p_b);
double trapping_rate(const LatticeState& state, double p_b);
// Probability currents through the bonds (-1, 0) and (0, 1); returns the
// larger magnitude for the down and up sectors.
// Amplitude A(x) of "photon at x times the bound state" in a two-excitation
// state: sqrt(p_b) <x up|psi> + sqrt(2) sum_y phi(y) psi(x, y). Far from the
// cloud the states a_x^dag |Psi> are orthonormal, so |A(x)|^2 is the
// channel-1 probability density; unlike the up-sector weight it carries no
// interference with free photon pairs still lingering at the qubit.
std::vector<cplx> bound_channel_amplitudes(const LatticeState& state, const ModelParams& params,
                                           Branch branch);
double bound_channel_probability(const LatticeState& state, const ModelParams& params, Branch branch,
                                 Region region);
std::pair<double, double> qubit_bond_currents(const LatticeState& state, double J);
double wall_probability(const LatticeState& state, long width);

// Down-sector first-quantised amplitude psi(x1, x2) (two excitations).
cplx down_psi(const LatticeState& state, long x1, long x2);

struct Spectrum {
  std::vector<double> p;       // grid along each axis
  std::vector<cplx> amplitude;  // row-major [i1 * n + i2]
  double power = 0.0;           // (2 pi / n)^2 sum |F|^2
  std::size_t size() const { return p.size(); }
  cplx at(std::size_t i1, std::size_t i2) const { return amplitude[i1 * p.size() + i2]; }
};

// F(p1, p2) = (1/2 pi) sum_{x1, x2} exp(-i (p1 x1 + p2 x2)) psi(x1, x2) on the
// cell-centred n x n grid over [-pi, pi]. For n >= N, power equals the
// down-sector probability exactly.
Spectrum spectrum_down_sector(const LatticeState& state, int n);

// One-photon momentum amplitude (2 pi)^(-1/2) sum_x exp(-i k x) psi(x).
cplx photon_momentum_amplitude(const LatticeState& state, double k);

// --- checkpoints --------------------------------------------------------------

// Layout: int64 N, int64 sector, float64 time, then dim (re, im) float64
// pairs, all little-endian.
void write_checkpoint(const std::string& path, const LatticeState& state);
LatticeState read_checkpoint(const std::string& path);

}  // namespace wgqed::sim
