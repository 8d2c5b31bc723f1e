#pragma once

#include <utility>
#include <vector>

#include "wgqed/model.hpp"
#include "wgqed/resolvent.hpp"
#include "wgqed/vertex.hpp"

namespace wgqed {

struct OnePhotonRT {
  double k = 0.0;
  cplx r, t;
};

// r = -g'^2 / (g'^2 + i (2J cos k + Omega) 2J |sin k|), t = 1 + r.
// Throws DomainError at the band edges (k = 0, +-pi) where the group speed vanishes.
OnePhotonRT one_photon_rt(const ModelParams& params, double k);

struct BoundToBoundRT {
  cplx r, t;
};

// Photon k scattering off the bound state of the given branch:
// r = -2 pi i p_b g^2 U(w_k + w_b + i eta; k, k) / (2J |sin k|), t = 1 + r.
// Requires Omega = 0.
BoundToBoundRT bound_to_bound_rt(const ModelParams& params, double k, Branch branch, int order,
                                 const QuadratureConfig& qc);

// Gaussian photon packet. Real space: (pi s^2)^(-1/4) exp(-(x - xc)^2 / 2s^2 + i k0 x);
// momentum space with psi(k) = (2 pi)^(-1/2) sum_x exp(-i k x) psi(x):
// (s^2/pi)^(1/4) exp(-s^2 (k - k0)^2 / 2 - i (k - k0) xc).
struct WavepacketSpec {
  double k0 = kPi / 2;
  double s = 12.0;
  double xc = 0.0;

  // Throws DomainError for s <= 0 or when more than 1e-3 of the norm leaves [-pi, pi].
  void validate() const;
  // Momentum interval outside which |f(k)|^2 < 1e-15 relative to its peak.
  std::pair<double, double> k_support() const;
};

cplx gaussian_packet_k(const WavepacketSpec& spec, double k);
cplx gaussian_packet_x(const WavepacketSpec& spec, double x);

// Symmetrised product packet f(k1, k2) of two photons, normalised to 1 over [-pi, pi]^2.
class TwoPhotonPacket {
 public:
  explicit TwoPhotonPacket(const WavepacketSpec& a);
  TwoPhotonPacket(const WavepacketSpec& a, const WavepacketSpec& b);

  cplx operator()(double k1, double k2) const;
  const WavepacketSpec& first() const { return a_; }
  const WavepacketSpec& second() const { return b_; }
  // Single-photon energy interval covering the support of either photon.
  std::pair<double, double> energy_window(const ModelParams& params) const;

 private:
  WavepacketSpec a_, b_;
  bool identical_ = true;
  double norm_ = 1.0;
};

// Constant-total-energy line through the two-photon band square, parametrised
// by omega_{1,2} = E/2 +- Delta.
struct EnergyShellDomain {
  double E = 0.0;
  double delta_lo = 0.0;
  double delta_hi = 0.0;
  // Free-photon momenta in [0, pi] for which |p Psi> is reachable from two
  // free photons (only meaningful for channel-1 out-states).
  double p_lo = 0.0;
  double p_hi = 0.0;

  bool empty() const { return !(delta_hi > delta_lo); }
};

EnergyShellDomain energy_shell(const ModelParams& params, double E);
// Shell for |p Psi_b> out-states: E = omega_p + omega_b, p limits from
// -4J <= omega_p + omega_b <= 4J.
EnergyShellDomain bound_channel_shell(const ModelParams& params, double omega_bound);

// Photon momentum |k| in [0, pi] with -2J cos k = omega.
double momentum_of_energy(const ModelParams& params, double omega);

// g^3 sqrt(p_b) [U(z; p, k1) / H(z; k1) + U(z; p, k2) / H(z; k2)], z = w_p + w_b + i eta.
cplx free_to_bound_amplitude(const ModelParams& params, double p, Branch branch, double k1,
                             double k2, int order, const QuadratureConfig& qc);
cplx free_to_bound_amplitude_energy(const ModelParams& params, double omega_p, Branch branch,
                                    double omega_k1, double omega_k2, int order,
                                    const QuadratureConfig& qc);

struct ShellGrids {
  // Uniform output grid size over [-pi, pi] (cell centred).
  int n_out = 128;
  // Gauss-Legendre nodes for the integral over the outgoing photon momentum.
  int n_p = 64;
  // Gauss-Legendre nodes for the integral along the energy shell.
  int n_delta = 96;
  // Relative tolerance for the shell-quadrature error estimate.
  double rel_tol = 1e-3;
  // Times n_p and n_delta may be doubled before the estimate is declared a failure.
  int max_refinements = 3;

  void validate() const;
};

struct FreeToBoundOutState {
  Branch branch = Branch::Minus;
  std::vector<double> p;           // output grid
  std::vector<cplx> amplitude;     // <p Psi_b | out>
  double trap_probability = 0.0;   // <out_b | out_b>
  double quadrature_error = 0.0;   // estimate on trap_probability
};

// Channel 0 -> channel 1 out-state for the input (1/sqrt 2) int f(k1,k2) |k1 k2 down>.
// Throws NumericError when the shell-quadrature error estimate exceeds grids.rel_tol.
FreeToBoundOutState free_to_bound_out_state(const ModelParams& params, const TwoPhotonPacket& f,
                                            Branch branch, int order, const QuadratureConfig& qc,
                                            const ShellGrids& grids);

// Non-delta part of the free-to-free S element,
//   B = -2 pi i g^4 sum_{m,n} U'(z; p_m, k_n) / (H(z; p_m) H(z; k_n)),
// evaluated pointwise with the bare vertex taken as its real (principal) kernel
// and the corrections at z = E + i eta. Requires w_p1 + w_p2 = w_k1 + w_k2 to 1e-9.
cplx free_to_free_b(const ModelParams& params, double p1, double p2, double k1, double k2,
                    int order, const QuadratureConfig& qc);

// B split along the shell: B(Delta) = regular + c_plus / (Delta - D) + c_minus / (Delta + D),
// with omega_k{1,2} = E/2 +- Delta and D = (w_p1 - w_p2) / 2.
struct ShellBParts {
  cplx regular;
  cplx c_plus;
  cplx c_minus;
};
ShellBParts free_to_free_b_parts(const ModelParams& params, double omega_p1, double omega_p2,
                                 double delta, int order, const QuadratureConfig& qc);

struct FreeToFreeOutState {
  std::vector<double> p;               // grid along each axis
  std::vector<cplx> amplitude;         // row-major [i1 * n + i2], p1 = p[i1], p2 = p[i2]
  double norm = 0.0;                   // <out|out> from the grid (Riemann sum)
  std::size_t size() const { return p.size(); }
  cplx at(std::size_t i1, std::size_t i2) const { return amplitude[i1 * p.size() + i2]; }
};

// Channel 0 -> channel 0 out-state on the uniform (p1, p2) grid.
FreeToFreeOutState free_to_free_out_state(const ModelParams& params, const TwoPhotonPacket& f,
                                          int order, const QuadratureConfig& qc,
                                          const ShellGrids& grids);

// Shell integral of B for a single output point (exposed for tests).
cplx free_to_free_shell_integral(const ModelParams& params, const TwoPhotonPacket& f, double p1,
                                 double p2, int order, const QuadratureConfig& qc);

struct PacketRT {
  double R = 0.0;
  double T = 0.0;
};

// Packet-averaged bound-to-bound reflection and transmission,
// R = int |f(k)|^2 |r(k)|^2 dk, T = int |f(k)|^2 |t(k)|^2 dk.
PacketRT bound_to_bound_packet(const ModelParams& params, const WavepacketSpec& spec,
                               Branch branch, int order, const QuadratureConfig& qc,
                               int n_k = 48);

// Packet-averaged one-photon reflection and transmission.
PacketRT one_photon_packet(const ModelParams& params, const WavepacketSpec& spec, int n_k = 64);

}  // namespace wgqed
