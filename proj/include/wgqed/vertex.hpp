#pragma once

#include <complex>
#include <vector>

#include "wgqed/model.hpp"
#include "wgqed/quadrature.hpp"
#include "wgqed/resolvent.hpp"

namespace wgqed {

// Numerical controls for the singular two-photon integrals. All on-shell
// quantities are evaluated at z = E + i eta with eta kept strictly positive.
struct QuadratureConfig {
  double eta = 1e-6;
  double rel_tol = 1e-8;
  double abs_tol = 1e-13;
  int max_depth = 60;
  // Selects symmetric-node principal values (instead of finite eta) for the
  // bare-vertex pole in free-to-free amplitudes.
  bool principal_value = true;

  void validate() const;
  QuadratureOptions outer() const;
  // Nested integrals run 10x tighter than the enclosing one.
  QuadratureOptions inner() const;
};

// H(z; p) = z - Omega - omega_p - g^2 I(z - omega_p).
cplx h_function(const ModelParams& params, cplx z, double p);
cplx h_function_energy(const ModelParams& params, cplx z, double omega_p);

// n-th vertex correction V_n(z; p, k). n = 0 is the bare vertex
// 1/(z - omega_p - omega_k); n = 1, 2 use the one- and two-dimensional closed
// integrals; n > 2 falls back to the generic recursion.
// Requires Im z >= qc.eta for n >= 1.
cplx vertex_v(const ModelParams& params, int n, cplx z, double p, double k,
              const QuadratureConfig& qc);

// V_n through the Neumann recursion
//   V_{n+1}(z; p, k) = g^2 int dv V_n(z; v, k) / (H(z; v) (z - omega_p - omega_v)).
cplx vertex_v_recursive(const ModelParams& params, int n, cplx z, double p, double k,
                        const QuadratureConfig& qc);

// Energy-argument forms; V_n depends on the momenta only through omega.
cplx vertex_v_energy(const ModelParams& params, int n, cplx z, double omega_p, double omega_k,
                     const QuadratureConfig& qc);

// Printed V_2 evaluated with the two integrations in the opposite nesting
// order to the recursion (outer v1, inner v2).
cplx vertex_v2_swapped(const ModelParams& params, cplx z, double omega_p, double omega_k,
                       const QuadratureConfig& qc);

struct PartialSum {
  cplx value;
  // partial[m] = V_0 + ... + V_m
  std::vector<cplx> partial;
  std::vector<cplx> terms;
};

// U ~ V_0 + ... + V_order.
PartialSum u_partial(const ModelParams& params, cplx z, double p, double k, int order,
                     const QuadratureConfig& qc);
PartialSum u_partial_energy(const ModelParams& params, cplx z, double omega_p, double omega_k,
                            int order, const QuadratureConfig& qc);

// Nystrom solution of the integral equation for U(z; ., k) on a composite
// Gauss-Legendre grid over [0, pi] (U is even in p), graded towards the fixed
// singular points of the kernel.
class NystromSolution {
 public:
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<cplx>& values() const { return values_; }
  double residual() const { return residual_; }
  double condition_estimate() const { return condition_; }
  // Natural Nystrom interpolant U(p) = V_0(p, k) + sum_j w_j K(p, v_j) U_j.
  cplx evaluate(double p) const;

 private:
  friend NystromSolution u_nystrom(const ModelParams&, cplx, double, int, const QuadratureConfig&);
  ModelParams params_;
  cplx z_;
  double omega_k_ = 0.0;
  std::vector<double> nodes_, weights_;
  std::vector<cplx> values_;
  std::vector<cplx> kernel_factor_;  // 2 g^2 w_j U_j / H(z; v_j)
  double residual_ = 0.0;
  double condition_ = 0.0;
};

// grid_size is the approximate total node count. Throws NumericError when the
// condition estimate of the linear system exceeds 1e12.
NystromSolution u_nystrom(const ModelParams& params, cplx z, double k, int grid_size,
                          const QuadratureConfig& qc);

// <p up| G(z - Omega/2) |k up> = delta(p - k) / H(z; p) + g^2 U / (H(z; k) H(z; p)).
DeltaSplit resolvent_g5(const ModelParams& params, cplx z, double p, double k, int order,
                        const QuadratureConfig& qc);

// Energies in (-2J, 2J) at which kernels built on H(z; v) are singular or kinked.
std::vector<double> kernel_singular_energies(const ModelParams& params, cplx z);

// Converts band energies to momenta in (0, pi) for use as quadrature breaks.
std::vector<double> energies_to_breaks(const ModelParams& params, const std::vector<double>& energies);

}  // namespace wgqed
