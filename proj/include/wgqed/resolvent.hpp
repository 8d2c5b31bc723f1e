#pragma once

#include <complex>
#include <utility>

#include "wgqed/model.hpp"

namespace wgqed {

using cplx = std::complex<double>;

// Band integral I(z) = int dk / (z - omega_k) = 2 pi / sqrt(z^2 - 4J^2) with the
// square root cut along [-2J, 2J] (evaluated as sqrt(z-2J) sqrt(z+2J)).
// Throws DomainError for z exactly real inside the band: the caller has to
// choose the side of the cut via an explicit +i eta.
cplx self_energy(const ModelParams& params, cplx z);

// dI/dz on the same sheet.
cplx self_energy_derivative(const ModelParams& params, cplx z);

// <up| G(z) |up> = 1 / (z - Omega/2 - g^2 I(z + Omega/2)).
cplx resolvent_g1(const ModelParams& params, cplx z);

// <k down| G(z) |up> = <up| G(z) |k down> = g G1(z) / (z + Omega/2 - omega_k).
cplx resolvent_g2(const ModelParams& params, cplx z, double k);
inline cplx resolvent_g3(const ModelParams& params, cplx z, double k) {
  return resolvent_g2(params, z, k);
}

// A distribution c * delta(p - k) + smooth(p, k). The delta is never sampled.
struct DeltaSplit {
  cplx delta_coefficient;
  cplx smooth;
};

// <p down| G(z) |k down>.
DeltaSplit resolvent_g4(const ModelParams& params, cplx z, double p, double k);

enum class Branch { Plus, Minus };

inline int branch_sign(Branch b) { return b == Branch::Plus ? 1 : -1; }

// Atom-photon bound state |Psi_+-> outside the photon band. Energies are
// measured from the qubit ground-state offset, so omega is the root of
// w - Omega - g^2 I(w) = 0 with |w| > 2J (the lattice eigenvalue is omega - Omega/2).
struct BoundState {
  Branch branch = Branch::Plus;
  double omega = 0.0;
  // Qubit weight |<up|Psi>|^2, the residue of G1 at the pole.
  double residue = 0.0;
  ModelParams params;
};

// (omega_plus, omega_minus). Requires g' > 0.
std::pair<double, double> bound_state_energies(const ModelParams& params);

// Residue p_b of G1 at the given branch.
double bound_residue(const ModelParams& params, Branch branch);

BoundState make_bound_state(const ModelParams& params, Branch branch);

// w - Omega - g^2 I(w) for real w outside the band; vanishes at the bound energies.
double bound_pole_function(const ModelParams& params, double w);

// <k down | Psi> = sqrt(p_b) g / (omega + 2J cos k).
cplx bound_amplitude_k(const BoundState& state, double k);

// <x down | Psi> on the lattice, from the residue-theorem closed form.
double bound_amplitude_x(const BoundState& state, long x);

// Ratio between neighbouring real-space amplitudes, |ratio| < 1.
double bound_decay_ratio(const BoundState& state);

}  // namespace wgqed
