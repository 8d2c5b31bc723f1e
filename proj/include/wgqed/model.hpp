#pragma once

#include <cmath>
#include <numbers>

namespace wgqed {

inline constexpr double kPi = std::numbers::pi;

// Physical constants of the waveguide + qubit system. Energies are in units of
// the hopping J (default 1); the lattice constant is 1.
class ModelParams {
 public:
  ModelParams() = default;
  // Throws DomainError unless J > 0 and g_prime >= 0.
  ModelParams(double J, double Omega, double g_prime);

  double J() const { return J_; }
  double Omega() const { return Omega_; }
  // Discrete qubit-photon coupling on the lattice.
  double g_prime() const { return g_prime_; }
  // Continuum coupling g = g' / sqrt(2 pi).
  double g() const { return g_prime_ / std::sqrt(2.0 * kPi); }
  double g2() const { return g_prime_ * g_prime_ / (2.0 * kPi); }

  ModelParams with_g_prime(double g_prime) const { return {J_, Omega_, g_prime}; }
  ModelParams with_Omega(double Omega) const { return {J_, Omega, g_prime_}; }

 private:
  double J_ = 1.0;
  double Omega_ = 0.0;
  double g_prime_ = 0.0;
};

// omega_k = -2J cos k.
double dispersion(const ModelParams& params, double k);

// |d omega / dk| = 2J |sin k|. Zero at the band edges k in {0, +-pi}.
double group_speed(const ModelParams& params, double k);

// sign * arccos(-omega / 2J). Throws DomainError when |omega| > 2J.
double wavevector_from_energy(const ModelParams& params, double omega, int sign);

// Maps k into [-pi, pi]. Only used at API boundaries.
double wrap_momentum(double k);

}  // namespace wgqed
