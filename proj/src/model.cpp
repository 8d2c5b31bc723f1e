#include "wgqed/model.hpp"

#include <algorithm>
#include <sstream>

#include "wgqed/errors.hpp"

namespace wgqed {

ModelParams::ModelParams(double J, double Omega, double g_prime)
    : J_(J), Omega_(Omega), g_prime_(g_prime) {
  if (!(J > 0.0)) throw DomainError("ModelParams: hopping J must be positive");
  if (!(g_prime >= 0.0)) throw DomainError("ModelParams: coupling g' must be non-negative");
  if (!std::isfinite(Omega)) throw DomainError("ModelParams: Omega must be finite");
}

double dispersion(const ModelParams& params, double k) { return -2.0 * params.J() * std::cos(k); }

double group_speed(const ModelParams& params, double k) {
  return 2.0 * params.J() * std::abs(std::sin(k));
}

double wavevector_from_energy(const ModelParams& params, double omega, int sign) {
  const double edge = 2.0 * params.J();
  if (std::abs(omega) > edge) {
    std::ostringstream os;
    os << "wavevector_from_energy: energy " << omega << " outside the band [" << -edge << ", "
       << edge << "]";
    throw DomainError(os.str());
  }
  const double k = std::acos(std::clamp(-omega / edge, -1.0, 1.0));
  return sign >= 0 ? k : -k;
}

double wrap_momentum(double k) {
  double w = std::remainder(k, 2.0 * kPi);
  if (w == -kPi) w = kPi;
  return w;
}

}  // namespace wgqed
