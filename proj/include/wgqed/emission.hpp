#pragma once

#include <complex>
#include <vector>

#include "wgqed/model.hpp"

namespace wgqed {

// Survival amplitude e(t) = <up| exp(-iHt) |up> of an initially excited qubit
// (Omega = 0 only). The inverse Laplace transform is a partial-fraction part
// plus a Bessel-J0 convolution; the exponentially growing pieces of the two
// cancel identically and are combined analytically before integration, so the
// result is stable for any t >= 0 in double precision.
// Throws DomainError for Omega != 0 or t < 0 and NumericError if |e| > 1 + 1e-6.
std::complex<double> survival_amplitude(const ModelParams& params, double t);

struct EmissionCurve {
  std::vector<double> times;
  std::vector<std::complex<double>> amplitudes;
  ModelParams params;
};

EmissionCurve emission_curve(const ModelParams& params, const std::vector<double>& times);

// Order-zero Bessel function of the first kind.
double bessel_j0(double x);

}  // namespace wgqed
