#include "wgqed/emission.hpp"

#include <cmath>
#include <sstream>

#include "wgqed/errors.hpp"
#include "wgqed/quadrature.hpp"

namespace wgqed {

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::abs(x)); }

namespace {

// Approximate positive zeros of J0(2J tau) inside (lo, hi), used as panel breaks.
std::vector<double> bessel_breaks(double J, double lo, double hi) {
  std::vector<double> out;
  for (int n = 1;; ++n) {
    const double beta = (n - 0.25) * kPi;
    const double zero = beta + 1.0 / (8.0 * beta) - 124.0 / (3.0 * std::pow(8.0 * beta, 3));
    const double tau = zero / (2.0 * J);
    if (tau >= hi) break;
    if (tau > lo) out.push_back(tau);
  }
  return out;
}

struct EmissionConstants {
  double D, s1, s2, A, B, C;
};

EmissionConstants constants(const ModelParams& params) {
  const double J = params.J();
  const double gp = params.g_prime();
  EmissionConstants c{};
  c.D = std::sqrt(4.0 * std::pow(J, 4) + std::pow(gp, 4));
  c.s1 = std::sqrt(c.D - 2.0 * J * J);
  c.s2 = std::sqrt(c.D + 2.0 * J * J);
  c.A = (c.D + 2.0 * J * J) / (2.0 * c.D);
  c.B = (c.D - 2.0 * J * J) / (2.0 * c.D);
  c.C = -gp * gp / (2.0 * c.D);
  return c;
}

}  // namespace

std::complex<double> survival_amplitude(const ModelParams& params, double t) {
  if (params.Omega() != 0.0) throw DomainError("survival_amplitude: only Omega = 0 is supported");
  if (!(t >= 0.0)) throw DomainError("survival_amplitude: t must be non-negative");
  if (params.g_prime() == 0.0 || t == 0.0) return 1.0;

  const double J = params.J();
  const auto c = constants(params);
  QuadratureOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-15;

  // e(t) = A/2 e^{-s1 t} + B cos(s2 t) + C s1^2/s2 S(t) - C s2^2/(2 s1) (P(t) + Q(t))
  //   S(t) = int_0^t J0(2J tau) sin(s2 (t - tau))
  //   Q(t) = int_0^t J0(2J tau) exp(-s1 (t - tau))
  //   P(t) = int_0^inf J0(2J (t + u)) exp(-s1 u)
  // The e^{+s1 t} growth of cosh/sinh has been absorbed into P via
  // int_0^inf J0(2J tau) e^{-s1 tau} = 1/s2.
  const auto inner = make_breakpoints(0.0, t, bessel_breaks(J, 0.0, t));
  auto S = integrate([&](double tau) { return bessel_j0(2.0 * J * tau) * std::sin(c.s2 * (t - tau)); },
                     inner, opt);
  auto Q = integrate([&](double tau) { return bessel_j0(2.0 * J * tau) * std::exp(-c.s1 * (t - tau)); },
                     inner, opt);
  const double tail = 45.0 / c.s1;
  std::vector<double> shifted;
  for (double z : bessel_breaks(J, t, t + tail)) shifted.push_back(z - t);
  const auto outer = make_breakpoints(0.0, tail, shifted);
  auto P = integrate([&](double u) { return bessel_j0(2.0 * J * (t + u)) * std::exp(-c.s1 * u); },
                     outer, opt);

  const double e = 0.5 * c.A * std::exp(-c.s1 * t) + c.B * std::cos(c.s2 * t) +
                   c.C * c.s1 * c.s1 / c.s2 * S.value -
                   c.C * c.s2 * c.s2 / (2.0 * c.s1) * (P.value + Q.value);
  if (std::abs(e) > 1.0 + 1e-6) {
    std::ostringstream os;
    os << "survival_amplitude: |e(" << t << ")| = " << std::abs(e)
       << " exceeds 1; cancellation failed at this precision";
    throw NumericError(os.str());
  }
  return e;
}

EmissionCurve emission_curve(const ModelParams& params, const std::vector<double>& times) {
  EmissionCurve curve;
  curve.params = params;
  curve.times = times;
  curve.amplitudes.reserve(times.size());
  for (double t : times) curve.amplitudes.push_back(survival_amplitude(params, t));
  return curve;
}

}  // namespace wgqed
