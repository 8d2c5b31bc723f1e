#include "wgqed/resolvent.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "wgqed/errors.hpp"

namespace wgqed {

namespace {

// sqrt(z^2 - 4J^2) on the sheet cut along [-2J, 2J].
cplx band_root(double J, cplx z) { return std::sqrt(z - 2.0 * J) * std::sqrt(z + 2.0 * J); }

void require_off_band(const ModelParams& params, cplx z, const char* who) {
  if (z.imag() == 0.0 && std::abs(z.real()) <= 2.0 * params.J()) {
    std::ostringstream os;
    os << who << ": z = " << z.real() << " lies on the band cut [" << -2.0 * params.J() << ", "
       << 2.0 * params.J() << "]; add an explicit +i eta";
    throw DomainError(os.str());
  }
}

}  // namespace

cplx self_energy(const ModelParams& params, cplx z) {
  require_off_band(params, z, "self_energy");
  return 2.0 * kPi / band_root(params.J(), z);
}

cplx self_energy_derivative(const ModelParams& params, cplx z) {
  require_off_band(params, z, "self_energy_derivative");
  const cplx r = band_root(params.J(), z);
  return -2.0 * kPi * z / (r * r * r);
}

cplx resolvent_g1(const ModelParams& params, cplx z) {
  const double half = 0.5 * params.Omega();
  const cplx den = z - half - params.g2() * self_energy(params, z + half);
  if (std::abs(den) == 0.0) throw PoleError("resolvent_g1: z sits on a bound-state pole", z.real() + half);
  return 1.0 / den;
}

cplx resolvent_g2(const ModelParams& params, cplx z, double k) {
  const cplx den = z + 0.5 * params.Omega() - dispersion(params, k);
  if (den == 0.0) throw DomainError("resolvent_g2: on-band denominator without eta");
  return params.g() * resolvent_g1(params, z) / den;
}

DeltaSplit resolvent_g4(const ModelParams& params, cplx z, double p, double k) {
  const cplx dk = z + 0.5 * params.Omega() - dispersion(params, k);
  const cplx dp = z + 0.5 * params.Omega() - dispersion(params, p);
  if (dk == 0.0 || dp == 0.0) throw DomainError("resolvent_g4: on-band denominator without eta");
  return {1.0 / dk, params.g2() * resolvent_g1(params, z) / (dk * dp)};
}

double bound_pole_function(const ModelParams& params, double w) {
  const double J = params.J();
  if (std::abs(w) <= 2.0 * J) throw DomainError("bound_pole_function: w inside the band");
  const double root = std::sqrt((w - 2.0 * J) * (w + 2.0 * J));
  const double gp2 = params.g_prime() * params.g_prime();
  return w - params.Omega() - (w > 0 ? gp2 / root : -gp2 / root);
}

namespace {

// Root on one half-line, parametrized by the distance u = |w| - 2J > 0 so
// that weak couplings (u far below machine epsilon * J) stay resolvable.
double solve_half_line(const ModelParams& params, int sign) {
  const double J = params.J();
  const double gp2 = params.g_prime() * params.g_prime();
  auto f = [&](double u) {
    const double w = sign * (2.0 * J + u);
    const double root = std::sqrt(u * (4.0 * J + u));
    return w - params.Omega() - sign * gp2 / root;
  };
  // f is monotone increasing in w on each half-line: for sign=+1 it increases
  // with u, for sign=-1 it decreases with u.
  double lo = 2.0 * J * 1e-12;
  double hi = params.Omega() * params.Omega() + gp2 + 10.0;
  auto val = [&](double u) { return sign * f(u); };
  while (val(lo) > 0.0 && lo > 1e-300) lo *= 1e-6;
  if (val(lo) > 0.0 || val(hi) < 0.0) {
    std::ostringstream os;
    os << "bound_state_energies: no sign change on the " << (sign > 0 ? "upper" : "lower")
       << " half-line";
    throw NumericError(os.str());
  }
  // Bisection in log(u), then Newton in u.
  double a = std::log(lo), b = std::log(hi);
  for (int it = 0; it < 200 && b - a > 1e-3; ++it) {
    const double m = 0.5 * (a + b);
    (val(std::exp(m)) > 0.0 ? b : a) = m;
  }
  double u = std::exp(0.5 * (a + b));
  for (int it = 0; it < 100; ++it) {
    const double root = std::sqrt(u * (4.0 * J + u));
    const double droot = (2.0 * J + u) / root;
    const double fu = val(u);
    const double dfu = 1.0 + gp2 * droot / (root * root);
    double next = u - fu / dfu;
    if (!(next > 0.0)) next = 0.5 * u;
    const double step = std::abs(next - u);
    u = next;
    if (step <= 1e-16 * u) break;
  }
  if (!(std::abs(val(u)) <= 1e-9 * (1.0 + std::abs(params.Omega())))) {
    throw NumericError("bound_state_energies: Newton refinement did not converge");
  }
  return sign * (2.0 * J + u);
}

}  // namespace

std::pair<double, double> bound_state_energies(const ModelParams& params) {
  if (!(params.g_prime() > 0.0)) throw DomainError("bound_state_energies: requires g' > 0");
  if (params.Omega() == 0.0) {
    const double J = params.J();
    const double gp = params.g_prime();
    const double w = std::sqrt(2.0 * J * J + std::sqrt(4.0 * std::pow(J, 4) + std::pow(gp, 4)));
    return {w, -w};
  }
  return {solve_half_line(params, +1), solve_half_line(params, -1)};
}

double bound_residue(const ModelParams& params, Branch branch) {
  const auto [wp, wm] = bound_state_energies(params);
  const double w = branch == Branch::Plus ? wp : wm;
  if (params.Omega() == 0.0) {
    const double J = params.J();
    const double gp4 = std::pow(params.g_prime(), 4);
    return gp4 / (2.0 * w * w * (w * w - 2.0 * J * J));
  }
  const double dI = self_energy_derivative(params, cplx(w, 0.0)).real();
  return 1.0 / (1.0 - params.g2() * dI);
}

BoundState make_bound_state(const ModelParams& params, Branch branch) {
  const auto [wp, wm] = bound_state_energies(params);
  return {branch, branch == Branch::Plus ? wp : wm, bound_residue(params, branch), params};
}

cplx bound_amplitude_k(const BoundState& state, double k) {
  return std::sqrt(state.residue) * state.params.g() /
         (state.omega + 2.0 * state.params.J() * std::cos(k));
}

double bound_decay_ratio(const BoundState& state) {
  const double J = state.params.J();
  const double w = state.omega;
  const double s = w > 0 ? 1.0 : -1.0;
  const double root = std::sqrt((w - 2.0 * J) * (w + 2.0 * J));
  return (-w + s * root) / (2.0 * J);
}

double bound_amplitude_x(const BoundState& state, long x) {
  const double J = state.params.J();
  const double w = state.omega;
  const double s = w > 0 ? 1.0 : -1.0;
  const double root = std::sqrt((w - 2.0 * J) * (w + 2.0 * J));
  const double pref = s * state.params.g_prime() * std::sqrt(state.residue) / root;
  return pref * std::pow(bound_decay_ratio(state), static_cast<double>(std::labs(x)));
}

}  // namespace wgqed
