#include "wgqed/smatrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>
#include <utility>

#include "wgqed/errors.hpp"
#include "wgqed/quadrature.hpp"

namespace wgqed {

namespace {

constexpr cplx kI{0.0, 1.0};

// Half-width (in units of 1/s) beyond which |f|^2 / |f|^2_max < 1e-15.
constexpr double kSupportSigmas = 6.0;

void require_zero_omega(const ModelParams& params, const char* who) {
  if (params.Omega() != 0.0) {
    std::ostringstream os;
    os << who << ": channel-1 formulas require Omega = 0 (got " << params.Omega() << ")";
    throw DomainError(os.str());
  }
}

double jacobian(const ModelParams& params, double omega) {
  const double e = 2.0 * params.J();
  return std::sqrt(std::max(0.0, e * e - omega * omega));
}

// Sum over the four momentum sign choices at fixed photon energies.
cplx sign_sum(const ModelParams& params, const TwoPhotonPacket& f, double w1, double w2) {
  const double k1 = momentum_of_energy(params, w1);
  const double k2 = momentum_of_energy(params, w2);
  return f(k1, k2) + f(-k1, k2) + f(-k1, -k2) + f(k1, -k2);
}

struct Window {
  double lo, hi;
  bool empty() const { return !(hi > lo); }
};

// Delta interval on the shell of total energy E where both photons lie inside the packet window.
Window shell_window(const ModelParams& params, const TwoPhotonPacket& f, double E) {
  const auto [wlo, whi] = f.energy_window(params);
  const auto shell = energy_shell(params, E);
  return {std::max({shell.delta_lo, wlo - 0.5 * E, 0.5 * E - whi}),
          std::min({shell.delta_hi, whi - 0.5 * E, 0.5 * E - wlo})};
}

// Gauss-Legendre on [lo, hi]; ends that coincide with the band-square edge get a
// substitution that absorbs the 1/sqrt(4J^2 - w^2) singularity.
template <class F>
cplx shell_quadrature(F&& f, double lo, double hi, bool soft_lo, bool soft_hi, int n) {
  const GaussRule& rule = gauss_legendre(n);
  cplx sum = 0.0;
  if (!soft_lo && !soft_hi) {
    const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * h * f(c + h * rule.nodes[i]);
    return sum;
  }
  const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo), len = hi - lo;
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (1.0 + rule.nodes[i]);  // u in (0, 1)
    const double wu = 0.5 * rule.weights[i];
    if (soft_lo && soft_hi) {
      // x = c + h sin(theta)
      const double t = 0.5 * kPi * rule.nodes[i];
      sum += rule.weights[i] * 0.5 * kPi * h * std::cos(t) * f(c + h * std::sin(t));
    } else if (soft_lo) {
      sum += wu * 2.0 * len * u * f(lo + len * u * u);
    } else {
      sum += wu * 2.0 * len * u * f(hi - len * u * u);
    }
  }
  return sum;
}

}  // namespace

OnePhotonRT one_photon_rt(const ModelParams& params, double k) {
  const double s = std::abs(std::sin(k));
  if (!(s > 1e-12)) {
    std::ostringstream os;
    os << "one_photon_rt: k = " << k << " is at a band edge (zero group speed)";
    throw DomainError(os.str());
  }
  const double gp2 = params.g_prime() * params.g_prime();
  const double twoJ = 2.0 * params.J();
  const cplx r = -gp2 / (gp2 + kI * (twoJ * std::cos(k) + params.Omega()) * twoJ * s);
  return {k, r, 1.0 + r};
}

BoundToBoundRT bound_to_bound_rt(const ModelParams& params, double k, Branch branch, int order,
                                 const QuadratureConfig& qc) {
  require_zero_omega(params, "bound_to_bound_rt");
  const double s = std::abs(std::sin(k));
  if (!(s > 1e-12)) throw DomainError("bound_to_bound_rt: k at a band edge");
  if (params.g_prime() == 0.0) return {0.0, 1.0};
  const auto bs = make_bound_state(params, branch);
  const double wk = dispersion(params, k);
  const cplx z(wk + bs.omega, qc.eta);
  const cplx u = u_partial_energy(params, z, wk, wk, order, qc).value;
  const cplx r = -2.0 * kPi * kI * bs.residue * params.g2() * u / (2.0 * params.J() * s);
  return {r, 1.0 + r};
}

void WavepacketSpec::validate() const {
  if (!(s > 0.0)) throw DomainError("WavepacketSpec: width s must be positive");
  if (!std::isfinite(k0) || !std::isfinite(xc)) throw DomainError("WavepacketSpec: non-finite field");
  const double lost = 0.5 * std::erfc(s * (kPi - k0)) + 0.5 * std::erfc(s * (kPi + k0));
  if (lost > 1e-3) {
    std::ostringstream os;
    os << "WavepacketSpec: packet too narrow in space (s = " << s << "); " << lost
       << " of the norm lies outside [-pi, pi]";
    throw DomainError(os.str());
  }
}

std::pair<double, double> WavepacketSpec::k_support() const {
  const double w = kSupportSigmas / s;
  return {std::max(-kPi, k0 - w), std::min(kPi, k0 + w)};
}

cplx gaussian_packet_k(const WavepacketSpec& spec, double k) {
  const double d = k - spec.k0;
  return std::pow(spec.s * spec.s / kPi, 0.25) * std::exp(-0.5 * spec.s * spec.s * d * d) *
         std::exp(-kI * d * spec.xc);
}

cplx gaussian_packet_x(const WavepacketSpec& spec, double x) {
  const double d = x - spec.xc;
  return std::pow(kPi * spec.s * spec.s, -0.25) * std::exp(-d * d / (2.0 * spec.s * spec.s)) *
         std::exp(kI * spec.k0 * x);
}

TwoPhotonPacket::TwoPhotonPacket(const WavepacketSpec& a) : a_(a), b_(a) { a_.validate(); }

TwoPhotonPacket::TwoPhotonPacket(const WavepacketSpec& a, const WavepacketSpec& b)
    : a_(a), b_(b), identical_(a.k0 == b.k0 && a.s == b.s && a.xc == b.xc) {
  a_.validate();
  b_.validate();
  if (!identical_) {
    // |fa fb + fb fa|^2 integrates to 2 + 2 |<fa|fb>|^2.
    const GaussRule rule = gauss_legendre(400, -kPi, kPi);
    cplx overlap = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      overlap += rule.weights[i] * std::conj(gaussian_packet_k(a_, rule.nodes[i])) *
                 gaussian_packet_k(b_, rule.nodes[i]);
    norm_ = std::sqrt(2.0 + 2.0 * std::norm(overlap));
  }
}

cplx TwoPhotonPacket::operator()(double k1, double k2) const {
  if (identical_) return gaussian_packet_k(a_, k1) * gaussian_packet_k(a_, k2);
  return (gaussian_packet_k(a_, k1) * gaussian_packet_k(b_, k2) +
          gaussian_packet_k(b_, k1) * gaussian_packet_k(a_, k2)) /
         norm_;
}

std::pair<double, double> TwoPhotonPacket::energy_window(const ModelParams& params) const {
  double lo = 1e300, hi = -1e300;
  for (const auto* spec : {&a_, &b_}) {
    const auto [ka, kb] = spec->k_support();
    std::vector<double> probe{ka, kb};
    if (ka < 0.0 && kb > 0.0) probe.push_back(0.0);
    for (double k : probe) {
      lo = std::min(lo, dispersion(params, k));
      hi = std::max(hi, dispersion(params, k));
    }
  }
  return {lo, hi};
}

EnergyShellDomain energy_shell(const ModelParams& params, double E) {
  const double twoJ = 2.0 * params.J();
  EnergyShellDomain d;
  d.E = E;
  d.delta_lo = std::max(-twoJ + 0.5 * E, -twoJ - 0.5 * E);
  d.delta_hi = std::min(twoJ - 0.5 * E, twoJ + 0.5 * E);
  d.p_lo = 0.0;
  d.p_hi = kPi;
  return d;
}

EnergyShellDomain bound_channel_shell(const ModelParams& params, double omega_bound) {
  const double twoJ = 2.0 * params.J();
  const double wlo = std::max(-twoJ, -2.0 * twoJ - omega_bound);
  const double whi = std::min(twoJ, 2.0 * twoJ - omega_bound);
  EnergyShellDomain d;
  // E ranges over [wlo, whi] + omega_bound; the Delta limits are per-E.
  d.E = omega_bound;
  d.p_lo = momentum_of_energy(params, wlo);
  d.p_hi = momentum_of_energy(params, whi);
  return d;
}

double momentum_of_energy(const ModelParams& params, double omega) {
  const double c = std::clamp(-omega / (2.0 * params.J()), -1.0, 1.0);
  return std::acos(c);
}

cplx free_to_bound_amplitude_energy(const ModelParams& params, double omega_p, Branch branch,
                                    double omega_k1, double omega_k2, int order,
                                    const QuadratureConfig& qc) {
  require_zero_omega(params, "free_to_bound_amplitude");
  if (params.g_prime() == 0.0) return 0.0;
  const auto bs = make_bound_state(params, branch);
  const cplx z(omega_p + bs.omega, qc.eta);
  const double g = params.g();
  cplx sum = 0.0;
  for (double wk : {omega_k1, omega_k2}) {
    const cplx u = u_partial_energy(params, z, omega_p, wk, order, qc).value;
    sum += u / h_function_energy(params, z, wk);
  }
  return g * g * g * std::sqrt(bs.residue) * sum;
}

cplx free_to_bound_amplitude(const ModelParams& params, double p, Branch branch, double k1,
                             double k2, int order, const QuadratureConfig& qc) {
  return free_to_bound_amplitude_energy(params, dispersion(params, p), branch,
                                        dispersion(params, k1), dispersion(params, k2), order, qc);
}

void ShellGrids::validate() const {
  if (n_out < 2 || n_out % 2 != 0) throw DomainError("ShellGrids: n_out must be even and >= 2");
  if (n_p < 4 || n_delta < 4) throw DomainError("ShellGrids: need at least 4 quadrature nodes");
  if (!(rel_tol > 0.0)) throw DomainError("ShellGrids: rel_tol must be positive");
  if (max_refinements < 0 || max_refinements > 6) throw DomainError("ShellGrids: max_refinements must be in [0, 6]");
}

namespace {

std::vector<double> cell_centred_grid(int n) {
  std::vector<double> p(n);
  const double h = 2.0 * kPi / n;
  for (int i = 0; i < n; ++i) p[i] = -kPi + (i + 0.5) * h;
  return p;
}

struct ShellValue {
  cplx value;
  double error;
};

// A(w_p) = (-2 pi i / sqrt 2) int dDelta T / (sqrt sqrt) sum_signs f on the shell E = w_p + w_b.
ShellValue bound_shell_amplitude(const ModelParams& params, const TwoPhotonPacket& f,
                                 double omega_p, double omega_b, Branch branch, int order,
                                 const QuadratureConfig& qc, int n_delta) {
  const double E = omega_p + omega_b;
  const Window w = shell_window(params, f, E);
  if (w.empty()) return {0.0, 0.0};
  const auto shell = energy_shell(params, E);
  const bool soft_lo = w.lo <= shell.delta_lo + 1e-12;
  const bool soft_hi = w.hi >= shell.delta_hi - 1e-12;
  auto integrand = [&](double delta) -> cplx {
    const double w1 = 0.5 * E + delta, w2 = 0.5 * E - delta;
    const double jac = jacobian(params, w1) * jacobian(params, w2);
    if (jac == 0.0) return 0.0;
    const cplx sf = sign_sum(params, f, w1, w2);
    if (std::abs(sf) < 1e-300) return 0.0;
    return free_to_bound_amplitude_energy(params, omega_p, branch, w1, w2, order, qc) * sf / jac;
  };
  const cplx fine = shell_quadrature(integrand, w.lo, w.hi, soft_lo, soft_hi, n_delta);
  const cplx coarse =
      shell_quadrature(integrand, w.lo, w.hi, soft_lo, soft_hi, std::max(2, (2 * n_delta) / 3));
  const cplx s = -2.0 * kPi * kI / std::sqrt(2.0);
  return {s * fine, std::abs(s) * std::abs(fine - coarse)};
}

}  // namespace

FreeToBoundOutState free_to_bound_out_state(const ModelParams& params, const TwoPhotonPacket& f,
                                            Branch branch, int order, const QuadratureConfig& qc,
                                            const ShellGrids& grids) {
  require_zero_omega(params, "free_to_bound_out_state");
  grids.validate();
  qc.validate();
  FreeToBoundOutState out;
  out.branch = branch;
  out.p = cell_centred_grid(grids.n_out);
  out.amplitude.assign(out.p.size(), 0.0);
  if (params.g_prime() == 0.0) return out;

  const double wb = make_bound_state(params, branch).omega;
  const double twoJ = 2.0 * params.J();
  const auto [flo, fhi] = f.energy_window(params);
  const double wp_lo = std::max({-twoJ, -2.0 * twoJ - wb, 2.0 * flo - wb});
  const double wp_hi = std::min({twoJ, 2.0 * twoJ - wb, 2.0 * fhi - wb});
  if (!(wp_hi > wp_lo)) return out;

  // The amplitude depends on p only through omega_p, so integrate over p in
  // [0, pi] and double.
  const double p_lo = momentum_of_energy(params, wp_lo);
  const double p_hi = momentum_of_energy(params, wp_hi);
  auto integrate = [&](int n_p, int n_delta) {
    const GaussRule rule = gauss_legendre(n_p, p_lo, p_hi);
    double prob = 0.0, err = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const auto a = bound_shell_amplitude(params, f, dispersion(params, rule.nodes[i]), wb, branch,
                                           order, qc, n_delta);
      prob += 2.0 * rule.weights[i] * std::norm(a.value);
      err += 2.0 * rule.weights[i] * 2.0 * std::abs(a.value) * a.error;
    }
    // Outer-rule error from a half-size rule on the same interval.
    const GaussRule half = gauss_legendre(std::max(2, n_p / 2), p_lo, p_hi);
    double prob_half = 0.0;
    for (std::size_t i = 0; i < half.nodes.size(); ++i) {
      const auto a = bound_shell_amplitude(params, f, dispersion(params, half.nodes[i]), wb, branch,
                                           order, qc, n_delta);
      prob_half += 2.0 * half.weights[i] * std::norm(a.value);
    }
    return std::pair{prob, err + std::abs(prob - prob_half)};
  };
  // Double both grids until the estimate meets rel_tol.
  int n_p = grids.n_p, n_delta = grids.n_delta;
  auto [prob, err] = integrate(n_p, n_delta);
  for (int r = 0; r < grids.max_refinements && err > grids.rel_tol * std::max(prob, 1e-12); ++r) {
    n_p *= 2;
    n_delta *= 2;
    std::tie(prob, err) = integrate(n_p, n_delta);
  }
  out.trap_probability = prob;
  out.quadrature_error = err;
  if (err > grids.rel_tol * std::max(prob, 1e-12)) {
    std::ostringstream os;
    os << "free_to_bound_out_state: shell quadrature error " << err << " exceeds "
       << grids.rel_tol << " relative (trap probability " << prob << ") at n_p=" << n_p
       << ", n_delta=" << n_delta << "; increase n_p / n_delta";
    throw NumericError(os.str());
  }
  for (std::size_t i = 0; i < out.p.size(); ++i) {
    const double wp = dispersion(params, out.p[i]);
    if (wp < wp_lo || wp > wp_hi) continue;
    out.amplitude[i] =
        bound_shell_amplitude(params, f, wp, wb, branch, order, qc, n_delta).value;
  }
  return out;
}

ShellBParts free_to_free_b_parts(const ModelParams& params, double omega_p1, double omega_p2,
                                 double delta, int order, const QuadratureConfig& qc) {
  const double E = omega_p1 + omega_p2;
  const double wk1 = 0.5 * E + delta, wk2 = 0.5 * E - delta;
  const cplx z(E, qc.eta);
  const cplx hp1 = h_function_energy(params, z, omega_p1);
  const cplx hp2 = h_function_energy(params, z, omega_p2);
  const cplx hk1 = h_function_energy(params, z, wk1);
  const cplx hk2 = h_function_energy(params, z, wk2);
  const double g2 = params.g2();
  const cplx pref = -2.0 * kPi * kI * g2 * g2;
  ShellBParts parts;
  parts.c_minus = pref * (-1.0 / (hp1 * hk1) + 1.0 / (hp2 * hk2));
  parts.c_plus = pref * (1.0 / (hp1 * hk2) - 1.0 / (hp2 * hk1));
  parts.regular = 0.0;
  if (order >= 1 && params.g_prime() != 0.0) {
    const double wp[2] = {omega_p1, omega_p2};
    const double wk[2] = {wk1, wk2};
    const cplx hp[2] = {hp1, hp2};
    const cplx hk[2] = {hk1, hk2};
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) {
        const auto ps = u_partial_energy(params, z, wp[m], wk[n], order, qc);
        parts.regular += pref * (ps.value - ps.terms[0]) / (hp[m] * hk[n]);
      }
  }
  return parts;
}

cplx free_to_free_b(const ModelParams& params, double p1, double p2, double k1, double k2,
                    int order, const QuadratureConfig& qc) {
  const double wp1 = dispersion(params, p1), wp2 = dispersion(params, p2);
  const double wk1 = dispersion(params, k1), wk2 = dispersion(params, k2);
  if (std::abs(wp1 + wp2 - wk1 - wk2) > 1e-9) {
    std::ostringstream os;
    os << "free_to_free_b: momenta off the energy shell (mismatch " << (wp1 + wp2 - wk1 - wk2)
       << ")";
    throw DomainError(os.str());
  }
  const double delta = 0.5 * (wk1 - wk2);
  const double D = 0.5 * (wp1 - wp2);
  if (delta == D || delta == -D) throw PoleError("free_to_free_b: bare-vertex pole", delta);
  const auto parts = free_to_free_b_parts(params, wp1, wp2, delta, order, qc);
  return parts.regular + parts.c_plus / (delta - D) + parts.c_minus / (delta + D);
}

cplx free_to_free_shell_integral(const ModelParams& params, const TwoPhotonPacket& f, double p1,
                                 double p2, int order, const QuadratureConfig& qc) {
  if (params.g_prime() == 0.0) return 0.0;
  const double wp1 = dispersion(params, p1), wp2 = dispersion(params, p2);
  const double E = wp1 + wp2;
  const double D = 0.5 * (wp1 - wp2);
  Window w = shell_window(params, f, E);
  if (w.empty()) return 0.0;
  const auto shell = energy_shell(params, E);
  // Keep poles off the window ends; the packet is negligible there anyway.
  for (double x0 : {D, -D}) {
    if (std::abs(x0 - w.lo) < 1e-10 && w.lo - 1e-6 > shell.delta_lo) w.lo -= 1e-6;
    if (std::abs(x0 - w.hi) < 1e-10 && w.hi + 1e-6 < shell.delta_hi) w.hi += 1e-6;
  }
  auto weight = [&](double delta) -> cplx {
    const double w1 = 0.5 * E + delta, w2 = 0.5 * E - delta;
    const double jac = jacobian(params, w1) * jacobian(params, w2);
    if (jac == 0.0) return 0.0;
    return sign_sum(params, f, w1, w2) / jac;
  };
  QuadratureOptions opt;
  opt.rel_tol = 1e-9;
  opt.abs_tol = 1e-15;
  cplx total = 0.0;
  if (qc.principal_value) {
    auto gp = [&](double d) {
      return free_to_free_b_parts(params, wp1, wp2, d, 0, qc).c_plus * weight(d);
    };
    auto gm = [&](double d) {
      return free_to_free_b_parts(params, wp1, wp2, d, 0, qc).c_minus * weight(d);
    };
    total += principal_value(gp, w.lo, w.hi, D, opt).value;
    total += principal_value(gm, w.lo, w.hi, -D, opt).value;
  } else {
    // Finite-eta alternative: the real part of 1/(x + i eta) as the kernel.
    const double eta = qc.eta;
    auto g = [&](double d) {
      const auto parts = free_to_free_b_parts(params, wp1, wp2, d, 0, qc);
      const double xp = d - D, xm = d + D;
      return (parts.c_plus * xp / (xp * xp + eta * eta) +
              parts.c_minus * xm / (xm * xm + eta * eta)) *
             weight(d);
    };
    const auto pts = make_breakpoints(w.lo, w.hi, {D, -D});
    total += integrate(g, pts, opt).value;
  }
  if (order >= 1) {
    auto reg = [&](double d) {
      return free_to_free_b_parts(params, wp1, wp2, d, order, qc).regular * weight(d);
    };
    const ShellGrids defaults;
    total += shell_quadrature(reg, w.lo, w.hi, w.lo <= shell.delta_lo + 1e-12,
                              w.hi >= shell.delta_hi - 1e-12, defaults.n_delta);
  }
  return 0.5 * total;
}

FreeToFreeOutState free_to_free_out_state(const ModelParams& params, const TwoPhotonPacket& f,
                                          int order, const QuadratureConfig& qc,
                                          const ShellGrids& grids) {
  grids.validate();
  qc.validate();
  FreeToFreeOutState out;
  out.p = cell_centred_grid(grids.n_out);
  const std::size_t n = out.p.size();
  out.amplitude.assign(n * n, 0.0);
  std::vector<OnePhotonRT> rt(n);
  for (std::size_t i = 0; i < n; ++i) rt[i] = one_photon_rt(params, out.p[i]);
  const auto [flo, fhi] = f.energy_window(params);
  const double cell = 2.0 * kPi / static_cast<double>(n);
  double norm = 0.0;
  for (std::size_t i1 = 0; i1 < n; ++i1) {
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      const double p1 = out.p[i1], p2 = out.p[i2];
      const auto& a = rt[i1];
      const auto& b = rt[i2];
      cplx F = f(p1, p2) * a.t * b.t + f(-p1, -p2) * a.r * b.r + f(p1, -p2) * a.t * b.r +
               f(-p1, p2) * a.r * b.t;
      const double E = dispersion(params, p1) + dispersion(params, p2);
      if (E > 2.0 * flo && E < 2.0 * fhi)
        F += free_to_free_shell_integral(params, f, p1, p2, order, qc);
      out.amplitude[i1 * n + i2] = F;
      norm += std::norm(F);
    }
  }
  out.norm = norm * cell * cell;
  return out;
}

PacketRT bound_to_bound_packet(const ModelParams& params, const WavepacketSpec& spec,
                               Branch branch, int order, const QuadratureConfig& qc, int n_k) {
  spec.validate();
  auto [lo, hi] = spec.k_support();
  lo = std::max(lo, 1e-9);
  hi = std::min(hi, kPi - 1e-9);
  if (!(hi > lo)) throw DomainError("bound_to_bound_packet: packet not in (0, pi)");
  const GaussRule rule = gauss_legendre(n_k, lo, hi);
  PacketRT out;
  double mass = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double k = rule.nodes[i];
    const double w = rule.weights[i] * std::norm(gaussian_packet_k(spec, k));
    const auto rt = bound_to_bound_rt(params, k, branch, order, qc);
    out.R += w * std::norm(rt.r);
    out.T += w * std::norm(rt.t);
    mass += w;
  }
  if (std::abs(1.0 - mass) > 1e-8) {
    std::ostringstream os;
    os << "bound_to_bound_packet: packet mass " << mass
       << " inside (0, pi); band-edge packets are not supported";
    throw DomainError(os.str());
  }
  return out;
}

PacketRT one_photon_packet(const ModelParams& params, const WavepacketSpec& spec, int n_k) {
  spec.validate();
  auto [lo, hi] = spec.k_support();
  lo = std::max(lo, 1e-9);
  hi = std::min(hi, kPi - 1e-9);
  const GaussRule rule = gauss_legendre(n_k, lo, hi);
  PacketRT out;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double w = rule.weights[i] * std::norm(gaussian_packet_k(spec, rule.nodes[i]));
    const auto rt = one_photon_rt(params, rule.nodes[i]);
    out.R += w * std::norm(rt.r);
    out.T += w * std::norm(rt.t);
  }
  return out;
}

}  // namespace wgqed
