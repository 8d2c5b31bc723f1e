#include "wgqed/vertex.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "wgqed/errors.hpp"

namespace wgqed {

void QuadratureConfig::validate() const {
  if (!(eta > 0.0)) throw DomainError("QuadratureConfig: eta must be positive");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw DomainError("QuadratureConfig: tolerances must be positive");
  if (max_depth < 1) throw DomainError("QuadratureConfig: max_depth must be >= 1");
}

QuadratureOptions QuadratureConfig::outer() const {
  QuadratureOptions o;
  o.rel_tol = rel_tol;
  o.abs_tol = abs_tol;
  o.max_depth = max_depth;
  // Pole denominators of size ~eta carry absolute rounding ~eps * band width.
  o.noise = std::numeric_limits<double>::epsilon() * 4.0 / eta;
  return o;
}

QuadratureOptions QuadratureConfig::inner() const {
  QuadratureOptions o = outer();
  o.rel_tol *= 0.1;
  o.abs_tol *= 0.1;
  return o;
}

cplx h_function_energy(const ModelParams& params, cplx z, double omega_p) {
  return z - params.Omega() - omega_p - params.g2() * self_energy(params, z - omega_p);
}

cplx h_function(const ModelParams& params, cplx z, double p) {
  return h_function_energy(params, z, dispersion(params, p));
}

std::vector<double> kernel_singular_energies(const ModelParams& params, cplx z) {
  const double x = z.real();
  const double edge = 2.0 * params.J();
  std::vector<double> e{x - edge, x + edge};
  if (params.g_prime() > 0.0) {
    const auto [wp, wm] = bound_state_energies(params);
    e.push_back(x - wp);
    e.push_back(x - wm);
  } else {
    e.push_back(x - params.Omega());
  }
  return e;
}

std::vector<double> energies_to_breaks(const ModelParams& params, const std::vector<double>& energies) {
  const double edge = 2.0 * params.J();
  std::vector<double> v;
  for (double e : energies) {
    if (e > -edge && e < edge) v.push_back(std::acos(-e / edge));
  }
  return make_breakpoints(0.0, kPi, v);
}

namespace {

struct Kernel {
  const ModelParams& params;
  cplx z;
  std::vector<double> fixed;  // singular energies of H(z; v)

  Kernel(const ModelParams& p, cplx zz) : params(p), z(zz), fixed(kernel_singular_energies(p, zz)) {}

  double omega(double v) const { return -2.0 * params.J() * std::cos(v); }
  cplx inv_h(double ov) const { return 1.0 / h_function_energy(params, z, ov); }

  std::vector<double> breaks(std::initializer_list<double> extra) const {
    std::vector<double> e = fixed;
    e.insert(e.end(), extra.begin(), extra.end());
    return energies_to_breaks(params, e);
  }
};

void require_eta(cplx z, const QuadratureConfig& qc, const char* who) {
  if (z.imag() < qc.eta * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << who << ": Im z = " << z.imag() << " is below the configured eta = " << qc.eta;
    throw DomainError(os.str());
  }
}

cplx v0(cplx z, double ep, double ek) { return 1.0 / (z - ep - ek); }

// V_1 = g^2 int dv 1 / ((z - e_p - w_v) H(z; v) (z - w_v - e_k)), integrand even in v.
cplx v1_closed(const Kernel& K, double ep, double ek, const QuadratureOptions& opt) {
  const double x = K.z.real();
  auto f = [&](double v) {
    const double ov = K.omega(v);
    return K.inv_h(ov) / ((K.z - ep - ov) * (K.z - ov - ek));
  };
  const auto pts = K.breaks({x - ep, x - ek, ep, ek});
  return 2.0 * K.params.g2() * integrate(f, pts, opt).value;
}

// Printed V_2 with outer variable v2 (attached to p) and inner v1.
cplx v2_closed(const Kernel& K, double ep, double ek, const QuadratureOptions& outer,
               const QuadratureOptions& inner) {
  const double x = K.z.real();
  const auto outer_pts = K.breaks({x - ep, x - ek, ep, ek});
  auto f_outer = [&](double v2) {
    const double o2 = K.omega(v2);
    auto f_inner = [&](double v1) {
      const double o1 = K.omega(v1);
      return K.inv_h(o1) / ((K.z - o2 - o1) * (K.z - o1 - ek));
    };
    const auto inner_pts = K.breaks({x - o2, x - ek, o2, ek});
    const cplx in = 2.0 * integrate(f_inner, inner_pts, inner).value;
    return in * K.inv_h(o2) / (K.z - ep - o2);
  };
  const double g2 = K.params.g2();
  return 2.0 * g2 * g2 * integrate(f_outer, outer_pts, outer).value;
}

// Same double integral, outer variable v1 (attached to k) and inner v2.
cplx v2_swapped(const Kernel& K, double ep, double ek, const QuadratureOptions& outer,
                const QuadratureOptions& inner) {
  const double x = K.z.real();
  const auto outer_pts = K.breaks({x - ep, x - ek, ep, ek});
  auto f_outer = [&](double v1) {
    const double o1 = K.omega(v1);
    auto f_inner = [&](double v2) {
      const double o2 = K.omega(v2);
      return K.inv_h(o2) / ((K.z - ep - o2) * (K.z - o2 - o1));
    };
    const auto inner_pts = K.breaks({x - o1, x - ep, o1, ep});
    const cplx in = 2.0 * integrate(f_inner, inner_pts, inner).value;
    return in * K.inv_h(o1) / (K.z - o1 - ek);
  };
  const double g2 = K.params.g2();
  return 2.0 * g2 * g2 * integrate(f_outer, outer_pts, outer).value;
}

cplx recursive(const Kernel& K, int n, double ep, double ek, const QuadratureConfig& qc,
               QuadratureOptions opt) {
  if (n == 0) return v0(K.z, ep, ek);
  const double x = K.z.real();
  QuadratureOptions tighter = opt;
  tighter.rel_tol *= 0.1;
  tighter.abs_tol *= 0.1;
  auto f = [&](double v) {
    const double ov = K.omega(v);
    return recursive(K, n - 1, ov, ek, qc, tighter) * K.inv_h(ov) / (K.z - ep - ov);
  };
  const auto pts = K.breaks({x - ep, x - ek, ep, ek});
  return 2.0 * K.params.g2() * integrate(f, pts, opt).value;
}

}  // namespace

cplx vertex_v_energy(const ModelParams& params, int n, cplx z, double omega_p, double omega_k,
                     const QuadratureConfig& qc) {
  if (n < 0) throw DomainError("vertex_v: order must be non-negative");
  if (n == 0) return v0(z, omega_p, omega_k);
  qc.validate();
  require_eta(z, qc, "vertex_v");
  const Kernel K(params, z);
  if (n == 1) return v1_closed(K, omega_p, omega_k, qc.outer());
  if (n == 2) return v2_closed(K, omega_p, omega_k, qc.outer(), qc.inner());
  return recursive(K, n, omega_p, omega_k, qc, qc.outer());
}

cplx vertex_v(const ModelParams& params, int n, cplx z, double p, double k,
              const QuadratureConfig& qc) {
  return vertex_v_energy(params, n, z, dispersion(params, p), dispersion(params, k), qc);
}

cplx vertex_v_recursive(const ModelParams& params, int n, cplx z, double p, double k,
                        const QuadratureConfig& qc) {
  if (n < 0) throw DomainError("vertex_v_recursive: order must be non-negative");
  qc.validate();
  if (n > 0) require_eta(z, qc, "vertex_v_recursive");
  const Kernel K(params, z);
  return recursive(K, n, dispersion(params, p), dispersion(params, k), qc, qc.outer());
}

cplx vertex_v2_swapped(const ModelParams& params, cplx z, double omega_p, double omega_k,
                       const QuadratureConfig& qc) {
  qc.validate();
  require_eta(z, qc, "vertex_v2_swapped");
  const Kernel K(params, z);
  return v2_swapped(K, omega_p, omega_k, qc.outer(), qc.inner());
}

PartialSum u_partial_energy(const ModelParams& params, cplx z, double omega_p, double omega_k,
                            int order, const QuadratureConfig& qc) {
  if (order < 0) throw DomainError("u_partial: order must be non-negative");
  PartialSum out;
  cplx sum = 0.0;
  for (int n = 0; n <= order; ++n) {
    // All corrections carry powers of g^2; skip the quadrature when decoupled.
    const cplx term = (n > 0 && params.g_prime() == 0.0)
                          ? cplx(0.0)
                          : vertex_v_energy(params, n, z, omega_p, omega_k, qc);
    sum += term;
    out.terms.push_back(term);
    out.partial.push_back(sum);
  }
  out.value = sum;
  return out;
}

PartialSum u_partial(const ModelParams& params, cplx z, double p, double k, int order,
                     const QuadratureConfig& qc) {
  return u_partial_energy(params, z, dispersion(params, p), dispersion(params, k), order, qc);
}

namespace {

// Composite Gauss-Legendre panels on [0, pi]: every segment between singular
// breaks is cut geometrically towards both ends down to ~eta, then the
// remaining node budget is spread uniformly.
void build_grid(const std::vector<double>& breaks, double eta, int grid_size,
                std::vector<double>& nodes, std::vector<double>& weights) {
  constexpr int kOrder = 8;
  std::vector<std::pair<double, double>> panels;
  for (std::size_t s = 0; s + 1 < breaks.size(); ++s) {
    const double a = breaks[s], b = breaks[s + 1];
    const double len = b - a;
    std::vector<double> cuts{a, b};
    const double h_min = std::max(eta, 1e-12);
    for (double h = 0.25 * len; h > h_min; h *= 0.25) {
      cuts.push_back(a + h);
      cuts.push_back(b - h);
    }
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      if (cuts[i + 1] > cuts[i]) panels.emplace_back(cuts[i], cuts[i + 1]);
  }
  // Spread the remaining budget by splitting the widest panels.
  const int budget_panels = std::max<int>(panels.size(), grid_size / kOrder);
  while (static_cast<int>(panels.size()) < budget_panels) {
    auto widest = std::max_element(panels.begin(), panels.end(), [](auto& l, auto& r) {
      return l.second - l.first < r.second - r.first;
    });
    const auto [a, b] = *widest;
    *widest = {a, 0.5 * (a + b)};
    panels.emplace_back(0.5 * (a + b), b);
  }
  std::sort(panels.begin(), panels.end());
  nodes.clear();
  weights.clear();
  for (const auto& [a, b] : panels) {
    const auto rule = gauss_legendre(kOrder, a, b);
    nodes.insert(nodes.end(), rule.nodes.begin(), rule.nodes.end());
    weights.insert(weights.end(), rule.weights.begin(), rule.weights.end());
  }
}

}  // namespace

NystromSolution u_nystrom(const ModelParams& params, cplx z, double k, int grid_size,
                          const QuadratureConfig& qc) {
  qc.validate();
  require_eta(z, qc, "u_nystrom");
  const Kernel K(params, z);
  const double ek = dispersion(params, k);
  const double x = z.real();
  const auto breaks = K.breaks({x - ek, ek});

  NystromSolution sol;
  sol.params_ = params;
  sol.z_ = z;
  sol.omega_k_ = ek;
  build_grid(breaks, qc.eta, grid_size, sol.nodes_, sol.weights_);
  const int n = static_cast<int>(sol.nodes_.size());

  std::vector<double> omega(n);
  std::vector<cplx> inv_h(n);
  for (int j = 0; j < n; ++j) {
    omega[j] = K.omega(sol.nodes_[j]);
    inv_h[j] = K.inv_h(omega[j]);
  }
  Eigen::MatrixXcd A(n, n);
  Eigen::VectorXcd rhs(n);
  const double g2 = params.g2();
  for (int i = 0; i < n; ++i) {
    rhs(i) = v0(z, omega[i], ek);
    for (int j = 0; j < n; ++j) {
      A(i, j) = -2.0 * g2 * sol.weights_[j] * inv_h[j] / (z - omega[i] - omega[j]);
    }
    A(i, i) += 1.0;
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
  const double rcond = lu.rcond();
  sol.condition_ = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (sol.condition_ > 1e12) {
    std::ostringstream os;
    os << "u_nystrom: ill-conditioned system (condition ~ " << sol.condition_
       << "); increase eta or the grid size";
    throw NumericError(os.str());
  }
  const Eigen::VectorXcd u = lu.solve(rhs);
  sol.residual_ = (A * u - rhs).norm() / rhs.norm();
  sol.values_.assign(u.data(), u.data() + n);
  sol.kernel_factor_.resize(n);
  for (int j = 0; j < n; ++j) sol.kernel_factor_[j] = 2.0 * g2 * sol.weights_[j] * u(j) * inv_h[j];
  return sol;
}

cplx NystromSolution::evaluate(double p) const {
  const double ep = dispersion(params_, p);
  cplx sum = v0(z_, ep, omega_k_);
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double ov = -2.0 * params_.J() * std::cos(nodes_[j]);
    sum += kernel_factor_[j] / (z_ - ep - ov);
  }
  return sum;
}

DeltaSplit resolvent_g5(const ModelParams& params, cplx z, double p, double k, int order,
                        const QuadratureConfig& qc) {
  const cplx hp = h_function(params, z, p);
  const cplx hk = h_function(params, z, k);
  const cplx u = u_partial(params, z, p, k, order, qc).value;
  return {1.0 / hp, params.g2() * u / (hk * hp)};
}

}  // namespace wgqed
