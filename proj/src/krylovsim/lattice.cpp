#include <cmath>
#include <string>

#include "wgqed/errors.hpp"
#include "wgqed/krylovsim.hpp"

namespace wgqed::sim {

LatticeBasis::LatticeBasis(long N, Sector sector) : N_(N), L_((N - 1) / 2), sector_(sector) {
  if (N < 3 || N % 2 == 0) throw DomainError("lattice size must be odd and >= 3, got " + std::to_string(N));
  if (sector != Sector::One && sector != Sector::Two) throw DomainError("unknown excitation sector");
  const auto n = static_cast<std::size_t>(N);
  down_dim_ = sector == Sector::One ? n : n * (n + 1) / 2;
  dim_ = sector == Sector::One ? n + 1 : down_dim_ + n;
}

long LatticeBasis::site(long x) const {
  if (x < -L_ || x > L_) throw DomainError("site " + std::to_string(x) + " outside the lattice");
  return x + L_;
}

std::size_t LatticeBasis::photon(long x) const {
  if (sector_ != Sector::One) throw DomainError("photon() needs the one-excitation sector");
  return static_cast<std::size_t>(site(x));
}

std::size_t LatticeBasis::up() const {
  if (sector_ != Sector::One) throw DomainError("up() needs the one-excitation sector");
  return static_cast<std::size_t>(N_);
}

std::size_t LatticeBasis::pair(long x1, long x2) const {
  if (sector_ != Sector::Two) throw DomainError("pair() needs the two-excitation sector");
  long i = site(x1), j = site(x2);
  if (i > j) std::swap(i, j);
  return row_offset(i) + static_cast<std::size_t>(j - i);
}

std::size_t LatticeBasis::up_photon(long x) const {
  if (sector_ != Sector::Two) throw DomainError("up_photon() needs the two-excitation sector");
  return down_dim_ + static_cast<std::size_t>(site(x));
}

LatticeBasis::Config LatticeBasis::decode(std::size_t index) const {
  if (index >= dim_) throw DomainError("basis index out of range");
  Config c;
  if (sector_ == Sector::One) {
    if (index == static_cast<std::size_t>(N_)) {
      c.up = true;
    } else {
      c.x1 = static_cast<long>(index) - L_;
      c.photons = 1;
    }
    return c;
  }
  if (index >= down_dim_) {
    c.up = true;
    c.x1 = static_cast<long>(index - down_dim_) - L_;
    c.photons = 1;
    return c;
  }
  long i = 0;
  while (i + 1 < N_ && row_offset(i + 1) <= index) ++i;
  c.x1 = i - L_;
  c.x2 = i + static_cast<long>(index - row_offset(i)) - L_;
  c.photons = 2;
  return c;
}

Hamiltonian::Hamiltonian(const ModelParams& params, const LatticeBasis& basis)
    : params_(params), basis_(basis) {}

double Hamiltonian::norm_bound() const {
  const double hop = basis_.sector() == Sector::One ? 2.0 : 4.0 * std::sqrt(2.0);
  return hop * params_.J() + 0.5 * std::abs(params_.Omega()) + std::sqrt(2.0) * params_.g_prime();
}

Vector Hamiltonian::operator*(const Vector& v) const {
  Vector out(v.size());
  apply(v, out);
  return out;
}

void Hamiltonian::apply(const Vector& in, Vector& out) const {
  if (static_cast<std::size_t>(in.size()) != basis_.dim())
    throw DomainError("state dimension does not match the lattice basis");
  out.resize(in.size());
  const double J = params_.J();
  const double half = 0.5 * params_.Omega();
  const double gp = params_.g_prime();
  const long N = basis_.N();
  const long s0 = basis_.L();
  const cplx* a = in.data();
  cplx* o = out.data();

  if (basis_.sector() == Sector::One) {
    for (long i = 0; i < N; ++i) {
      cplx s = -half * a[i];
      if (i > 0) s -= J * a[i - 1];
      if (i + 1 < N) s -= J * a[i + 1];
      o[i] = s;
    }
    o[s0] += gp * a[N];
    o[N] = half * a[N] + gp * a[s0];
    return;
  }

  const double r2 = std::sqrt(2.0);
  const double Jr2 = J * r2;
  const std::size_t dd = basis_.down_dim();
  const cplx* up = a + dd;
  cplx* oup = o + dd;
  auto idx = [&](long i, long j) { return basis_.row_offset(i) + static_cast<std::size_t>(j - i); };

  for (long i = 0; i < N; ++i) {
    const std::size_t row = basis_.row_offset(i);
    const std::size_t row_prev = i > 0 ? basis_.row_offset(i - 1) : 0;
    const std::size_t row_next = i + 1 < N ? basis_.row_offset(i + 1) : 0;
    // Diagonal |2_i>: neighbours (i-1, i) and (i, i+1).
    {
      cplx s = -half * a[row];
      if (i > 0) s -= Jr2 * a[row_prev + 1];
      if (i + 1 < N) s -= Jr2 * a[row + 1];
      o[row] = s;
    }
    for (long j = i + 1; j < N; ++j) {
      cplx s = -half * a[row + (j - i)];
      // first photon i -> i-1, i+1
      if (i > 0) s -= J * a[row_prev + (j - i + 1)];
      if (i + 1 < j)
        s -= J * a[row_next + (j - i - 1)];
      else
        s -= Jr2 * a[idx(j, j)];
      // second photon j -> j+1, j-1
      if (j + 1 < N) s -= J * a[row + (j + 1 - i)];
      if (j - 1 > i)
        s -= J * a[row + (j - 1 - i)];
      else
        s -= Jr2 * a[row];
      o[row + (j - i)] = s;
    }
  }
  // Qubit coupling |1_0 1_y, down> <-> |y, up>; the doubly occupied qubit
  // site carries sqrt(2).
  for (long y = 0; y < N; ++y) {
    const std::size_t k = y == s0 ? idx(s0, s0) : (y < s0 ? idx(y, s0) : idx(s0, y));
    const double c = y == s0 ? gp * r2 : gp;
    o[k] += c * up[y];
    cplx s = half * up[y] + c * a[k];
    if (y > 0) s -= J * up[y - 1];
    if (y + 1 < N) s -= J * up[y + 1];
    oup[y] = s;
  }
}

Eigen::MatrixXcd Hamiltonian::dense() const {
  const auto n = static_cast<Eigen::Index>(basis_.dim());
  if (n > 20000) throw DomainError("dense Hamiltonian requested for a large lattice");
  Eigen::MatrixXcd M(n, n);
  Vector e = Vector::Zero(n), col(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    e.setZero();
    e[c] = 1.0;
    apply(e, col);
    M.col(c) = col;
  }
  return M;
}

void SimConfig::validate() const {
  if (N < 3 || N % 2 == 0) throw ConfigError("sim.N", "must be odd and >= 3");
  if (!(dt > 0)) throw ConfigError("sim.dt", "must be positive");
  if (!(t_max > 0)) throw ConfigError("sim.t_max", "must be positive");
  if (krylov_dim < 4 || krylov_dim > 200) throw ConfigError("sim.krylov_dim", "must be in [4, 200]");
  if (!(step_tol > 0)) throw ConfigError("sim.step_tol", "must be positive");
  if (!(sample_every > 0)) throw ConfigError("sim.sample_every", "must be positive");
  if (!(flux_threshold > 0)) throw ConfigError("sim.flux_threshold", "must be positive");
  if (!(quiet_time >= 0)) throw ConfigError("sim.quiet_time", "must be non-negative");
  if (wall_width < 1 || 2 * wall_width >= N) throw ConfigError("sim.wall_width", "out of range");
}

// --- preparation ----------------------------------------------------------------

namespace {

void require_sector(const LatticeBasis& basis, Sector s, const char* what) {
  if (basis.sector() != s) throw DomainError(std::string(what) + ": wrong excitation sector");
}

void require_clearance(const LatticeBasis& basis, const WavepacketSpec& spec) {
  const double L = static_cast<double>(basis.L());
  if (std::abs(spec.xc) + 3.0 * spec.s > L)
    throw DomainError("wave packet at xc = " + std::to_string(spec.xc) +
                      " does not keep 3s clearance from the walls; need N >= " +
                      std::to_string(2 * static_cast<long>(std::ceil(std::abs(spec.xc) + 3 * spec.s)) + 1));
}

std::vector<cplx> packet_on_lattice(const LatticeBasis& basis, const WavepacketSpec& spec) {
  spec.validate();
  require_clearance(basis, spec);
  std::vector<cplx> f(static_cast<std::size_t>(basis.N()));
  for (long x = -basis.L(); x <= basis.L(); ++x)
    f[static_cast<std::size_t>(x + basis.L())] = gaussian_packet_x(spec, static_cast<double>(x));
  return f;
}

void normalise(LatticeState& st) {
  const double n = st.amp.norm();
  if (!(n > 0)) throw NumericError("prepared state has zero norm");
  st.amp /= n;
}

}  // namespace

LatticeState prepare_excited_qubit(const LatticeBasis& basis) {
  require_sector(basis, Sector::One, "excited qubit");
  LatticeState st{basis, Vector::Zero(static_cast<Eigen::Index>(basis.dim())), 0.0};
  st.amp[static_cast<Eigen::Index>(basis.up())] = 1.0;
  return st;
}

LatticeState prepare_one_photon_gaussian(const LatticeBasis& basis, const WavepacketSpec& spec) {
  require_sector(basis, Sector::One, "one-photon packet");
  const auto f = packet_on_lattice(basis, spec);
  LatticeState st{basis, Vector::Zero(static_cast<Eigen::Index>(basis.dim())), 0.0};
  for (long i = 0; i < basis.N(); ++i) st.amp[i] = f[static_cast<std::size_t>(i)];
  normalise(st);
  return st;
}

LatticeState prepare_two_photon_gaussian(const LatticeBasis& basis, const WavepacketSpec& spec1,
                                         const WavepacketSpec& spec2) {
  require_sector(basis, Sector::Two, "two-photon packet");
  const auto f1 = packet_on_lattice(basis, spec1);
  const auto f2 = packet_on_lattice(basis, spec2);
  LatticeState st{basis, Vector::Zero(static_cast<Eigen::Index>(basis.dim())), 0.0};
  const long N = basis.N();
  const double r2 = std::sqrt(2.0);
  for (long i = 0; i < N; ++i)
    for (long j = i; j < N; ++j) {
      const cplx psi = f1[i] * f2[j] + f2[i] * f1[j];
      st.amp[static_cast<Eigen::Index>(basis.row_offset(i) + (j - i))] = i == j ? psi : r2 * psi;
    }
  normalise(st);
  return st;
}

LatticeState prepare_bound_state(const LatticeBasis& basis, const ModelParams& params, Branch branch) {
  require_sector(basis, Sector::One, "bound state");
  const BoundState b = make_bound_state(params, branch);
  LatticeState st{basis, Vector::Zero(static_cast<Eigen::Index>(basis.dim())), 0.0};
  for (long x = -basis.L(); x <= basis.L(); ++x)
    st.amp[static_cast<Eigen::Index>(basis.photon(x))] = bound_amplitude_x(b, x);
  st.amp[static_cast<Eigen::Index>(basis.up())] = std::sqrt(b.residue);
  const double tail = std::abs(bound_amplitude_x(b, basis.L()));
  if (tail > 1e-8)
    throw DomainError("bound-state tail " + std::to_string(tail) + " at the wall exceeds 1e-8; increase N");
  normalise(st);
  return st;
}

LatticeState prepare_bound_product(const LatticeBasis& basis, const ModelParams& params,
                                   const WavepacketSpec& spec, Branch branch) {
  require_sector(basis, Sector::Two, "bound product");
  const BoundState b = make_bound_state(params, branch);
  const double tail = std::abs(bound_amplitude_x(b, basis.L()));
  if (tail > 1e-8)
    throw DomainError("bound-state tail " + std::to_string(tail) + " at the wall exceeds 1e-8; increase N");
  const auto f = packet_on_lattice(basis, spec);
  const long N = basis.N(), L = basis.L();
  std::vector<double> phi(static_cast<std::size_t>(N));
  for (long i = 0; i < N; ++i) phi[i] = bound_amplitude_x(b, i - L);
  const double alpha = std::sqrt(b.residue);

  LatticeState st{basis, Vector::Zero(static_cast<Eigen::Index>(basis.dim())), 0.0};
  const double r2 = std::sqrt(2.0);
  for (long i = 0; i < N; ++i) {
    for (long j = i; j < N; ++j) {
      const cplx c = i == j ? r2 * f[i] * phi[i] : f[i] * phi[j] + f[j] * phi[i];
      st.amp[static_cast<Eigen::Index>(basis.row_offset(i) + (j - i))] = c;
    }
    st.amp[static_cast<Eigen::Index>(basis.down_dim() + i)] = alpha * f[i];
  }
  normalise(st);
  return st;
}

long required_sites(const ModelParams& params, const WavepacketSpec& spec, bool bound_state, double tol) {
  double L = std::ceil(std::abs(spec.xc) + 3.0 * spec.s);
  if (bound_state) {
    const BoundState b = make_bound_state(params, Branch::Minus);
    const BoundState bp = make_bound_state(params, Branch::Plus);
    for (const auto& s : {b, bp}) {
      const double rho = std::abs(bound_decay_ratio(s));
      const double a0 = std::abs(bound_amplitude_x(s, 0));
      if (a0 > tol && rho > 0) L = std::max(L, std::ceil(std::log(tol / a0) / std::log(rho)));
    }
  }
  return 2 * static_cast<long>(L) + 1;
}

}  // namespace wgqed::sim
