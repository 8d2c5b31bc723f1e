#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "wgqed/errors.hpp"
#include "wgqed/krylovsim.hpp"

namespace wgqed::sim {

static_assert(std::endian::native == std::endian::little, "checkpoints assume a little-endian host");

namespace {

// Amplitudes of the photon coordinate in the up sector (both sectors have one).
const cplx* up_block(const LatticeState& st, std::size_t& n) {
  const auto& b = st.basis;
  if (b.sector() == Sector::One) {
    n = 1;
    return st.amp.data() + b.up();
  }
  n = static_cast<std::size_t>(b.N());
  return st.amp.data() + b.down_dim();
}

}  // namespace

double up_probability(const LatticeState& st, Region region) {
  const auto& b = st.basis;
  if (b.sector() == Sector::One) {
    if (region != Region::All) throw DomainError("the one-excitation up state has no photon coordinate");
    return std::norm(st.amp[static_cast<Eigen::Index>(b.up())]);
  }
  std::size_t n = 0;
  const cplx* u = up_block(st, n);
  double s = 0.0;
  for (long i = 0; i < b.N(); ++i) {
    const long x = i - b.L();
    if ((region == Region::Left && x >= 0) || (region == Region::Right && x <= 0)) continue;
    s += std::norm(u[i]);
  }
  return s;
}

double down_probability(const LatticeState& st) {
  return st.amp.head(static_cast<Eigen::Index>(st.basis.down_dim())).squaredNorm();
}

double measure_up_sector(const LatticeState& st, Region region, double p_b) {
  if (!(p_b > 0)) throw DomainError("bound-state residue must be positive");
  return up_probability(st, region) / p_b;
}

double trapping_rate(const LatticeState& st, double p_b) { return measure_up_sector(st, Region::All, p_b); }

cplx down_psi(const LatticeState& st, long x1, long x2) {
  const auto& b = st.basis;
  const cplx a = st.amp[static_cast<Eigen::Index>(b.pair(x1, x2))];
  return x1 == x2 ? a : a / std::sqrt(2.0);
}

std::vector<cplx> bound_channel_amplitudes(const LatticeState& st, const ModelParams& params, Branch branch) {
  const auto& b = st.basis;
  if (b.sector() != Sector::Two) throw DomainError("bound-channel projection needs the two-excitation sector");
  const BoundState bs = make_bound_state(params, branch);
  const long N = b.N(), L = b.L();
  std::vector<double> phi(static_cast<std::size_t>(N));
  for (long i = 0; i < N; ++i) phi[static_cast<std::size_t>(i)] = bound_amplitude_x(bs, i - L);
  const double alpha = std::sqrt(bs.residue);
  const double r2 = std::sqrt(2.0);
  std::vector<cplx> A(static_cast<std::size_t>(N));
  // sqrt(2) psi(x, y) is the stored amplitude off the diagonal; on it the
  // stored amplitude is psi(x, x).
  for (long i = 0; i < N; ++i) {
    cplx s = alpha * st.amp[static_cast<Eigen::Index>(b.down_dim() + i)];
    for (long j = 0; j < N; ++j) {
      const std::size_t k = i <= j ? b.row_offset(i) + (j - i) : b.row_offset(j) + (i - j);
      const cplx a = st.amp[static_cast<Eigen::Index>(k)];
      s += phi[static_cast<std::size_t>(j)] * (i == j ? r2 * a : a);
    }
    A[static_cast<std::size_t>(i)] = s;
  }
  return A;
}

double bound_channel_probability(const LatticeState& st, const ModelParams& params, Branch branch,
                                 Region region) {
  const auto A = bound_channel_amplitudes(st, params, branch);
  const long L = st.basis.L();
  double s = 0.0;
  for (long i = 0; i < st.basis.N(); ++i) {
    const long x = i - L;
    if ((region == Region::Left && x >= 0) || (region == Region::Right && x <= 0)) continue;
    s += std::norm(A[static_cast<std::size_t>(i)]);
  }
  return s;
}

std::pair<double, double> qubit_bond_currents(const LatticeState& st, double J) {
  const auto& b = st.basis;
  const long L = b.L();
  double down = 0.0, up = 0.0;
  if (b.sector() == Sector::One) {
    for (long x : {-1L, 0L}) {
      const cplx a = st.amp[static_cast<Eigen::Index>(b.photon(x))];
      const cplx c = st.amp[static_cast<Eigen::Index>(b.photon(x + 1))];
      down = std::max(down, std::abs(2.0 * J * std::imag(std::conj(a) * c)));
    }
    return {down, 0.0};
  }
  // Photon-number current through bond (x, x+1): both photons can cross, and
  // psi is symmetric, so it is twice the single-coordinate current.
  for (long x : {-1L, 0L}) {
    double jd = 0.0;
    for (long y = -L; y <= L; ++y)
      jd += std::imag(std::conj(down_psi(st, x, y)) * down_psi(st, x + 1, y));
    down = std::max(down, std::abs(4.0 * J * jd));
    const cplx a = st.amp[static_cast<Eigen::Index>(b.up_photon(x))];
    const cplx c = st.amp[static_cast<Eigen::Index>(b.up_photon(x + 1))];
    up = std::max(up, std::abs(2.0 * J * std::imag(std::conj(a) * c)));
  }
  return {down, up};
}

double wall_probability(const LatticeState& st, long width) {
  const auto& b = st.basis;
  const long L = b.L();
  if (width < 1 || 2 * width >= b.N()) throw DomainError("wall width out of range");
  auto near_wall = [&](long x) { return x < -L + width || x > L - width; };
  double s = 0.0;
  if (b.sector() == Sector::One) {
    for (long x = -L; x <= L; ++x)
      if (near_wall(x)) s += std::norm(st.amp[static_cast<Eigen::Index>(b.photon(x))]);
    return s;
  }
  for (long i = 0; i < b.N(); ++i)
    for (long j = i; j < b.N(); ++j)
      if (near_wall(i - L) || near_wall(j - L))
        s += std::norm(st.amp[static_cast<Eigen::Index>(b.row_offset(i) + (j - i))]);
  for (long x = -L; x <= L; ++x)
    if (near_wall(x)) s += std::norm(st.amp[static_cast<Eigen::Index>(b.up_photon(x))]);
  return s;
}

Observation observe(const Hamiltonian& H, const LatticeState& st) {
  Observation ob;
  ob.t = st.time;
  ob.norm = st.amp.norm();
  ob.energy = st.amp.dot(H * st.amp).real();
  ob.down_norm = down_probability(st);
  ob.up_norm = up_probability(st, Region::All);
  if (st.basis.sector() == Sector::Two) {
    ob.up_left = up_probability(st, Region::Left);
    ob.up_right = up_probability(st, Region::Right);
  } else {
    ob.up_amplitude = st.amp[static_cast<Eigen::Index>(st.basis.up())];
  }
  const auto [d, u] = qubit_bond_currents(st, H.params().J());
  ob.flux_down = d;
  ob.flux_up = u;
  return ob;
}

Spectrum spectrum_down_sector(const LatticeState& st, int n) {
  const auto& b = st.basis;
  if (b.sector() != Sector::Two) throw DomainError("two-photon spectrum needs the two-excitation sector");
  if (n < 2) throw DomainError("spectrum grid needs at least 2 points");
  const long N = b.N(), L = b.L();
  Spectrum sp;
  sp.p.resize(static_cast<std::size_t>(n));
  const double h = 2.0 * kPi / n;
  for (int i = 0; i < n; ++i) sp.p[static_cast<std::size_t>(i)] = -kPi + (i + 0.5) * h;

  // phase(i, x) = exp(-i p_i x)
  Eigen::MatrixXcd phase(n, N);
  for (int i = 0; i < n; ++i)
    for (long x = 0; x < N; ++x) phase(i, x) = std::exp(cplx(0.0, -sp.p[static_cast<std::size_t>(i)] * (x - L)));

  Eigen::MatrixXcd psi(N, N);
  for (long i = 0; i < N; ++i)
    for (long j = i; j < N; ++j) {
      const cplx a = st.amp[static_cast<Eigen::Index>(b.row_offset(i) + (j - i))];
      const cplx v = i == j ? a : a / std::sqrt(2.0);
      psi(i, j) = v;
      psi(j, i) = v;
    }
  const Eigen::MatrixXcd F = phase * psi * phase.transpose() / (2.0 * kPi);
  sp.amplitude.resize(static_cast<std::size_t>(n) * n);
  double power = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      sp.amplitude[static_cast<std::size_t>(i) * n + j] = F(i, j);
      power += std::norm(F(i, j));
    }
  sp.power = power * h * h;
  return sp;
}

cplx photon_momentum_amplitude(const LatticeState& st, double k) {
  const auto& b = st.basis;
  if (b.sector() != Sector::One) throw DomainError("one-photon amplitude needs the one-excitation sector");
  cplx s = 0.0;
  for (long x = -b.L(); x <= b.L(); ++x)
    s += std::exp(cplx(0.0, -k * x)) * st.amp[static_cast<Eigen::Index>(b.photon(x))];
  return s / std::sqrt(2.0 * kPi);
}

void write_checkpoint(const std::string& path, const LatticeState& st) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NumericError("cannot open checkpoint for writing: " + path);
  const std::int64_t N = st.basis.N();
  const auto sector = static_cast<std::int64_t>(st.basis.sector());
  out.write(reinterpret_cast<const char*>(&N), sizeof N);
  out.write(reinterpret_cast<const char*>(&sector), sizeof sector);
  out.write(reinterpret_cast<const char*>(&st.time), sizeof st.time);
  static_assert(sizeof(cplx) == 2 * sizeof(double));
  out.write(reinterpret_cast<const char*>(st.amp.data()),
            static_cast<std::streamsize>(st.amp.size() * sizeof(cplx)));
  if (!out) throw NumericError("checkpoint write failed: " + path);
}

LatticeState read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NumericError("cannot open checkpoint: " + path);
  std::int64_t N = 0, sector = 0;
  double t = 0.0;
  in.read(reinterpret_cast<char*>(&N), sizeof N);
  in.read(reinterpret_cast<char*>(&sector), sizeof sector);
  in.read(reinterpret_cast<char*>(&t), sizeof t);
  if (!in) throw NumericError("truncated checkpoint header: " + path);
  if (sector != 1 && sector != 2) throw NumericError("corrupt checkpoint sector in " + path);
  LatticeBasis basis(static_cast<long>(N), static_cast<Sector>(sector));
  LatticeState st{basis, Vector(static_cast<Eigen::Index>(basis.dim())), t};
  in.read(reinterpret_cast<char*>(st.amp.data()), static_cast<std::streamsize>(st.amp.size() * sizeof(cplx)));
  if (!in) throw NumericError("truncated checkpoint data: " + path);
  if (in.peek() != std::char_traits<char>::eof()) throw NumericError("trailing bytes in checkpoint: " + path);
  return st;
}

}  // namespace wgqed::sim
