#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <filesystem>
#include <fstream>
#include <random>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "wgqed/errors.hpp"
#include "wgqed/krylovsim.hpp"

using namespace wgqed;
using namespace wgqed::sim;

namespace {

Vector random_vector(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> d;
  Vector v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = cplx(d(rng), d(rng));
  return v / v.norm();
}

// Second-quantised H on 3 sites with at most 2 photons per mode, built from
// Kronecker products: qubit (x) mode(-1) (x) mode(0) (x) mode(1).
Eigen::VectorXd kronecker_spectrum(const ModelParams& p, int excitations) {
  using M = Eigen::MatrixXd;
  M a = M::Zero(3, 3);
  a(0, 1) = 1.0;
  a(1, 2) = std::sqrt(2.0);
  const M I3 = M::Identity(3, 3), I2 = M::Identity(2, 2);
  auto mode = [&](const M& op, int site) {
    M out = M::Identity(1, 1);
    for (int s = 0; s < 3; ++s) out = Eigen::kroneckerProduct(out, s == site ? op : I3).eval();
    return out;
  };
  M sm = M::Zero(2, 2);  // sigma^-, basis (down, up)
  sm(0, 1) = 1.0;
  M sz = M::Zero(2, 2);
  sz(0, 0) = -1.0;
  sz(1, 1) = 1.0;
  const M I27 = M::Identity(27, 27);
  M H = 0.5 * p.Omega() * Eigen::kroneckerProduct(sz, I27);
  for (int s = 0; s < 2; ++s) {
    const M hop = mode(a.transpose(), s) * mode(a, s + 1);
    H -= p.J() * Eigen::kroneckerProduct(I2, M(hop + hop.transpose()));
  }
  const M c = Eigen::kroneckerProduct(M(sm.transpose()), mode(a, 1));
  H += p.g_prime() * (c + c.transpose());
  // restrict to the requested number of excitations
  M n = Eigen::kroneckerProduct(M(0.5 * (sz + I2)), I27);
  for (int s = 0; s < 3; ++s) n += Eigen::kroneckerProduct(I2, M(mode(a.transpose() * a, s)));
  std::vector<int> keep;
  for (int i = 0; i < n.rows(); ++i)
    if (std::abs(n(i, i) - excitations) < 1e-12) keep.push_back(i);
  M sub(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j) sub(i, j) = H(keep[i], keep[j]);
  return Eigen::SelfAdjointEigenSolver<M>(sub).eigenvalues();
}

}  // namespace

TEST_CASE("three-site spectrum matches a Kronecker-product Fock space") {
  const ModelParams p(0.8, 0.6, 1.3);
  for (Sector s : {Sector::One, Sector::Two}) {
    const LatticeBasis b(3, s);
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(Hamiltonian(p, b).dense()).eigenvalues();
    const Eigen::VectorXd ref = kronecker_spectrum(p, static_cast<int>(s));
    REQUIRE(ev.size() == ref.size());
    CHECK((ev - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Hamiltonian is Hermitian") {
  const ModelParams p(1.0, 0.3, 0.7);
  const LatticeBasis b(41, Sector::Two);
  const Hamiltonian H(p, b);
  const Vector u = random_vector(b.dim(), 1), v = random_vector(b.dim(), 2);
  const cplx a = u.dot(H * v), c = (H * u).dot(v);
  CHECK(std::abs(a - c) < 1e-13);
  CHECK((H * u).norm() <= H.norm_bound() * (1.0 + 1e-12));
}

TEST_CASE("uncoupled two-photon spectrum is a sum of single-photon energies") {
  const ModelParams p(1.0, 0.5, 0.0);
  const long N = 51;
  const LatticeBasis b(N, Sector::Two);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(Hamiltonian(p, b).dense()).eigenvalues();
  std::vector<double> eps(N);
  for (long n = 1; n <= N; ++n) eps[n - 1] = -2.0 * std::cos(kPi * n / (N + 1));
  std::vector<double> ref;
  for (long i = 0; i < N; ++i) {
    for (long j = i; j < N; ++j) ref.push_back(eps[i] + eps[j] - 0.25);
    ref.push_back(eps[i] + 0.25);
  }
  std::sort(ref.begin(), ref.end());
  REQUIRE(static_cast<std::size_t>(ev.size()) == ref.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) worst = std::max(worst, std::abs(ev[i] - ref[i]));
  CHECK(worst < 1e-11);
}

TEST_CASE("prepared bound state is the lattice eigenvector") {
  const ModelParams p(1.0, 0.0, 0.5);
  const LatticeBasis b(801, Sector::One);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hamiltonian(p, b).dense().real());
  for (Branch br : {Branch::Minus, Branch::Plus}) {
    const auto st = prepare_bound_state(b, p, br);
    const Eigen::Index n = br == Branch::Minus ? 0 : es.eigenvalues().size() - 1;
    const double ov = std::norm(st.amp.dot(es.eigenvectors().col(n).cast<cplx>()));
    CHECK(ov >= 1.0 - 1e-6);
  }
}

TEST_CASE("Krylov step matches the dense exponential") {
  const ModelParams p(1.0, 0.2, 0.9);
  const LatticeBasis b(31, Sector::Two);
  const Hamiltonian H(p, b);
  Vector v = random_vector(b.dim(), 3);
  const Vector ref = (Eigen::MatrixXcd(cplx(0.0, -1.0) * H.dense())).exp() * v;
  KrylovPropagator kp(H, 30, 1e-12);
  double t = 0.0;
  while (t < 1.0 - 1e-14) t += kp.step(v, 1.0 - t);
  CHECK((v - ref).norm() < 1e-9);
}

TEST_CASE("mirror symmetry of the Hamiltonian") {
  const ModelParams p(1.0, 0.4, 0.8);
  const LatticeBasis b(21, Sector::Two);
  const Hamiltonian H(p, b);
  const Vector v = random_vector(b.dim(), 4);
  auto mirror = [&](const Vector& in) {
    Vector out(in.size());
    for (std::size_t i = 0; i < b.dim(); ++i) {
      const auto c = b.decode(i);
      const std::size_t j = c.up ? b.up_photon(-c.x1) : b.pair(-c.x1, -c.x2);
      out[static_cast<Eigen::Index>(j)] = in[static_cast<Eigen::Index>(i)];
    }
    return out;
  };
  CHECK((mirror(H * v) - H * mirror(v)).norm() < 1e-13);
}

TEST_CASE("free packet moves at the group speed") {
  const ModelParams p(1.0, 0.0, 0.0);
  const LatticeBasis b(401, Sector::One);
  WavepacketSpec w;
  w.k0 = 1.1;
  w.s = 15.0;
  w.xc = -100.0;
  SimConfig cfg;
  cfg.N = 401;
  cfg.t_max = 40.0;
  cfg.sample_every = 40.0;
  const auto res = evolve(Hamiltonian(p, b), prepare_one_photon_gaussian(b, w), cfg, false);
  double mean = 0.0;
  for (long x = -b.L(); x <= b.L(); ++x) mean += x * std::norm(res.final_state.amp[static_cast<Eigen::Index>(b.photon(x))]);
  CHECK((mean - w.xc) / 40.0 == doctest::Approx(2.0 * std::sin(w.k0)).epsilon(1e-3));
}

TEST_CASE("two-photon spectrum obeys Parseval") {
  const LatticeBasis b(61, Sector::Two);
  LatticeState st{b, random_vector(b.dim(), 5), 0.0};
  const auto sp = spectrum_down_sector(st, 64);
  CHECK(std::abs(sp.power - down_probability(st)) < 1e-10);
}

TEST_CASE("uncoupled spectrum is the product of the input packets") {
  const ModelParams p(1.0, 0.0, 0.0);
  const LatticeBasis b(201, Sector::Two);
  WavepacketSpec w;
  w.k0 = 1.0;
  w.s = 8.0;
  const auto st = prepare_two_photon_gaussian(b, w, w);
  const auto sp = spectrum_down_sector(st, 32);
  // F(p1, p2) = f(p1) f(p2) with the packet normalised on [-pi, pi].
  double worst = 0.0;
  for (std::size_t i = 0; i < sp.size(); ++i)
    for (std::size_t j = 0; j < sp.size(); ++j)
      worst = std::max(worst, std::abs(sp.at(i, j) - gaussian_packet_k(w, sp.p[i]) * gaussian_packet_k(w, sp.p[j])));
  CHECK(worst < 1e-8);
}

TEST_CASE("checkpoint round trip") {
  const LatticeBasis b(15, Sector::Two);
  LatticeState st{b, random_vector(b.dim(), 6), 12.5};
  const auto path = std::filesystem::temp_directory_path() / "wgqed_checkpoint_test.bin";
  write_checkpoint(path.string(), st);
  const auto back = read_checkpoint(path.string());
  CHECK(back.basis.N() == 15);
  CHECK(back.basis.sector() == Sector::Two);
  CHECK(back.time == 12.5);
  CHECK(back.amp == st.amp);
  {
    std::ofstream f(path, std::ios::binary | std::ios::app);
    f.put('x');
  }
  CHECK_THROWS(read_checkpoint(path.string()));
  std::filesystem::remove(path);
}

TEST_CASE("sector probabilities and bond currents of simple states") {
  const ModelParams p(1.0, 0.0, 1.0);
  const WavepacketSpec w{1.0, 3.0, -40.0};
  const LatticeBasis b(required_sites(p, w, true), Sector::Two);
  const auto st = prepare_bound_product(b, p, w, Branch::Minus);
  CHECK(st.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const double pb = bound_residue(p, Branch::Minus);
  CHECK(trapping_rate(st, pb) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(bound_channel_probability(st, p, Branch::Minus, Region::Left) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("packets too close to the wall are rejected") {
  const ModelParams p(1.0, 0.0, 0.5);
  const LatticeBasis b(61, Sector::One);
  CHECK_THROWS_AS(prepare_one_photon_gaussian(b, WavepacketSpec{1.0, 12.0, -20.0}), DomainError);
}
