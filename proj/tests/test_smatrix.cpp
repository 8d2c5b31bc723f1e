#include <doctest.h>

#include "wgqed/errors.hpp"
#include "wgqed/smatrix.hpp"

using namespace wgqed;

TEST_CASE("one-photon coefficients") {
  const ModelParams p(1.0, 0.4, 0.9);
  for (double k : {-2.5, -0.3, 0.8, 2.0}) {
    const auto rt = one_photon_rt(p, k);
    CHECK(std::norm(rt.r) + std::norm(rt.t) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(rt.t - 1.0 - rt.r) < 1e-15);
  }
  CHECK_THROWS_AS(one_photon_rt(p, 0.0), DomainError);
  CHECK_THROWS_AS(one_photon_rt(p, kPi), DomainError);
}

TEST_CASE("gaussian packet is normalised in both representations") {
  WavepacketSpec w;
  w.k0 = 1.1;
  w.s = 9.0;
  w.xc = -40.0;
  double sx = 0.0;
  for (long x = -400; x <= 400; ++x) sx += std::norm(gaussian_packet_x(w, x));
  CHECK(sx == doctest::Approx(1.0).epsilon(1e-10));
  const auto rule = gauss_legendre(400, -kPi, kPi);
  double sk = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sk += rule.weights[i] * std::norm(gaussian_packet_k(w, rule.nodes[i]));
  CHECK(sk == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("packet averages of one-photon scattering sum to one") {
  WavepacketSpec w;
  w.k0 = 1.2;
  const auto rt = one_photon_packet(ModelParams(1.0, 0.0, 0.7), w);
  CHECK(rt.R + rt.T == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("bound-to-bound scattering vanishes without coupling corrections far from resonance") {
  const ModelParams p(1.0, 0.0, 0.5);
  QuadratureConfig qc;
  const auto rt = bound_to_bound_rt(p, kPi / 2, Branch::Minus, 0, qc);
  CHECK(std::abs(rt.t - 1.0 - rt.r) < 1e-14);
  CHECK_THROWS(bound_to_bound_rt(ModelParams(1.0, 0.2, 0.5), 1.0, Branch::Minus, 1, qc));
}

TEST_CASE("free-to-free out state keeps the input norm at weak coupling") {
  const ModelParams p(1.0, 0.0, 0.5);
  QuadratureConfig qc;
  ShellGrids g;
  g.n_out = 64;
  WavepacketSpec w;
  w.k0 = 2 * kPi / 5;
  const auto out = free_to_free_out_state(p, TwoPhotonPacket(w), 0, qc, g);
  CHECK(out.norm == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("free-to-bound amplitude is symmetric in the incoming photons") {
  const ModelParams p(1.0, 0.0, 0.5);
  QuadratureConfig qc;
  const cplx a = free_to_bound_amplitude(p, 1.0, Branch::Minus, 1.2, 1.9, 1, qc);
  const cplx b = free_to_bound_amplitude(p, 1.0, Branch::Minus, 1.9, 1.2, 1, qc);
  CHECK(std::abs(a - b) < 1e-12 * std::abs(a));
}

TEST_CASE("energy shell limits") {
  const auto s = energy_shell(ModelParams(1.0, 0.0, 0.5), 1.0);
  CHECK(s.delta_lo == doctest::Approx(-1.5));
  CHECK(s.delta_hi == doctest::Approx(1.5));
}
