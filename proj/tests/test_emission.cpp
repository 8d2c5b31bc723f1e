#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "wgqed/emission.hpp"
#include "wgqed/krylovsim.hpp"

using namespace wgqed;

TEST_CASE("survival amplitude starts at one") {
  CHECK(std::abs(survival_amplitude(ModelParams(1.0, 0.0, 2.0), 0.0) - 1.0) < 1e-12);
}

TEST_CASE("survival amplitude against a dense lattice propagator") {
  const ModelParams p(1.0, 0.0, 1.2);
  const sim::LatticeBasis b(201, sim::Sector::One);
  const Eigen::MatrixXd h = sim::Hamiltonian(p, b).dense().real();
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const auto up = static_cast<Eigen::Index>(b.up());
  for (double t : {0.5, 3.0, 12.0}) {
    cplx e = 0.0;
    for (Eigen::Index n = 0; n < es.eigenvalues().size(); ++n)
      e += std::norm(es.eigenvectors()(up, n)) * std::exp(cplx(0.0, -es.eigenvalues()[n] * t));
    CHECK(std::abs(survival_amplitude(p, t) - e) < 1e-6);
  }
}

TEST_CASE("emission curve matches pointwise evaluation") {
  const ModelParams p(1.0, 0.0, 2.0);
  const auto c = emission_curve(p, {0.0, 1.0, 5.0});
  REQUIRE(c.amplitudes.size() == 3);
  CHECK(c.amplitudes[2] == survival_amplitude(p, 5.0));
}

TEST_CASE("bessel j0") {
  CHECK(bessel_j0(0.0) == doctest::Approx(1.0));
  CHECK(bessel_j0(2.404825557695773) == doctest::Approx(0.0).epsilon(1e-12));
}
