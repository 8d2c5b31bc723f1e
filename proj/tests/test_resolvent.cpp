#include <doctest.h>

#include <cmath>

#include "wgqed/quadrature.hpp"
#include "wgqed/resolvent.hpp"

using namespace wgqed;

// tests/oracles/bound_states.py
constexpr double kOmegaG2 = 2.5440392990281379285;
constexpr double kResidueG2 = 0.27639320225002103036;

TEST_CASE("bound states at g'=2 match the high-precision oracle") {
  const ModelParams p(1.0, 0.0, 2.0);
  const auto [wp, wm] = bound_state_energies(p);
  CHECK(std::abs(wp - kOmegaG2) < 1e-12);
  CHECK(std::abs(wm + kOmegaG2) < 1e-12);
  CHECK(std::abs(bound_residue(p, Branch::Plus) - kResidueG2) < 1e-12);
  CHECK(std::abs(bound_residue(p, Branch::Minus) - kResidueG2) < 1e-12);
}

TEST_CASE("bound-state energy is a zero of the pole function") {
  for (double Om : {-1.5, 0.0, 0.8}) {
    const ModelParams p(1.0, Om, 0.7);
    const auto [wp, wm] = bound_state_energies(p);
    CHECK(std::abs(bound_pole_function(p, wp)) < 1e-10);
    CHECK(std::abs(bound_pole_function(p, wm)) < 1e-10);
    CHECK(wp > 2.0);
    CHECK(wm < -2.0);
  }
}

TEST_CASE("self energy against direct quadrature") {
  const ModelParams p(1.0, 0.0, 0.5);
  for (cplx z : {cplx(0.3, 0.2), cplx(-0.3, 0.2), cplx(-1.0, -0.5), cplx(3.0, 0.0), cplx(-3.0, 0.0)}) {
    const auto q = integrate([&](double k) { return 1.0 / (z + 2.0 * std::cos(k)); }, -kPi, kPi);
    CHECK(std::abs(self_energy(p, z) - q.value) < 1e-10 * std::abs(q.value));
  }
}

TEST_CASE("self energy derivative") {
  const ModelParams p(1.0, 0.0, 0.5);
  const cplx z(0.7, 0.3), h(1e-5, 0.0);
  const cplx fd = (self_energy(p, z + h) - self_energy(p, z - h)) / (2.0 * h);
  CHECK(std::abs(self_energy_derivative(p, z) - fd) < 1e-7);
}

TEST_CASE("bound state is normalised") {
  const auto b = make_bound_state(ModelParams(1.0, 0.0, 0.8), Branch::Minus);
  double s = b.residue;
  for (long x = -400; x <= 400; ++x) s += std::pow(bound_amplitude_x(b, x), 2);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("G1 has residue p_b at the bound-state pole") {
  // G1 is the lattice propagator: its pole sits at omega - Omega/2.
  const ModelParams p(1.0, 0.3, 1.1);
  const auto b = make_bound_state(p, Branch::Plus);
  const double d = 1e-6;
  const cplx r = d * resolvent_g1(p, cplx(b.omega - 0.5 * p.Omega() + d, 0.0));
  CHECK(std::abs(r - b.residue) < 1e-5);
}
