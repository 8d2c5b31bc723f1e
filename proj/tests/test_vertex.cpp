#include <doctest.h>

#include "wgqed/vertex.hpp"

using namespace wgqed;

TEST_CASE("bare vertex") {
  const ModelParams p(1.0, 0.0, 0.5);
  QuadratureConfig qc;
  const cplx z(0.4, 0.01);
  CHECK(vertex_v(p, 0, z, 1.0, 2.0, qc) == 1.0 / (z - dispersion(p, 1.0) - dispersion(p, 2.0)));
}

TEST_CASE("first correction on the bound-to-bound shell against mpmath") {
  // tests/oracles/vertex_v1.py
  const ModelParams p(1.0, 0.0, 0.5);
  QuadratureConfig qc;
  qc.eta = 1e-6;
  const double wm = bound_state_energies(p).second;
  const std::pair<double, cplx> ref[] = {{0.5, cplx(-143.158754, -21.5505987)},
                                         {1.0, cplx(-232.750635, -31.9665374)}};
  for (const auto& [k, v] : ref) {
    const cplx z(dispersion(p, k) + wm, qc.eta);
    CHECK(std::abs(vertex_v(p, 1, z, k, k, qc) - v) < 1e-6 * std::abs(v));
  }
}

TEST_CASE("closed forms agree with the recursion and are symmetric") {
  const ModelParams p(1.0, 0.0, 0.5);
  QuadratureConfig qc;
  qc.eta = 1e-2;
  const cplx z(0.3, 1e-2);
  for (int n = 1; n <= 2; ++n) {
    const cplx a = vertex_v(p, n, z, 1.0, 2.0, qc);
    CHECK(std::abs(vertex_v_recursive(p, n, z, 1.0, 2.0, qc) - a) < 1e-8 * std::abs(a));
    CHECK(std::abs(vertex_v(p, n, z, 2.0, 1.0, qc) - a) < 1e-8 * std::abs(a));
  }
  const cplx v2 = vertex_v(p, 2, z, 1.0, 2.0, qc);
  CHECK(std::abs(vertex_v2_swapped(p, z, dispersion(p, 1.0), dispersion(p, 2.0), qc) - v2) < 1e-7 * std::abs(v2));
}

TEST_CASE("no coupling, no corrections") {
  const ModelParams p(1.0, 0.0, 0.0);
  QuadratureConfig qc;
  CHECK(vertex_v(p, 1, cplx(0.3, 0.01), 1.0, 2.0, qc) == 0.0);
  const auto ny = u_nystrom(p, cplx(0.3, 0.01), 2.0, 100, qc);
  for (std::size_t j = 0; j < ny.nodes().size(); ++j)
    CHECK(ny.values()[j] == vertex_v(p, 0, cplx(0.3, 0.01), ny.nodes()[j], 2.0, qc));
}

TEST_CASE("Nystrom solution agrees with the second-order series at weak coupling") {
  const ModelParams p(1.0, 0.0, 0.5);
  QuadratureConfig qc;
  qc.eta = 1e-2;
  const cplx z(0.3, 1e-2);
  const auto ny = u_nystrom(p, z, 2.0, 800, qc);
  const cplx u2 = u_partial(p, z, 1.0, 2.0, 2, qc).value;
  CHECK(std::abs(ny.evaluate(1.0) - u2) < 0.05 * std::abs(u2));
}

TEST_CASE("partial sums accumulate the terms") {
  const ModelParams p(1.0, 0.0, 0.5);
  QuadratureConfig qc;
  qc.eta = 1e-2;
  const auto ps = u_partial(p, cplx(0.3, 1e-2), 1.0, 2.0, 2, qc);
  REQUIRE(ps.partial.size() == 3);
  CHECK(std::abs(ps.partial[2] - (ps.terms[0] + ps.terms[1] + ps.terms[2])) < 1e-14 * std::abs(ps.value));
  CHECK(ps.value == ps.partial[2]);
}
