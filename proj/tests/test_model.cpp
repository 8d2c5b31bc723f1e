#include <doctest.h>

#include "wgqed/errors.hpp"
#include "wgqed/model.hpp"

using namespace wgqed;

TEST_CASE("dispersion and group speed") {
  const ModelParams p(1.3, 0.0, 0.5);
  CHECK(dispersion(p, 0.0) == doctest::Approx(-2.6));
  CHECK(dispersion(p, kPi) == doctest::Approx(2.6));
  CHECK(group_speed(p, kPi / 2) == doctest::Approx(2.6));
  // group speed is the derivative of the dispersion
  const double k = 0.7, h = 1e-6;
  CHECK(group_speed(p, k) == doctest::Approx((dispersion(p, k + h) - dispersion(p, k - h)) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("wavevector from energy inverts the dispersion") {
  const ModelParams p(1.0, 0.0, 0.5);
  for (double k : {0.2, 1.0, 2.5}) {
    CHECK(wavevector_from_energy(p, dispersion(p, k), +1) == doctest::Approx(k));
    CHECK(wavevector_from_energy(p, dispersion(p, k), -1) == doctest::Approx(-k));
  }
  CHECK_THROWS_AS(wavevector_from_energy(p, 2.5, 1), DomainError);
}

TEST_CASE("momentum wrapping") {
  CHECK(wrap_momentum(kPi + 0.5) == doctest::Approx(-kPi + 0.5));
  CHECK(wrap_momentum(-kPi - 0.5) == doctest::Approx(kPi - 0.5));
  CHECK(wrap_momentum(1.0) == 1.0);
}

TEST_CASE("invalid parameters are rejected") {
  CHECK_THROWS(ModelParams(0.0, 0.0, 0.5));
  CHECK_THROWS(ModelParams(1.0, 0.0, -0.1));
}
