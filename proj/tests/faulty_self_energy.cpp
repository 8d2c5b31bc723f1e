// Library copy with the self energy on the wrong Riemann sheet: the principal
// square root of z^2 - 4J^2 instead of sqrt(z - 2J) sqrt(z + 2J). Callers in
// other translation units get the faulty version.
#define self_energy self_energy_reference
#include "../src/resolvent.cpp"
#undef self_energy

namespace wgqed {

cplx self_energy(const ModelParams& params, cplx z);

cplx self_energy(const ModelParams& params, cplx z) {
  const double twoJ = 2.0 * params.J();
  return 2.0 * kPi / std::sqrt(z * z - twoJ * twoJ);
}

}  // namespace wgqed
