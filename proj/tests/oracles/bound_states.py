"""Bound-state energy and qubit weight at J=1, Omega=0, g'=2.

omega solves omega = g^2 I(omega) with I(z) = int dk / (z + 2J cos k); the
weight is the residue 1 / (1 - g^2 I'(omega)), g^2 = g'^2 / (2 pi). Both are
found numerically here (root finding and numerical differentiation), not from
the closed forms the library uses.

Frozen output (mp.dps = 30):
  omega_plus = 2.54403929902813792850484492348
  p_b        = 0.276393202250021030359082633127
"""
import mpmath as mp

mp.mp.dps = 30
J = mp.mpf(1)
gp = mp.mpf(2)
g2 = gp**2 / (2 * mp.pi)


def I(z):
    return mp.quad(lambda k: 1 / (z + 2 * J * mp.cos(k)), [-mp.pi, 0, mp.pi])


omega = mp.findroot(lambda w: w - g2 * I(w), mp.mpf("2.5"))
p_b = 1 / (1 - g2 * mp.diff(I, omega))
print("omega_plus =", omega)
print("p_b        =", p_b)
