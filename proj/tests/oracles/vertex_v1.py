"""First vertex correction on the bound-to-bound shell.

V1(z; k, k) = 2 g^2 int_0^pi dv 1 / ((z - w_k - w_v)^2 H(z; w_v)),
z = w_k + w_minus + i eta, for J=1, Omega=0, g'=0.5, eta=1e-6, with
H(z; w) = z - w - g^2 I(z - w) and I(z) = 2 pi / (sqrt(z - 2J) sqrt(z + 2J)).
The near-pole of 1/H at v = k is bracketed with explicit breakpoints.

Frozen output (mp.dps = 30, printed to 9 significant digits):
  k = 0.5: (-143.158754 - 21.5505987j)
  k = 1.0: (-232.750635 - 31.9665374j)
"""
import mpmath as mp

mp.mp.dps = 30
J = mp.mpf(1)
gp = mp.mpf("0.5")
g2 = gp**2 / (2 * mp.pi)
w_minus = -mp.sqrt(2 * J**2 + mp.sqrt(4 * J**4 + gp**4))


def I(z):
    return 2 * mp.pi / (mp.sqrt(z - 2 * J) * mp.sqrt(z + 2 * J))


def H(z, w):
    return z - w - g2 * I(z - w)


def V1(k, eta):
    wk = -2 * J * mp.cos(k)
    z = wk + w_minus + 1j * eta
    f = lambda v: 1 / ((z - wk + 2 * J * mp.cos(v)) ** 2 * H(z, -2 * J * mp.cos(v)))
    d1, d2 = mp.mpf("1e-3"), mp.mpf("1e-5")
    pts = [0, k - d1, k - d2, k, k + d2, k + d1, mp.pi]
    return 2 * g2 * mp.quad(f, pts, maxdegree=10)


for k in ["0.5", "1.0"]:
    print("k =", k + ":", mp.nstr(V1(mp.mpf(k), mp.mpf("1e-6")), 9))
