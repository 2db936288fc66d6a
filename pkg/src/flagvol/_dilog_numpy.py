"""Pure-numpy dilogarithm kernels (reference backend).

Algorithm, shared verbatim with the numba backend:

* inversion  Li2(z) = -Li2(1/z) - pi^2/6 - Log(-z)^2/2   for |z| > 1,
* reflection Li2(z) = pi^2/6 - Log(z)Log(1-z) - Li2(1-z) for Re z > 1/2,
* power series sum z^n/n^2 for |z| <= 1/2,
* Bernoulli series Li2(z) = sum_n B_n u^(n+1)/(n+1)!, u = -Log(1-z),
  for the remaining annulus (|u| < 1.4 there, so 35 terms reach 1e-17).

Branch cuts are the principal ones; points on [1, oo) evaluate to the limit
from above (the sign of Log(-z) follows IEEE signed zeros, so x+0j lands on
the upper side).
"""

import cmath
import math
from fractions import Fraction

import numpy as np

PI = math.pi
PISQ_6 = PI * PI / 6.0

# Inputs this close to 0 or 1 snap to the continuous extension D = 0.
SNAP_TOL = 1e-13

_UCOEF_TERMS = 35


def _u_series_coefficients(n_terms: int = _UCOEF_TERMS) -> np.ndarray:
    """B_n/(n+1)! for n = 0..n_terms-1, with the B_1 = -1/2 convention."""
    acc = []
    bern = []
    for m in range(n_terms):
        acc.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            acc[j - 1] = j * (acc[j - 1] - acc[j])
        bern.append(acc[0])
    bern[1] = Fraction(-1, 2)
    return np.array(
        [float(bern[n]) / math.factorial(n + 1) for n in range(n_terms)]
    )


UCOEF = _u_series_coefficients()


def li2_scalar(z: complex) -> complex:
    """Principal-branch dilogarithm of one finite complex number."""
    z = complex(z)
    if z == 0:
        return 0j
    if z == 1:
        return complex(PISQ_6, 0.0)
    acc = 0j
    sgn = 1.0
    if abs(z) > 1.0:
        lz = cmath.log(-z)
        acc -= PISQ_6 + 0.5 * lz * lz
        sgn = -1.0
        z = 1.0 / z
    if z.real > 0.5:
        acc += sgn * (PISQ_6 - cmath.log(z) * cmath.log(1.0 - z))
        sgn = -sgn
        z = 1.0 - z
    if abs(z) <= 0.5:
        total = 0j
        term = 1.0 + 0j
        for n in range(1, 80):
            term *= z
            t = term / (n * n)
            total += t
            if abs(t) < 1e-17 * (abs(total) + 1e-300):
                break
    else:
        u = -cmath.log(1.0 - z)
        total = 0j
        upow = 1.0 + 0j
        for c in UCOEF:
            upow *= u
            total += c * upow
    return acc + sgn * total


def li2_values(z: np.ndarray) -> np.ndarray:
    """Vectorized principal-branch dilogarithm."""
    z = np.asarray(z, dtype=np.complex128)
    flat = z.ravel().copy()
    out = np.zeros(flat.shape, dtype=np.complex128)

    at_zero = flat == 0
    at_one = flat == 1
    special = at_zero | at_one
    # Dummy value keeps the transforms log-safe; overwritten at the end.
    flat[special] = 0.25

    acc = np.zeros(flat.shape, dtype=np.complex128)
    sgn = np.ones(flat.shape)

    big = np.abs(flat) > 1.0
    if big.any():
        lz = np.log(-flat[big])
        acc[big] -= PISQ_6 + 0.5 * lz * lz
        sgn[big] = -1.0
        flat[big] = 1.0 / flat[big]

    right = flat.real > 0.5
    if right.any():
        w = flat[right]
        acc[right] += sgn[right] * (PISQ_6 - np.log(w) * np.log(1.0 - w))
        sgn[right] = -sgn[right]
        flat[right] = 1.0 - w

    core = np.zeros(flat.shape, dtype=np.complex128)
    small = np.abs(flat) <= 0.5
    if small.any():
        w = flat[small]
        total = np.zeros(w.shape, dtype=np.complex128)
        term = np.ones(w.shape, dtype=np.complex128)
        for n in range(1, 64):
            term = term * w
            total += term / (n * n)
        core[small] = total
    rest = ~small
    if rest.any():
        u = -np.log(1.0 - flat[rest])
        total = np.zeros(u.shape, dtype=np.complex128)
        upow = np.ones(u.shape, dtype=np.complex128)
        for c in UCOEF:
            upow = upow * u
            total += c * upow
        core[rest] = total

    out = acc + sgn * core
    out[at_zero] = 0.0
    out[at_one] = PISQ_6
    return out.reshape(z.shape)


def bloch_wigner_scalar(z: complex) -> float:
    """D(z) = Im Li2(z) + arg(1-z) ln|z|, extended by 0 over {0, 1} and R."""
    z = complex(z)
    if abs(z) < SNAP_TOL or abs(z - 1.0) < SNAP_TOL:
        return 0.0
    if z.imag == 0.0:
        return 0.0
    return li2_scalar(z).imag + math.atan2(-z.imag, 1.0 - z.real) * math.log(abs(z))


def bloch_wigner_values(z: np.ndarray) -> np.ndarray:
    """Vectorized Bloch-Wigner function."""
    z = np.asarray(z, dtype=np.complex128)
    flat = z.ravel()
    out = np.zeros(flat.shape)
    live = (np.abs(flat) >= SNAP_TOL) & (np.abs(flat - 1.0) >= SNAP_TOL)
    live &= flat.imag != 0.0
    if live.any():
        w = flat[live]
        out[live] = li2_values(w).imag + np.angle(1.0 - w) * np.log(np.abs(w))
    return out.reshape(z.shape)
