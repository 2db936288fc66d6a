"""Numba-jitted dilogarithm kernels.

Same region reduction and series as `_dilog_numpy`; the scalar kernel is the
jitted analogue of `li2_scalar` and the array kernels loop over it.
"""

import cmath
import math

import numba
import numpy as np

from ._dilog_numpy import PISQ_6, SNAP_TOL, UCOEF

_UCOEF = UCOEF.copy()


@numba.njit(cache=True)
def _li2(z):
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
        for k in range(_UCOEF.shape[0]):
            upow *= u
            total += _UCOEF[k] * upow
    return acc + sgn * total


@numba.njit(cache=True)
def _bloch_wigner(z):
    if abs(z) < SNAP_TOL or abs(z - 1.0) < SNAP_TOL:
        return 0.0
    if z.imag == 0.0:
        return 0.0
    return _li2(z).imag + math.atan2(-z.imag, 1.0 - z.real) * math.log(abs(z))


@numba.njit(cache=True)
def _li2_many(zs):
    out = np.empty(zs.shape[0], dtype=np.complex128)
    for i in range(zs.shape[0]):
        out[i] = _li2(zs[i])
    return out


@numba.njit(cache=True, parallel=True)
def _li2_many_par(zs):
    out = np.empty(zs.shape[0], dtype=np.complex128)
    for i in numba.prange(zs.shape[0]):
        out[i] = _li2(zs[i])
    return out


@numba.njit(cache=True)
def _bloch_wigner_many(zs):
    out = np.empty(zs.shape[0])
    for i in range(zs.shape[0]):
        out[i] = _bloch_wigner(zs[i])
    return out


@numba.njit(cache=True, parallel=True)
def _bloch_wigner_many_par(zs):
    out = np.empty(zs.shape[0])
    for i in numba.prange(zs.shape[0]):
        out[i] = _bloch_wigner(zs[i])
    return out


# Below this many points the thread fan-out costs more than it saves.
_PARALLEL_CUTOFF = 4096


def li2_scalar(z: complex) -> complex:
    return _li2(complex(z))


def li2_values(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    flat = np.ascontiguousarray(z.ravel())
    many = _li2_many_par if flat.size >= _PARALLEL_CUTOFF else _li2_many
    return many(flat).reshape(z.shape)


def bloch_wigner_scalar(z: complex) -> float:
    return _bloch_wigner(complex(z))


def bloch_wigner_values(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.complex128)
    flat = np.ascontiguousarray(z.ravel())
    many = (_bloch_wigner_many_par if flat.size >= _PARALLEL_CUTOFF
            else _bloch_wigner_many)
    return many(flat).reshape(z.shape)


def warm_up() -> None:
    """Trigger compilation of all kernels (one-time cost, cached on disk)."""
    li2_values(np.array([0.25 + 0.25j, 3.0 + 1.0j, -0.9 + 0.0j]))
    bloch_wigner_values(np.array([0.25 + 0.25j]))
    li2_scalar(0.5j)
    bloch_wigner_scalar(0.5j)
    bulk = np.full(_PARALLEL_CUTOFF, 0.25 + 0.25j)
    li2_values(bulk)
    bloch_wigner_values(bulk)
