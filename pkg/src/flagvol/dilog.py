"""Dilogarithm family: Li2, Bloch-Wigner D, Rogers R, and flattened R.

All functions use principal branches (log cut on (-oo,0], Li2 cut on
[1,oo)); values on a cut are the limit from above. Non-finite inputs are
rejected so NaN/Inf never propagate silently.

A ``Flattening`` packages a pair of log determinations (w0, w1) together
with the recovered parameter z = exp(w0) and the integer branch data

    p = (w0 - Log z)/(pi i),      q = (w1 + Log(1-z))/(pi i),

so w0 = Log z + p*pi*i and w1 = -Log(1-z) + q*pi*i. The flattened Rogers
value

    L(f) = R(z) + (pi i/2) (p Log(1-z) + q Log z)

is well-defined only modulo the lattice ``CCHAT_LATTICE`` * Z.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import BranchMismatchError, DegenerateError, NonFiniteError

PISQ_6 = math.pi ** 2 / 6.0

# Additive real period of the flattened Rogers value.
CCHAT_LATTICE = 4.0 * math.pi ** 2

# |p - round(p)| and |q - round(q)| must stay below this.
INTEGER_TOL = 1e-6

# exp(w0) must stay this far from 0 and 1.
PARAM_TOL = 1e-9


def _require_finite(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteError(f"non-finite argument {z!r}")
    return z


def li2(z: complex) -> complex:
    """Principal-branch dilogarithm Li2(z), continued off the unit disk.

    z = 1 is allowed (value pi^2/6); points of [1,oo) evaluate on the
    upper side of the cut.
    """
    return backend.li2_scalar(_require_finite(z))


def li2_values(z) -> np.ndarray:
    """Li2 over an array of finite complex numbers."""
    z = np.asarray(z, dtype=np.complex128)
    if not np.isfinite(z).all():
        raise NonFiniteError("non-finite entry in dilogarithm input array")
    return backend.li2_values(z)


def bloch_wigner(z: complex) -> float:
    """Bloch-Wigner function D(z) = Im Li2(z) + arg(1-z) ln|z|.

    Total on C: real inputs and inputs within 1e-13 of {0, 1} map to 0 by
    continuous extension.
    """
    return backend.bloch_wigner_scalar(_require_finite(z))


def bloch_wigner_values(z) -> np.ndarray:
    """D over an array of finite complex numbers."""
    z = np.asarray(z, dtype=np.complex128)
    if not np.isfinite(z).all():
        raise NonFiniteError("non-finite entry in Bloch-Wigner input array")
    return backend.bloch_wigner_values(z)


def rogers(z: complex) -> complex:
    """Rogers dilogarithm R(z) = Li2(z) + Log(z)Log(1-z)/2 - pi^2/6."""
    z = _require_finite(z)
    if z == 0 or z == 1:
        raise DegenerateError(f"Rogers dilogarithm undefined at {z}")
    return backend.li2_scalar(z) + 0.5 * cmath.log(z) * cmath.log(1.0 - z) - PISQ_6


@dataclass(frozen=True)
class Flattening:
    """A log-pair (w0, w1) with recovered parameter and integer branches."""

    w0: complex
    w1: complex
    z: complex
    p: int
    q: int

    def validate(self, tol: float = INTEGER_TOL) -> None:
        """Re-check the defining relations (cheap; used before evaluation)."""
        z = self.z
        if abs(cmath.exp(self.w0) - z) > 1e-12 * max(1.0, abs(z)):
            raise BranchMismatchError("exp(w0) does not reproduce z")
        p = (self.w0 - cmath.log(z)) / (1j * math.pi)
        q = (self.w1 + cmath.log(1.0 - z)) / (1j * math.pi)
        if abs(p - self.p) > tol or abs(q - self.q) > tol:
            raise BranchMismatchError("stored (p, q) do not match the logs")


def flattening_from_logs(w0: complex, w1: complex) -> Flattening:
    """Build a Flattening from two log determinations.

    Recovers z = exp(w0) and the integer branch data; raises
    BranchMismatchError when p or q is farther than 1e-6 from an integer
    and DegenerateError when exp(w0) is within 1e-9 of 0 or 1.
    """
    w0 = _require_finite(w0)
    w1 = _require_finite(w1)
    z = cmath.exp(w0)
    if abs(z) < PARAM_TOL or abs(z - 1.0) < PARAM_TOL:
        raise DegenerateError(f"exp(w0) = {z} too close to {{0, 1}}")
    p = (w0 - cmath.log(z)) / (1j * math.pi)
    q = (w1 + cmath.log(1.0 - z)) / (1j * math.pi)
    p_int = round(p.real)
    q_int = round(q.real)
    if abs(p - p_int) > INTEGER_TOL:
        raise BranchMismatchError(f"p = {p} is not an integer within {INTEGER_TOL}")
    if abs(q - q_int) > INTEGER_TOL:
        raise BranchMismatchError(f"q = {q} is not an integer within {INTEGER_TOL}")
    return Flattening(w0=complex(w0), w1=complex(w1), z=z, p=p_int, q=q_int)


def extended_rogers(f: Flattening) -> complex:
    """Flattened Rogers value R(z) + (pi i/2)(p Log(1-z) + q Log z).

    The result is meaningful modulo CCHAT_LATTICE (callers compare residues
    or imaginary parts).
    """
    f.validate()
    z = f.z
    correction = (0.5j * math.pi) * (f.p * cmath.log(1.0 - z) + f.q * cmath.log(z))
    return rogers(z) + correction


def rogers_imag_expansion(f: Flattening) -> float:
    """Im extended_rogers(f), re-expanded in real terms.

    Expanding the definition termwise gives

        Im L(f) = D(z) + (arg z ln|1-z| - arg(1-z) ln|z|)/2
                       + (pi/2)(p ln|1-z| + q ln|z|).

    The middle cross term is the per-flattening deviation of Im L from
    D(z); it cancels when summed over a closed complex but not pointwise.
    """
    z = f.z
    d = bloch_wigner(z)
    cross = 0.5 * (
        cmath.phase(z) * math.log(abs(1.0 - z))
        - cmath.phase(1.0 - z) * math.log(abs(z))
    )
    branch = 0.5 * math.pi * (f.p * math.log(abs(1.0 - z)) + f.q * math.log(abs(z)))
    return d + cross + branch


def lattice_residual(a: float, b: float, period: float = CCHAT_LATTICE) -> float:
    """Distance from a - b to the nearest integer multiple of ``period``."""
    d = (a - b) / period
    return abs(d - round(d)) * period
