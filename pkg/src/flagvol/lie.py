"""Matrix-level identities behind the involution sign behavior.

The group involution A -> (conj(A)^T)^-1 has differential X -> -conj(X)^T
at the identity; composing with the invariant polynomials P_k = Tr(.)^k
gives P_k(-conj(X)^T) = (-1)^k conj(P_k(X)), the sign source for the
volume/Chern-Simons behavior under duality.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np

TRACE_TOL = 1e-10


def _square(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.complex128)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise ValueError("expected a square matrix")
    if not (2 <= X.shape[0] <= 8):
        raise ValueError("supported sizes are 2..8")
    if not np.isfinite(X).all():
        raise ValueError("matrix has non-finite entries")
    return X


def cartan_diff(X) -> np.ndarray:
    """-conj(X)^T, the differential of A -> (conj(A)^T)^-1 at the identity."""
    X = _square(X)
    if abs(np.trace(X)) >= TRACE_TOL:
        raise ValueError(f"matrix is not traceless: |tr| = {abs(np.trace(X)):.3e}")
    return -np.conj(X).T


def trace_power(X, k: int) -> complex:
    """P_k(X) = Tr(X^k)."""
    X = _square(X)
    if k < 2:
        raise ValueError("k must be >= 2")
    return complex(np.trace(np.linalg.matrix_power(X, k)))


def cs_constant(k: int) -> Fraction:
    """The exact rational (-1)^(k-1) k! (k-1)! / (2^(k-1) (2k-1)!)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    sign = 1 if (k - 1) % 2 == 0 else -1
    return Fraction(sign * factorial(k) * factorial(k - 1),
                    2 ** (k - 1) * factorial(2 * k - 1))


@dataclass(frozen=True)
class SignIdentityReport:
    lhs: complex            # P_k(-conj(X)^T)
    rhs: complex            # (-1)^k conj(P_k(X))
    deviation: float

    def ok(self, tol: float = 1e-10) -> bool:
        return self.deviation < tol


def sign_identity_check(X, k: int) -> SignIdentityReport:
    """Verify P_k(-conj(X)^T) = (-1)^k conj(P_k(X)); reports both sides."""
    X = _square(X)
    lhs = complex(np.trace(np.linalg.matrix_power(-np.conj(X).T, k)))
    rhs = (-1) ** k * np.conj(trace_power(X, k))
    return SignIdentityReport(lhs=lhs, rhs=rhs, deviation=abs(lhs - rhs))


def group_involution(A, kind: str) -> np.ndarray:
    """(conj(A)^T)^-1 for 'cartan', (A^T)^-1 for 'transpose_inverse'."""
    A = _square(A)
    det = np.linalg.det(A)
    if abs(det) < 1e-12:
        raise ValueError("singular input")
    if kind == "cartan":
        return np.linalg.inv(np.conj(A).T)
    if kind == "transpose_inverse":
        return np.linalg.inv(A.T)
    raise ValueError(f"unknown involution kind {kind!r}")
