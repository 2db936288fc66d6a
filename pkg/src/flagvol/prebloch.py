"""Formal integer combinations of parameters in C \\ {0, 1}.

Elements are evaluated numerically through the Bloch-Wigner function; no
quotient by the five-term relation is maintained structurally (relations
are verified by the test batteries, not imposed on the representation).
"""

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from .dilog import bloch_wigner_values
from .errors import DegenerateError, NonFiniteError

# Parameters must keep this distance from 0 and 1.
PARAM_TOL = 1e-12

# Parameters closer than this are merged into one term.
MERGE_TOL = 1e-14


def _check_param(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise NonFiniteError(f"non-finite parameter {z!r}")
    if abs(z) <= PARAM_TOL or abs(z - 1.0) <= PARAM_TOL:
        raise DegenerateError(f"parameter {z} too close to {{0, 1}}")
    return z


def _merged(terms: Iterable[Tuple[int, complex]]) -> Tuple[Tuple[int, complex], ...]:
    items = sorted(
        ((int(c), _check_param(z)) for c, z in terms),
        key=lambda t: (t[1].real, t[1].imag),
    )
    out: list[tuple[int, complex]] = []
    for coeff, param in items:
        if coeff == 0:
            continue
        if out and abs(out[-1][1] - param) <= MERGE_TOL:
            merged = out[-1][0] + coeff
            if merged == 0:
                out.pop()
            else:
                out[-1] = (merged, out[-1][1])
        else:
            out.append((coeff, param))
    return tuple(out)


@dataclass(frozen=True)
class PreBlochElement:
    """Finite integer combination sum_k coeff_k [param_k]."""

    terms: Tuple[Tuple[int, complex], ...]

    def __init__(self, terms: Iterable[Tuple[int, complex]] = ()):
        object.__setattr__(self, "terms", _merged(terms))

    def __add__(self, other: "PreBlochElement") -> "PreBlochElement":
        return PreBlochElement(self.terms + other.terms)

    def __neg__(self) -> "PreBlochElement":
        return PreBlochElement(tuple((-c, z) for c, z in self.terms))

    def __sub__(self, other: "PreBlochElement") -> "PreBlochElement":
        return self + (-other)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self) -> np.ndarray:
        return np.array([c for c, _ in self.terms], dtype=float)

    def parameters(self) -> np.ndarray:
        return np.array([z for _, z in self.terms], dtype=np.complex128)


def add(a: PreBlochElement, b: PreBlochElement) -> PreBlochElement:
    """Termwise-merged sum (the free-abelian-group operation)."""
    return a + b


def dilog_eval(a: PreBlochElement) -> float:
    """sum_k coeff_k D(param_k)."""
    if not a.terms:
        return 0.0
    return float(a.coefficients() @ bloch_wigner_values(a.parameters()))


def five_term_element(x: complex, y: complex) -> PreBlochElement:
    """The alternating five-term combination

        [x] - [y] + [y/x] - [(1-1/x)/(1-1/y)] + [(1-x)/(1-y)],

    defined whenever all five parameters avoid {0, 1}. Its D-evaluation
    vanishes identically.
    """
    x = complex(x)
    y = complex(y)
    for v in (x, y):
        if abs(v) <= PARAM_TOL or abs(v - 1.0) <= PARAM_TOL:
            raise DegenerateError(f"five-term parameter {v} too close to {{0, 1}}")
    if abs(x - y) <= PARAM_TOL * max(1.0, abs(x)):
        raise DegenerateError("five-term element needs x != y")
    params = (
        x,
        y,
        y / x,
        (1.0 - 1.0 / x) / (1.0 - 1.0 / y),
        (1.0 - x) / (1.0 - y),
    )
    coeffs = (1, -1, 1, -1, 1)
    return PreBlochElement(tuple(zip(coeffs, params)))


def involute(a: PreBlochElement, kind: str) -> PreBlochElement:
    """Termwise conjugate or reciprocal; both negate the D-evaluation."""
    if kind == "conjugate":
        return PreBlochElement(tuple((c, z.conjugate()) for c, z in a.terms))
    if kind == "reciprocal":
        return PreBlochElement(tuple((c, 1.0 / z) for c, z in a.terms))
    raise ValueError(f"unknown involution kind {kind!r}")
