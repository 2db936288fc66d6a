"""Decorations, Ptolemy coordinates, and their flattened log pairs.

A decoration is an ordered 4-tuple of determinant-1 matrices, one per
vertex, each taken modulo right multiplication by unipotent upper-triangular
matrices. For a 4-tuple t = (t0,t1,t2,t3) of nonnegative integers with
t0+t1+t2+t3 = 3 the Ptolemy coordinate c_t is the determinant of the matrix
whose columns are the first t0 columns of g0, then t1 of g1, t2 of g2 and
t3 of g3, in ascending vertex order. The 16 tuples with all entries <= 2
are the nondegenerate ones; coordinates are exact coset invariants.

The per-tetrahedron invariants derive from four log pairs combining eight
coordinates each; the second component carries the branch data of 1/(1-z)
so the recovered (p, q) are even integers.
"""

import cmath
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from .dilog import Flattening, flattening_from_logs
from .errors import DegenerateError
from .flags import flag_from_decoration
from .prebloch import PreBlochElement

PtolemyKey = Tuple[int, int, int, int]

ALL_TUPLES: Tuple[PtolemyKey, ...] = tuple(
    (a, b, c, 3 - a - b - c)
    for a in range(4)
    for b in range(4 - a)
    for c in range(4 - a - b)
)

TUPLES: Tuple[PtolemyKey, ...] = tuple(t for t in ALL_TUPLES if max(t) <= 2)

# Relative floor under which a coordinate counts as vanishing.
DEGENERATE_TOL = 1e-12

# The four log pairs: ((w0 numerator, w0 denominator), (w1 numerator, w1 denominator)).
# exp(w0) of pair m is the m-th 4-term cross-ratio; the displayed second
# combinations satisfy exp(.) = 1 - z and are negated here so that the
# recovered q is an integer (exp(w1) = 1/(1-z)).
LOG_PAIRS = (
    ((((2, 0, 0, 1), (1, 1, 1, 0)), ((2, 0, 1, 0), (1, 1, 0, 1))),
     (((2, 1, 0, 0), (1, 0, 1, 1)), ((2, 0, 1, 0), (1, 1, 0, 1)))),
    ((((1, 1, 0, 1), (0, 2, 1, 0)), ((1, 1, 1, 0), (0, 2, 0, 1))),
     (((1, 2, 0, 0), (0, 1, 1, 1)), ((1, 1, 1, 0), (0, 2, 0, 1)))),
    ((((1, 0, 1, 1), (0, 1, 2, 0)), ((1, 0, 2, 0), (0, 1, 1, 1))),
     (((1, 1, 1, 0), (0, 0, 2, 1)), ((1, 0, 2, 0), (0, 1, 1, 1)))),
    ((((1, 0, 0, 2), (0, 1, 1, 1)), ((1, 0, 1, 1), (0, 1, 0, 2))),
     (((1, 1, 0, 1), (0, 0, 1, 2)), ((1, 0, 1, 1), (0, 1, 0, 2)))),
)


def key_to_string(t: PtolemyKey) -> str:
    return "".join(str(v) for v in t)


def string_to_key(s: str) -> PtolemyKey:
    if len(s) != 4 or not s.isdigit():
        raise ValueError(f"bad coordinate key {s!r}")
    t = tuple(int(ch) for ch in s)
    if sum(t) != 3 or max(t) > 2:
        raise ValueError(f"coordinate key {s!r} is not a nondegenerate 4-tuple")
    return t  # type: ignore[return-value]


@dataclass(frozen=True)
class Decoration:
    """Ordered 4-tuple of determinant-1 vertex matrices."""

    matrices: Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]

    def __init__(self, matrices):
        ms = tuple(np.array(m, dtype=np.complex128) for m in matrices)
        if len(ms) != 4:
            raise ValueError("a decoration needs exactly 4 vertex matrices")
        for idx, m in enumerate(ms):
            if m.shape != (3, 3):
                raise ValueError(f"vertex matrix {idx} must be 3x3")
            if not np.isfinite(m).all():
                raise ValueError(f"vertex matrix {idx} has non-finite entries")
            det = np.linalg.det(m)
            if abs(det - 1.0) >= 1e-9:
                raise DegenerateError(
                    f"vertex matrix {idx} determinant {det} is not 1 within 1e-9"
                )
        for m in ms:
            m.setflags(write=False)
        object.__setattr__(self, "matrices", ms)

    def conjugate(self) -> "Decoration":
        return Decoration(tuple(np.conj(m) for m in self.matrices))


def _det3(cols) -> complex:
    a, b, c = cols
    return complex(
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def ptolemy_coordinate(d: Decoration, t: PtolemyKey) -> complex:
    """c_t, the determinant of the column assembly for the tuple t.

    Zero values are permitted here; bulk evaluation flags them.
    """
    t = tuple(int(v) for v in t)
    if len(t) != 4 or any(v < 0 for v in t) or sum(t) != 3:
        raise ValueError(f"tuple {t} must be 4 nonnegative integers summing to 3")
    cols = []
    for vertex, count in enumerate(t):
        for col in range(count):
            cols.append(d.matrices[vertex][:, col])
    return _det3(cols)


class PtolemyCoordinates:
    """The 16 nondegenerate coordinates of one tetrahedron, all nonzero."""

    def __init__(self, values: Dict[PtolemyKey, complex]):
        got = {tuple(k): complex(v) for k, v in values.items()}
        missing = [t for t in TUPLES if t not in got]
        if missing:
            raise ValueError(f"missing coordinate keys: {missing}")
        extra = [k for k in got if k not in TUPLES]
        if extra:
            raise ValueError(f"unexpected coordinate keys: {extra}")
        top = max(abs(v) for v in got.values())
        if top == 0.0:
            raise DegenerateError("all coordinates vanish")
        for t in TUPLES:
            if abs(got[t]) <= DEGENERATE_TOL * top:
                raise DegenerateError(
                    f"vanishing Ptolemy coordinate c_{key_to_string(t)}"
                )
        self._values = {t: got[t] for t in TUPLES}

    def __getitem__(self, t: PtolemyKey) -> complex:
        return self._values[tuple(t)]

    def items(self):
        return self._values.items()

    def conjugate(self) -> "PtolemyCoordinates":
        return PtolemyCoordinates({t: v.conjugate() for t, v in self._values.items()})


def ptolemy_all(d: Decoration) -> PtolemyCoordinates:
    """All 16 nondegenerate coordinates; raises naming any vanishing tuple."""
    return PtolemyCoordinates({t: ptolemy_coordinate(d, t) for t in TUPLES})


def _log_combination(c: PtolemyCoordinates, combo) -> complex:
    (num, den) = combo
    return (
        cmath.log(c[num[0]]) + cmath.log(c[num[1]])
        - cmath.log(c[den[0]]) - cmath.log(c[den[1]])
    )


def flattenings(c: PtolemyCoordinates) -> Tuple[Flattening, ...]:
    """The four flattened log pairs of one tetrahedron.

    exp(w0) of pair m reproduces the m-th cross-ratio exactly (same logs);
    branch recovery failures propagate as BranchMismatchError.
    """
    out = []
    for w0_combo, w1_combo in LOG_PAIRS:
        w0 = _log_combination(c, w0_combo)
        w1 = -_log_combination(c, w1_combo)
        out.append(flattening_from_logs(w0, w1))
    return tuple(out)


def ratios(c: PtolemyCoordinates) -> Tuple[complex, complex, complex, complex]:
    """The four coordinate cross-ratios (products, not exponentiated logs)."""
    vals = []
    for (num, den), _ in LOG_PAIRS:
        vals.append(c[num[0]] * c[num[1]] / (c[den[0]] * c[den[1]]))
    return tuple(vals)


def volume_element(c: PtolemyCoordinates) -> PreBlochElement:
    """The 4-term combination of coordinate cross-ratios.

    Its D-evaluation is the tetrahedron's coordinate-volume contribution;
    termwise it is inverse to the flag-tetrahedron combination.
    """
    try:
        return PreBlochElement(tuple((1, r) for r in ratios(c)))
    except DegenerateError as exc:
        raise DegenerateError(f"degenerate coordinate ratio: {exc}") from exc


@dataclass(frozen=True)
class DetIdentityReport:
    """Deviations between coordinate determinants and flag pairings."""

    max_point_deviation: float
    max_pairing_deviation: float

    @property
    def max_deviation(self) -> float:
        return max(self.max_point_deviation, self.max_pairing_deviation)

    def ok(self, tol: float = 1e-9) -> bool:
        return self.max_deviation < tol


def det_identities_check(d: Decoration) -> DetIdentityReport:
    """Verify det({g_i}1 {g_j}1 {g_k}1) = det(x_i,x_j,x_k) and
    det({g_i}2 {g_j}1) = f_i(x_j) for all index choices.

    Left sides are assembled column determinants; right sides come from the
    canonical flag representatives (first column, cross of first two).
    Generic position is not required: vanishing pairings check as 0 = 0.
    """
    fl = [flag_from_decoration(m) for m in d.matrices]
    x = [fl_i.x.coords for fl_i in fl]
    f = [fl_i.f.coords for fl_i in fl]

    worst_points = 0.0
    for i in range(4):
        for j in range(4):
            for k in range(4):
                if len({i, j, k}) != 3:
                    continue
                lhs = _det3([d.matrices[i][:, 0], d.matrices[j][:, 0],
                             d.matrices[k][:, 0]])
                rhs = _det3([x[i], x[j], x[k]])
                worst_points = max(worst_points, abs(lhs - rhs))

    worst_pairings = 0.0
    for i in range(4):
        for j in range(4):
            if i == j:
                continue
            lhs = _det3([d.matrices[i][:, 0], d.matrices[i][:, 1],
                         d.matrices[j][:, 0]])
            rhs = f[i] @ x[j]
            worst_pairings = max(worst_pairings, abs(lhs - rhs))

    return DetIdentityReport(
        max_point_deviation=worst_points,
        max_pairing_deviation=worst_pairings,
    )


def coset_equivalent(g: np.ndarray, h: np.ndarray, tol: float = 1e-8) -> bool:
    """True iff g^-1 h is unipotent upper-triangular within tol."""
    g = np.asarray(g, dtype=np.complex128)
    h = np.asarray(h, dtype=np.complex128)
    u = np.linalg.solve(g, h)
    below = max(abs(u[1, 0]), abs(u[2, 0]), abs(u[2, 1]))
    diag = max(abs(u[0, 0] - 1.0), abs(u[1, 1] - 1.0), abs(u[2, 2] - 1.0))
    return bool(below < tol and diag < tol)
