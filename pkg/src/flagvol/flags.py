"""Flags in the complex projective plane and their cross-ratio invariants.

A flag is an incident point-line pair (x, f): x a point in homogeneous
coordinates, f a linear form with f(x) = 0. Flag 4-tuples carry the labels
1..4; for each ordered pair (i, j) the remaining labels (k, l) are chosen
so that (1,2,3,4) -> (i,j,k,l) is an even permutation, and

    z_ij = f_i(x_k) det(x_i,x_j,x_l) / (f_i(x_l) det(x_i,x_j,x_k)).

`cross_ratio_oracle` recomputes the same number along an independent route:
the lines through x_i form a projective line, and z_ij is the classical
cross-ratio of ker(f_i), (x_i x_j), (x_i x_k), (x_i x_l) on that pencil.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DegenerateError, NonFiniteError
from .prebloch import PreBlochElement

# Scale window for homogeneous representatives.
SCALE_MIN = 1e-6
SCALE_MAX = 1e6

# Incidence bound |f(x)| for normalized representatives.
INCIDENCE_TOL = 1e-9

# Genericity floor for pairings and determinants of normalized representatives.
GENERIC_TOL = 1e-10


def _coords(values) -> np.ndarray:
    v = np.asarray(values, dtype=np.complex128).reshape(3)
    if not np.isfinite(v).all():
        raise NonFiniteError("non-finite homogeneous coordinates")
    top = float(np.max(np.abs(v)))
    if top == 0.0:
        raise DegenerateError("zero homogeneous coordinate vector")
    if not (SCALE_MIN <= top <= SCALE_MAX):
        raise DegenerateError(
            f"representative scale {top:.3e} outside [{SCALE_MIN}, {SCALE_MAX}]"
        )
    return v


def _normalized(v: np.ndarray) -> np.ndarray:
    # Divide by the largest-modulus coordinate, making it exactly 1.
    return v / v[int(np.argmax(np.abs(v)))]


@dataclass(frozen=True)
class ProjectivePoint:
    coords: np.ndarray

    def __init__(self, coords):
        object.__setattr__(self, "coords", _coords(coords))

    def normalized(self) -> np.ndarray:
        return _normalized(self.coords)


@dataclass(frozen=True)
class ProjectiveCovector:
    coords: np.ndarray

    def __init__(self, coords):
        object.__setattr__(self, "coords", _coords(coords))

    def normalized(self) -> np.ndarray:
        return _normalized(self.coords)

    def __call__(self, point: ProjectivePoint) -> complex:
        return complex(self.coords @ point.coords)


def projectively_equal(a, b, tol: float = 1e-9) -> bool:
    """True when two coordinate triples agree up to a scalar."""
    u = _normalized(np.asarray(a.coords if hasattr(a, "coords") else a))
    v = _normalized(np.asarray(b.coords if hasattr(b, "coords") else b))
    return bool(np.max(np.abs(u - v)) < tol)


@dataclass(frozen=True)
class Flag:
    """An incident point-line pair in the projective plane."""

    x: ProjectivePoint
    f: ProjectiveCovector

    def __post_init__(self):
        pairing = _normalized(self.f.coords) @ _normalized(self.x.coords)
        if abs(pairing) >= INCIDENCE_TOL:
            raise DegenerateError(f"flag not incident: |f(x)| = {abs(pairing):.3e}")


def flag_from_decoration(g: np.ndarray) -> Flag:
    """Project a determinant-1 matrix to its flag.

    The point is the first column; the line is the cross product of the
    first two columns read as a covector (equal to the third row of the
    inverse when det g = 1). Representatives are kept unrescaled so that
    determinant identities against Ptolemy coordinates hold exactly.
    """
    g = np.asarray(g, dtype=np.complex128)
    if g.shape != (3, 3):
        raise ValueError("decoration matrix must be 3x3")
    det = np.linalg.det(g)
    if abs(det - 1.0) >= 1e-9:
        raise DegenerateError(f"matrix determinant {det} is not 1 within 1e-9")
    x = ProjectivePoint(g[:, 0])
    f = ProjectiveCovector(np.cross(g[:, 0], g[:, 1]))
    return Flag(x=x, f=f)


def dual_flag(fl: Flag) -> Flag:
    """Swap roles: the line becomes a point of the dual plane and vice versa."""
    return Flag(x=ProjectivePoint(fl.f.coords), f=ProjectiveCovector(fl.x.coords))


class FlagTetrahedron:
    """An ordered 4-tuple of flags in generic position, labeled 1..4."""

    def __init__(self, flags: Tuple[Flag, Flag, Flag, Flag]):
        flags = tuple(flags)
        if len(flags) != 4:
            raise ValueError("a flag tetrahedron needs exactly 4 flags")
        self.flags = flags
        self._xn = [_normalized(fl.x.coords) for fl in flags]
        self._fn = [_normalized(fl.f.coords) for fl in flags]
        self._check_generic()

    def _check_generic(self):
        for i in range(4):
            for j in range(4):
                if i != j and abs(self._fn[i] @ self._xn[j]) < GENERIC_TOL:
                    raise DegenerateError(
                        f"degenerate pairing f_{i + 1}(x_{j + 1})"
                    )
        for i in range(4):
            for j in range(i + 1, 4):
                for k in range(j + 1, 4):
                    d = _det3(self._xn[i], self._xn[j], self._xn[k])
                    if abs(d) < GENERIC_TOL:
                        raise DegenerateError(
                            f"collinear points x_{i + 1}, x_{j + 1}, x_{k + 1}"
                        )

    def flag(self, label: int) -> Flag:
        return self.flags[label - 1]

    def point(self, label: int) -> np.ndarray:
        return self.flags[label - 1].x.coords

    def covector(self, label: int) -> np.ndarray:
        return self.flags[label - 1].f.coords

    def dual(self) -> "FlagTetrahedron":
        return FlagTetrahedron(tuple(dual_flag(fl) for fl in self.flags))

    def conjugate(self) -> "FlagTetrahedron":
        return FlagTetrahedron(
            tuple(
                Flag(
                    x=ProjectivePoint(np.conj(fl.x.coords)),
                    f=ProjectiveCovector(np.conj(fl.f.coords)),
                )
                for fl in self.flags
            )
        )


def tetrahedron_from_decoration(matrices) -> FlagTetrahedron:
    """Flags of the four decoration matrices, in order (label = position + 1)."""
    return FlagTetrahedron(tuple(flag_from_decoration(g) for g in matrices))


def _det3(a, b, c) -> complex:
    return complex(
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def even_completion(i: int, j: int) -> Tuple[int, int]:
    """The unique (k, l) making (1,2,3,4) -> (i,j,k,l) an even permutation."""
    if i == j or not (1 <= i <= 4 and 1 <= j <= 4):
        raise ValueError(f"labels must be distinct and in 1..4, got ({i}, {j})")
    rest = [m for m in (1, 2, 3, 4) if m not in (i, j)]
    for k, l in (rest, rest[::-1]):
        perm = (i, j, k, l)
        inversions = sum(
            1 for a in range(4) for b in range(a + 1, 4) if perm[a] > perm[b]
        )
        if inversions % 2 == 0:
            return k, l
    raise AssertionError("unreachable: one ordering of (k, l) is always even")


def cross_ratio(t: FlagTetrahedron, i: int, j: int) -> complex:
    """z_ij by the determinant formula; projective-representative free."""
    k, l = even_completion(i, j)
    x = {m: t.point(m) for m in (i, j, k, l)}
    fi = t.covector(i)
    factors = {
        "f_i(x_k)": fi @ x[k],
        "f_i(x_l)": fi @ x[l],
        "det(x_i,x_j,x_l)": _det3(x[i], x[j], x[l]),
        "det(x_i,x_j,x_k)": _det3(x[i], x[j], x[k]),
    }
    floor = 1e-12 * _scale(t)
    for name, v in factors.items():
        if abs(v) < floor:
            raise DegenerateError(f"cross-ratio factor {name} vanishes")
    return complex(factors["f_i(x_k)"] * factors["det(x_i,x_j,x_l)"]
                   / (factors["f_i(x_l)"] * factors["det(x_i,x_j,x_k)"]))


def _scale(t: FlagTetrahedron) -> float:
    return float(
        max(np.max(np.abs(t.point(m))) for m in (1, 2, 3, 4))
        * max(np.max(np.abs(t.covector(m))) for m in (1, 2, 3, 4))
    ) or 1.0


def cross_ratio_oracle(t: FlagTetrahedron, i: int, j: int) -> complex:
    """z_ij through the pencil of lines at x_i (independent route).

    Coordinates on the pencil come from an orthonormal basis of the
    subspace of covectors annihilating x_i; the four lines ker(f_i),
    (x_i x_j), (x_i x_k), (x_i x_l) are located in that basis and the
    classical four-point cross-ratio is taken in that order.
    """
    k, l = even_completion(i, j)
    xi = t.point(i)
    lines = [
        t.covector(i),
        np.cross(xi, t.point(j)),
        np.cross(xi, t.point(k)),
        np.cross(xi, t.point(l)),
    ]
    # Basis of {covectors m : m(x_i) = 0} from the SVD null space of x_i^T.
    _, _, vh = np.linalg.svd(xi.reshape(1, 3))
    basis = np.column_stack([np.conj(vh[1]), np.conj(vh[2])])
    coords = [np.linalg.lstsq(basis, ln, rcond=None)[0] for ln in lines]

    def det2(p, q):
        return p[0] * q[1] - p[1] * q[0]

    a, b, c, d = coords
    num = det2(a, c) * det2(b, d)
    den = det2(a, d) * det2(b, c)
    if min(abs(det2(a, c)), abs(det2(b, d)), abs(det2(a, d)), abs(det2(b, c))) == 0.0:
        raise DegenerateError("degenerate pencil configuration")
    return complex(num / den)


def volume_element(t: FlagTetrahedron) -> PreBlochElement:
    """The 4-term combination [z_12] + [z_21] + [z_34] + [z_43].

    One quarter of its D-evaluation is the tetrahedron's volume
    contribution.
    """
    return PreBlochElement(
        tuple((1, cross_ratio(t, i, j)) for i, j in ((1, 2), (2, 1), (3, 4), (4, 3)))
    )


def triple_ratio(f1: Flag, f2: Flag, f3: Flag) -> complex:
    """f1(x2) f2(x3) f3(x1) / (f1(x3) f2(x1) f3(x2)); cyclic-invariant."""
    x = [f1.x.coords, f2.x.coords, f3.x.coords]
    f = [f1.f.coords, f2.f.coords, f3.f.coords]
    pair = {}
    scale = max(float(np.max(np.abs(v))) for v in x) * max(
        float(np.max(np.abs(v))) for v in f
    )
    for a in range(3):
        for b in range(3):
            if a != b:
                pair[a, b] = f[a] @ x[b]
                if abs(pair[a, b]) < GENERIC_TOL * scale:
                    raise DegenerateError(
                        f"triple ratio degenerate: f_{a + 1}(x_{b + 1}) vanishes"
                    )
    return complex(
        pair[0, 1] * pair[1, 2] * pair[2, 0] / (pair[0, 2] * pair[1, 0] * pair[2, 1])
    )
