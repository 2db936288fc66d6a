"""Total invariants of decorated complexes, duality, and relation checks.

Two volume normalizations live side by side for every tetrahedron:

* the flag volume (``bfg``): one quarter of the D-evaluation of the
  cross-ratio combination [z_12]+[z_21]+[z_34]+[z_43] of its flags;
* the coordinate volume (``gtz``): the D-evaluation of the 4-term
  combination of Ptolemy-coordinate cross-ratios.

Per tetrahedron the two satisfy vol_bfg = -1/4 vol_gtz exactly (the
summands are termwise inverse), and ``cchat`` sums the flattened Rogers
values, with imaginary part matching the coordinate volume once a complex
closes up. The two dualities act per vertex matrix: ``cartan`` conjugates
entries (negating volumes), ``transpose_inverse`` applies g -> w (g^T)^-1
w^-1 with a fixed antidiagonal determinant-1 correction w (making the image
a well-defined coset; volumes of closed complexes are preserved).
"""

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import flags as flags_mod
from . import ptolemy as ptolemy_mod
from .dilog import CCHAT_LATTICE, bloch_wigner_values, extended_rogers
from .errors import BranchMismatchError, DegenerateError
from .flags import FlagTetrahedron, triple_ratio
from .prebloch import dilog_eval
from .ptolemy import Decoration
from .triangulation import DecoratedComplex, Tetrahedron, _random_vertex_matrix

# Antidiagonal determinant-1 correction conjugating unipotent lower to upper.
W_CORRECTION = np.array(
    [[0.0, 0.0, 1.0], [0.0, -1.0, 0.0], [1.0, 0.0, 0.0]], dtype=np.complex128
)

FACE_LABELS: Dict[int, Tuple[int, int, int]] = {
    m: tuple(k for k in (1, 2, 3, 4) if k != m) for m in (1, 2, 3, 4)
}


@dataclass(frozen=True)
class TetContribution:
    """Orientation-weighted invariant contributions of one tetrahedron."""

    id: int
    orientation: int
    vol_bfg: float
    vol_gtz: float
    cchat: complex
    bfg_derived: bool
    # Im cchat minus vol_gtz, per tetrahedron; diagnostic only (cancels over
    # closed complexes, not pointwise).
    imag_residual: float


@dataclass(frozen=True)
class RelationCheck:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tol


@dataclass
class InvariantReport:
    vol_bfg: float
    vol_gtz: float
    cchat: complex
    cchat_lattice: float
    per_tet: List[TetContribution]
    flags: List[str] = field(default_factory=list)
    checks: List[RelationCheck] = field(default_factory=list)

    @property
    def residual_quarter(self) -> float:
        return abs(self.vol_bfg + 0.25 * self.vol_gtz)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "vol_bfg": self.vol_bfg,
            "vol_gtz": self.vol_gtz,
            "cchat": [self.cchat.real, self.cchat.imag],
            "cchat_lattice": self.cchat_lattice,
            "residual_quarter": self.residual_quarter,
            "per_tet": [
                {
                    "id": t.id,
                    "orientation": t.orientation,
                    "vol_bfg": t.vol_bfg,
                    "vol_gtz": t.vol_gtz,
                    "cchat": [t.cchat.real, t.cchat.imag],
                    "bfg_derived": t.bfg_derived,
                    "imag_residual": t.imag_residual,
                }
                for t in self.per_tet
            ],
            "flags": list(self.flags),
            "checks": [
                {"name": c.name, "residual": c.residual, "tol": c.tol,
                 "passed": c.passed}
                for c in self.checks
            ],
        }


def _tet_contribution(tet: Tetrahedron) -> TetContribution:
    payload = tet.payload
    derived = False
    try:
        if isinstance(payload, Decoration):
            ft = flags_mod.tetrahedron_from_decoration(payload.matrices)
            raw_bfg = 0.25 * dilog_eval(flags_mod.volume_element(ft))
            coords = ptolemy_mod.ptolemy_all(payload)
        else:
            coords = payload
            raw_bfg = None
        raw_gtz = dilog_eval(ptolemy_mod.volume_element(coords))
        flat = ptolemy_mod.flattenings(coords)
        raw_cchat = sum(extended_rogers(f) for f in flat)
    except DegenerateError as exc:
        raise DegenerateError(f"tetrahedron {tet.id}: {exc}") from exc
    except BranchMismatchError as exc:
        raise BranchMismatchError(f"tetrahedron {tet.id}: {exc}") from exc
    if raw_bfg is None:
        raw_bfg = -0.25 * raw_gtz
        derived = True
    s = tet.orientation
    return TetContribution(
        id=tet.id,
        orientation=s,
        vol_bfg=s * raw_bfg,
        vol_gtz=s * raw_gtz,
        cchat=s * raw_cchat,
        bfg_derived=derived,
        imag_residual=s * (raw_cchat.imag - raw_gtz),
    )


def compute_invariants(c: DecoratedComplex) -> InvariantReport:
    """All three invariants plus per-tetrahedron contributions."""
    per_tet = [_tet_contribution(t) for t in c.tetrahedra]
    warnings = [
        f"tetrahedron {t.id}: bfg volume derived from the coordinate volume"
        for t in per_tet
        if t.bfg_derived
    ]
    return InvariantReport(
        vol_bfg=float(sum(t.vol_bfg for t in per_tet)),
        vol_gtz=float(sum(t.vol_gtz for t in per_tet)),
        cchat=complex(sum(t.cchat for t in per_tet)),
        cchat_lattice=CCHAT_LATTICE,
        per_tet=per_tet,
        flags=warnings,
    )


def vol_bfg(c: DecoratedComplex) -> float:
    """Flag volume: sum of orientation * 1/4 * D-sums over tetrahedra."""
    return compute_invariants(c).vol_bfg


def vol_gtz(c: DecoratedComplex) -> float:
    """Coordinate volume: sum of orientation * D-sums of coordinate ratios."""
    return compute_invariants(c).vol_gtz


def cchat(c: DecoratedComplex) -> complex:
    """Sum of flattened Rogers values, meaningful modulo CCHAT_LATTICE."""
    return compute_invariants(c).cchat


def dual_decoration(c: DecoratedComplex, kind: str) -> DecoratedComplex:
    """Apply an involution to every vertex matrix; gluing data unchanged.

    ``cartan``: g -> conj(g). ``transpose_inverse``: g -> w (g^T)^-1 w^-1.
    Both send unipotent upper-triangular cosets to such cosets, so a
    consistent complex stays consistent. Coordinate payloads carry no coset
    to dualize and are rejected.
    """
    if kind == "cartan":
        def dual(g):
            return np.conj(g)
    elif kind == "transpose_inverse":
        w = W_CORRECTION
        def dual(g):
            return w @ np.linalg.inv(g.T) @ w
    else:
        raise ValueError(f"unknown involution kind {kind!r}")

    tets = []
    for t in c.tetrahedra:
        if not isinstance(t.payload, Decoration):
            raise DegenerateError(
                f"tetrahedron {t.id}: cannot dualize a coordinate payload"
            )
        tets.append(Tetrahedron(
            id=t.id,
            orientation=t.orientation,
            payload=Decoration([dual(g) for g in t.payload.matrices]),
        ))
    return DecoratedComplex(tets, c.gluings)


def relation_report(c: DecoratedComplex, tol: float = 1e-9) -> InvariantReport:
    """Invariants of c and its two duals, with the headline relations checked.

    Asserts (listing failures, never raising): per-tetrahedron and total
    vol_bfg = -1/4 vol_gtz; vol_bfg(cartan dual) = -vol_bfg per tetrahedron;
    and for closed complexes vol_bfg(transpose-inverse dual) = vol_bfg.
    """
    report = compute_invariants(c)
    cartan = compute_invariants(dual_decoration(c, "cartan"))
    ti = compute_invariants(dual_decoration(c, "transpose_inverse"))

    quarter_per_tet = max(
        (abs(t.vol_bfg + 0.25 * t.vol_gtz) for t in report.per_tet), default=0.0
    )
    cartan_per_tet = max(
        (abs(a.vol_bfg + b.vol_bfg)
         for a, b in zip(cartan.per_tet, report.per_tet)),
        default=0.0,
    )
    checks = [
        RelationCheck("quarter_relation_total", report.residual_quarter, tol),
        RelationCheck("quarter_relation_per_tet", quarter_per_tet, tol),
        RelationCheck("cartan_negates_vol_per_tet", cartan_per_tet, tol),
    ]
    if c.is_closed():
        checks.append(RelationCheck(
            "transpose_inverse_preserves_vol_closed",
            abs(ti.vol_bfg - report.vol_bfg),
            tol,
        ))
    else:
        report.flags.append(
            "transpose-inverse comparison skipped: complex has unglued faces "
            f"(difference {ti.vol_bfg - report.vol_bfg:+.6e})"
        )
    report.checks = checks
    return report


# ---------------------------------------------------------------------------
# duality coboundary probe


@dataclass(frozen=True)
class ProbePattern:
    """global_sign * delta = sum_m signs[m-1] * D(argument of face m)."""

    argument: str                       # "t" or "-t"
    global_sign: int
    signs: Tuple[int, int, int, int]


@dataclass(frozen=True)
class ProbeReport:
    delta: float
    face_dilogs: Dict[int, float]
    negated_face_dilogs: Dict[int, float]
    matches: Tuple[ProbePattern, ...]
    trials: int
    stable_patterns: Tuple[ProbePattern, ...]
    max_residual: float

    @property
    def stable(self) -> Optional[bool]:
        if self.trials == 0:
            return None
        return bool(self.stable_patterns)


def _face_triple_ratios(t: FlagTetrahedron) -> Dict[int, complex]:
    return {
        m: triple_ratio(*(t.flag(k) for k in FACE_LABELS[m]))
        for m in (1, 2, 3, 4)
    }


def _probe_once(t: FlagTetrahedron, match_tol: float):
    delta = dilog_eval(flags_mod.volume_element(t.dual())) - dilog_eval(
        flags_mod.volume_element(t)
    )
    tr = _face_triple_ratios(t)
    params = np.array([tr[m] for m in (1, 2, 3, 4)], dtype=np.complex128)
    dpos = dict(zip((1, 2, 3, 4), bloch_wigner_values(params)))
    dneg = dict(zip((1, 2, 3, 4), bloch_wigner_values(-params)))
    matches = []
    residuals = {}
    for argument, dvals in (("t", dpos), ("-t", dneg)):
        for gs in (1, -1):
            for eps in itertools.product((1, -1), repeat=4):
                s = sum(e * dvals[m] for e, m in zip(eps, (1, 2, 3, 4)))
                r = abs(gs * delta - s)
                pattern = ProbePattern(argument, gs, eps)
                residuals[pattern] = r
                if r < match_tol:
                    matches.append(pattern)
        if matches:
            # The literal +t space takes priority; widen only when empty.
            break
    return delta, dpos, dneg, tuple(matches), residuals


def dual_coboundary_probe(
    t: FlagTetrahedron,
    match_tol: float = 1e-8,
    stability_trials: int = 0,
    seed: int = 0,
) -> ProbeReport:
    """Search for a sign pattern expressing the dual-volume difference.

    Computes delta = D-eval(dual combination) - D-eval(combination) and the
    four face triple-ratio D-values, then searches the 2^4 * 2 sign/global
    patterns for delta = sum eps_f D(t_f); when that space is empty the
    search widens to the negated arguments D(-t_f) (where a stable pattern
    does exist). With ``stability_trials`` > 0 the surviving patterns are
    intersected across that many random tetrahedra; an empty intersection
    is reported, not raised.
    """
    delta, dpos, dneg, matches, _ = _probe_once(t, match_tol)

    stable = matches
    worst = 0.0
    trials_done = 0
    if stability_trials > 0:
        rng = np.random.default_rng(seed)
        while trials_done < stability_trials:
            mats = [_random_vertex_matrix(rng) for _ in range(4)]
            try:
                tet = flags_mod.tetrahedron_from_decoration(mats)
                _, _, _, trial_matches, residuals = _probe_once(tet, match_tol)
            except DegenerateError:
                continue
            trials_done += 1
            stable = tuple(p for p in stable if p in trial_matches)
            if stable:
                worst = max(worst, min(residuals[p] for p in stable))
            if not stable:
                break

    return ProbeReport(
        delta=delta,
        face_dilogs=dpos,
        negated_face_dilogs=dneg,
        matches=matches,
        trials=trials_done,
        stable_patterns=tuple(stable) if stability_trials > 0 else (),
        max_residual=worst,
    )
