"""Property battery behind `flagvol selftest` and the acceptance suite.

Every check draws its own deterministic samples, measures a worst-case
residual, and compares it against a tolerance. The CLI scales all
tolerances through a single knob; the pinned per-check defaults reproduce
the stated verification thresholds.
"""

import math
from dataclasses import dataclass
from typing import List

import numpy as np

from . import flags as flags_mod
from . import ptolemy as ptolemy_mod
from .dilog import bloch_wigner_values, lattice_residual
from .errors import DegenerateError
from .invariants import (
    compute_invariants,
    dual_coboundary_probe,
    dual_decoration,
)
from .lie import sign_identity_check
from .triangulation import (
    DecoratedComplex,
    Tetrahedron,
    _random_vertex_matrix,
    gen_boundary_4simplex,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tol: float
    samples: int
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.residual < self.tol


@dataclass(frozen=True)
class SelfTestReport:
    results: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> List[str]:
        out = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            line = (f"{status}  {r.name:<28} residual {r.residual:.3e}  "
                    f"tol {r.tol:.1e}  samples {r.samples}")
            if r.note:
                line += f"  [{r.note}]"
            out.append(line)
        return out


def sample_parameters(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random z with |z| in [0.05, 20], at least 1e-3 from {0, 1} and R."""
    out = np.empty(n, dtype=np.complex128)
    have = 0
    while have < n:
        m = (n - have) * 2 + 16
        r = np.exp(rng.uniform(math.log(0.05), math.log(20.0), m))
        theta = rng.uniform(-math.pi, math.pi, m)
        z = r * np.exp(1j * theta)
        good = (np.abs(z.imag) >= 1e-3) & (np.abs(z) >= 1e-3) \
            & (np.abs(z - 1.0) >= 1e-3)
        z = z[good][: n - have]
        out[have: have + z.size] = z
        have += z.size
    return out


def random_decoration(rng: np.random.Generator) -> ptolemy_mod.Decoration:
    """A random nondegenerate decoration (vertex matrices of determinant 1)."""
    while True:
        mats = [_random_vertex_matrix(rng) for _ in range(4)]
        try:
            d = ptolemy_mod.Decoration(mats)
            ptolemy_mod.ptolemy_all(d)
            flags_mod.tetrahedron_from_decoration(d.matrices)
        except DegenerateError:
            continue
        return d


def random_traceless(rng: np.random.Generator, n: int) -> np.ndarray:
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    X -= np.trace(X) / n * np.eye(n)
    return X


def check_dilog_symmetries(n: int, tol: float, rng: np.random.Generator) -> CheckResult:
    """|D(conj z)+D(z)|, |D(1/z)+D(z)|, |D(1-z)+D(z)| over random points."""
    z = sample_parameters(rng, n)
    d = bloch_wigner_values(z)
    worst = max(
        float(np.max(np.abs(bloch_wigner_values(np.conj(z)) + d))),
        float(np.max(np.abs(bloch_wigner_values(1.0 / z) + d))),
        float(np.max(np.abs(bloch_wigner_values(1.0 - z) + d))),
    )
    return CheckResult("dilog_symmetries", worst, tol, n)


def check_five_term(n: int, tol: float, rng: np.random.Generator) -> CheckResult:
    """D(x) - D(y) + D(y/x) - D((1-1/x)/(1-1/y)) + D((1-x)/(1-y)) = 0."""
    worst = 0.0
    have = 0
    while have < n:
        m = (n - have) * 2 + 16
        x = rng.standard_normal(m) * 1.5 + 1j * rng.standard_normal(m) * 1.5
        y = rng.standard_normal(m) * 1.5 + 1j * rng.standard_normal(m) * 1.5
        params = np.stack(
            [x, y, y / x, (1 - 1 / x) / (1 - 1 / y), (1 - x) / (1 - y)], axis=1
        )
        good = np.ones(m, dtype=bool)
        for col in range(5):
            good &= (np.abs(params[:, col]) > 1e-6) \
                & (np.abs(params[:, col] - 1.0) > 1e-6)
        params = params[good][: n - have]
        if params.size == 0:
            continue
        d = bloch_wigner_values(params)
        sums = d[:, 0] - d[:, 1] + d[:, 2] - d[:, 3] + d[:, 4]
        worst = max(worst, float(np.max(np.abs(sums))))
        have += params.shape[0]
    return CheckResult("five_term", worst, tol, n)


def check_det_identities(n: int, tol: float, rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        d = random_decoration(rng)
        worst = max(worst, ptolemy_mod.det_identities_check(d).max_deviation)
    return CheckResult("det_identities", worst, tol, n)


def check_d_negation(n: int, tol: float, rng: np.random.Generator) -> CheckResult:
    """Termwise D(coordinate ratio m) = -D(flag cross-ratio m), m = 1..4."""
    worst = 0.0
    order = ((1, 2), (2, 1), (3, 4), (4, 3))
    for _ in range(n):
        d = random_decoration(rng)
        tet = flags_mod.tetrahedron_from_decoration(d.matrices)
        flag_ratios = np.array(
            [flags_mod.cross_ratio(tet, i, j) for i, j in order],
            dtype=np.complex128,
        )
        coord_ratios = np.array(
            ptolemy_mod.ratios(ptolemy_mod.ptolemy_all(d)), dtype=np.complex128
        )
        resid = np.abs(
            bloch_wigner_values(coord_ratios) + bloch_wigner_values(flag_ratios)
        )
        worst = max(worst, float(np.max(resid)))
    return CheckResult("d_negation", worst, tol, n)


def check_lie_sign(n: int, tol: float, rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    sizes = (2, 3, 4, 5)
    for idx in range(n):
        X = random_traceless(rng, sizes[idx % len(sizes)])
        for k in (2, 3, 4, 5):
            worst = max(worst, sign_identity_check(X, k).deviation)
    return CheckResult("lie_sign_identity", worst, tol, n)


def check_dual_relations(
    n: int, tol: float, rng: np.random.Generator, closed_seeds: int = 4
) -> List[CheckResult]:
    """Per-tetrahedron relations plus closed-complex cancellations.

    Per tetrahedron: vol_bfg = -1/4 vol_gtz, cartan dual negates vol_bfg,
    and cartan dual preserves Re cchat modulo the declared lattice. Closed
    boundary-of-4-simplex complexes: total vol_bfg, vol_gtz, Im cchat and
    the transpose-inverse-dual totals all cancel (tolerance 1000x looser,
    matching the stated thresholds).
    """
    worst_quarter = 0.0
    worst_cartan = 0.0
    worst_re = 0.0
    for _ in range(n):
        d = random_decoration(rng)
        single = DecoratedComplex(
            [Tetrahedron(id=0, orientation=1, payload=d)], []
        )
        rep = compute_invariants(single)
        dual = compute_invariants(dual_decoration(single, "cartan"))
        worst_quarter = max(worst_quarter, abs(rep.vol_bfg + 0.25 * rep.vol_gtz))
        worst_cartan = max(worst_cartan, abs(dual.vol_bfg + rep.vol_bfg))
        worst_re = max(
            worst_re,
            lattice_residual(dual.cchat.real, rep.cchat.real),
        )
    results = [
        CheckResult("quarter_relation_per_tet", worst_quarter, tol, n),
        CheckResult("cartan_negates_vol", worst_cartan, tol, n),
        CheckResult("cartan_preserves_re_cchat", worst_re, tol * 1e3, n),
    ]

    closed_tol = tol * 1e3
    worst_closed = 0.0
    for i in range(closed_seeds):
        c = gen_boundary_4simplex(int(rng.integers(0, 2 ** 31)) + i)
        rep = compute_invariants(c)
        ti = compute_invariants(dual_decoration(c, "transpose_inverse"))
        worst_closed = max(
            worst_closed,
            abs(rep.vol_bfg),
            abs(rep.vol_gtz),
            abs(rep.cchat.imag),
            abs(ti.vol_bfg),
            abs(ti.cchat.imag),
        )
    results.append(CheckResult(
        "closed_complex_cancellation", worst_closed, closed_tol, closed_seeds
    ))
    return results


def check_coboundary_probe(n: int, tol: float, seed: int = 1) -> CheckResult:
    """A stable sign pattern for the dual-difference coboundary exists."""
    rng = np.random.default_rng(seed)
    base = flags_mod.tetrahedron_from_decoration(
        random_decoration(rng).matrices
    )
    report = dual_coboundary_probe(
        base, match_tol=tol, stability_trials=n, seed=seed + 1
    )
    if not report.stable_patterns:
        return CheckResult(
            "coboundary_probe", math.inf, tol, n, note="no stable sign pattern"
        )
    pat = report.stable_patterns[0]
    note = (f"argument {pat.argument}, signs {pat.signs}, "
            f"global {pat.global_sign:+d}")
    return CheckResult("coboundary_probe", report.max_residual, tol, n, note=note)


def run_selftest(tol: float = 1e-9, trials: int = 1000,
                 seed: int = 20250808) -> SelfTestReport:
    """Run the full battery; every check scales with `tol` and `trials`."""
    trials = max(1, trials)
    rng = np.random.default_rng(seed)
    results: List[CheckResult] = []
    results.append(check_dilog_symmetries(trials * 10, tol * 0.1, rng))
    results.append(check_five_term(trials, tol, rng))
    results.append(check_det_identities(trials, tol, rng))
    results.append(check_d_negation(trials, tol, rng))
    results.append(check_lie_sign(max(1, trials // 4), tol, rng))
    results.extend(check_dual_relations(
        max(1, trials // 2), tol, rng,
        closed_seeds=2 if trials < 100 else 4,
    ))
    results.append(check_coboundary_probe(trials, tol * 10, seed=seed + 7))
    return SelfTestReport(results)
