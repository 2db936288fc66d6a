"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run as `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; tolerances are pinned here and nowhere else.
"""

import cmath
import json
import math
import subprocess
import sys

import numpy as np

from flagvol.dilog import bloch_wigner, lattice_residual
from flagvol.flags import cross_ratio, cross_ratio_oracle, tetrahedron_from_decoration
from flagvol.invariants import compute_invariants, dual_decoration
from flagvol.lie import cs_constant
from flagvol.ptolemy import flattenings, ptolemy_all, ratios
from flagvol.selftest import (
    check_d_negation,
    check_det_identities,
    check_dilog_symmetries,
    check_five_term,
    check_lie_sign,
    random_decoration,
    run_selftest,
)
from flagvol.triangulation import (
    DecoratedComplex,
    Tetrahedron,
    gen_boundary_4simplex,
    gen_random_single,
    parse,
    serialize,
)


def report(number: int, name: str, ok: bool, detail: str):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number:2d} {status}: {name} ({detail})")
    assert ok, f"criterion {number} failed: {name}: {detail}"


def test_criterion_01_dilog_suite():
    rng = np.random.default_rng(101)
    sym = check_dilog_symmetries(10_000, 1e-10, rng)
    k = np.arange(10 ** 6, dtype=float)
    catalan = float(np.sum((-1.0) ** k / (2 * k + 1) ** 2))
    cat_err = abs(bloch_wigner(1j) - catalan)
    five = check_five_term(1_000, 1e-9, rng)
    ok = sym.passed and cat_err < 1e-10 and five.passed
    report(1, "dilog suite", ok,
           f"symmetries {sym.residual:.2e}, catalan {cat_err:.2e}, "
           f"five-term {five.residual:.2e}")


def test_criterion_02_det_identities():
    res = check_det_identities(1_000, 1e-9, np.random.default_rng(102))
    report(2, "determinant identities", res.passed,
           f"max deviation {res.residual:.2e} over {res.samples} decorations")


def test_criterion_03_cross_ratio_vs_pencil_oracle():
    rng = np.random.default_rng(103)
    worst = 0.0
    pairs = [(i, j) for i in (1, 2, 3, 4) for j in (1, 2, 3, 4) if i != j]
    for _ in range(1_000):
        t = tetrahedron_from_decoration(random_decoration(rng).matrices)
        for i, j in pairs:
            a = cross_ratio(t, i, j)
            b = cross_ratio_oracle(t, i, j)
            worst = max(worst, abs(a - b) / abs(a))
    report(3, "cross-ratio formula vs pencil oracle", worst < 1e-9,
           f"worst relative deviation {worst:.2e} over 1000 tetrahedra x 12 pairs")


def test_criterion_04_termwise_d_negation():
    res = check_d_negation(1_000, 1e-9, np.random.default_rng(104))
    report(4, "termwise D-negation", res.passed,
           f"max residual {res.residual:.2e} over {res.samples} decorations")


def test_criterion_05_quarter_relation():
    rng = np.random.default_rng(105)
    worst = 0.0
    for _ in range(300):
        c = DecoratedComplex(
            [Tetrahedron(id=0, orientation=1, payload=random_decoration(rng))], []
        )
        rep = compute_invariants(c)
        worst = max(worst, abs(rep.vol_bfg + 0.25 * rep.vol_gtz))
    for seed in range(5):
        rep = compute_invariants(gen_boundary_4simplex(seed))
        worst = max(worst, abs(rep.vol_bfg + 0.25 * rep.vol_gtz))
        worst = max(worst, max(abs(t.vol_bfg + 0.25 * t.vol_gtz)
                               for t in rep.per_tet))
    report(5, "vol_bfg = -1/4 vol_gtz per tetrahedron and total", worst < 1e-9,
           f"max residual {worst:.2e}")


def test_criterion_06_involution_sign_identity():
    res = check_lie_sign(1_000, 1e-9, np.random.default_rng(106))
    a2 = cs_constant(2)
    ok = res.passed and a2.numerator == -1 and a2.denominator == 6
    report(6, "trace-power sign identity and exact A_2", ok,
           f"max residual {res.residual:.2e}, A_2 = {a2}")


def test_criterion_07_cartan_dual_relations():
    rng = np.random.default_rng(107)
    worst_vol = 0.0
    worst_re = 0.0
    for _ in range(300):
        c = DecoratedComplex(
            [Tetrahedron(id=0, orientation=1, payload=random_decoration(rng))], []
        )
        rep = compute_invariants(c)
        dual = compute_invariants(dual_decoration(c, "cartan"))
        worst_vol = max(worst_vol, abs(dual.vol_bfg + rep.vol_bfg))
        worst_re = max(worst_re,
                       lattice_residual(dual.cchat.real, rep.cchat.real))
    ok = worst_vol < 1e-9 and worst_re < 1e-6
    report(7, "cartan dual negates volume, preserves Re cchat", ok,
           f"vol residual {worst_vol:.2e}, Re residual {worst_re:.2e}")


def test_criterion_08_closed_complex_cancellation():
    worst = 0.0
    for seed in range(100):
        c = gen_boundary_4simplex(seed)
        rep = compute_invariants(c)
        ti = compute_invariants(dual_decoration(c, "transpose_inverse"))
        worst = max(worst, abs(rep.vol_bfg), abs(rep.vol_gtz),
                    abs(rep.cchat.imag), abs(ti.vol_bfg), abs(ti.vol_gtz),
                    abs(ti.cchat.imag))
    report(8, "boundary-of-4-simplex cancellation (100 seeds, both duals)",
           worst < 1e-6, f"max |invariant| {worst:.2e}")


def test_criterion_09_flattening_integrity():
    rng = np.random.default_rng(109)
    worst_int = 0.0
    worst_ratio = 0.0
    for _ in range(1_000):
        coords = ptolemy_all(random_decoration(rng))
        flat = flattenings(coords)
        for f, r in zip(flat, ratios(coords)):
            p = (f.w0 - cmath.log(f.z)) / (1j * math.pi)
            q = (f.w1 + cmath.log(1 - f.z)) / (1j * math.pi)
            worst_int = max(worst_int, abs(p - f.p), abs(q - f.q))
            worst_ratio = max(worst_ratio, abs(cmath.exp(f.w0) - r) / abs(r))
    ok = worst_int < 1e-6 and worst_ratio < 1e-12
    report(9, "flattening integrity", ok,
           f"integer residual {worst_int:.2e}, ratio residual {worst_ratio:.2e}")


def test_criterion_10_plumbing(tmp_path):
    # parse/serialize identity and deterministic generators.
    plumbing_ok = True
    details = []
    for seed in (0, 1):
        for gen in (gen_random_single, gen_boundary_4simplex):
            doc = serialize(gen(seed))
            plumbing_ok &= serialize(parse(doc)) == doc
            plumbing_ok &= serialize(gen(seed)) == doc
    details.append(f"round-trip/determinism {'ok' if plumbing_ok else 'BROKEN'}")

    # CLI exit-code contract.
    cli = [sys.executable, "-m", "flagvol.cli"]

    def code(*args):
        return subprocess.run(cli + [str(a) for a in args],
                              capture_output=True).returncode

    good = tmp_path / "ok.json"
    assert code("gen", "--kind", "single", "--seed", 1, "-o", good) == 0
    bad_parse = tmp_path / "bad.json"
    bad_parse.write_text("{")
    dup = json.loads(good.read_text())
    dup["tetrahedra"].append(dup["tetrahedra"][0])
    bad_valid = tmp_path / "dup.json"
    bad_valid.write_text(json.dumps(dup))
    degen = json.loads(good.read_text())
    degen["tetrahedra"][0]["decoration"]["vertices"][1] = \
        degen["tetrahedra"][0]["decoration"]["vertices"][0]
    bad_degen = tmp_path / "degen.json"
    bad_degen.write_text(json.dumps(degen))

    codes = (
        code("compute", good),
        code("compute", bad_parse),
        code("compute", bad_valid),
        code("compute", bad_degen),
        code("dual", good, "--involution", "cartan"),
    )
    exit_ok = codes == (0, 3, 1, 2, 64)
    details.append(f"exit codes {codes}")

    # Full battery with default tolerances and trial counts.
    battery = run_selftest()
    details.append("selftest " + ("pass" if battery.passed else "FAIL"))

    report(10, "plumbing: round-trip, exit codes, selftest defaults",
           plumbing_ok and exit_ok and battery.passed, "; ".join(details))
