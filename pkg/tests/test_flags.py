import numpy as np
import pytest

from flagvol.errors import DegenerateError
from flagvol.flags import (
    Flag,
    FlagTetrahedron,
    ProjectiveCovector,
    ProjectivePoint,
    cross_ratio,
    cross_ratio_oracle,
    dual_flag,
    even_completion,
    flag_from_decoration,
    projectively_equal,
    tetrahedron_from_decoration,
    triple_ratio,
    volume_element,
)
from flagvol.prebloch import dilog_eval

from flagvol.triangulation import _random_vertex_matrix as random_sl3


def random_tetra(rng):
    while True:
        try:
            return tetrahedron_from_decoration([random_sl3(rng) for _ in range(4)])
        except DegenerateError:
            continue


# ---------------------------------------------------------------------------
# flags from decorations


def test_identity_gives_standard_flag():
    fl = flag_from_decoration(np.eye(3))
    assert projectively_equal(fl.x.coords, np.array([1, 0, 0]))
    assert projectively_equal(fl.f.coords, np.array([0, 0, 1]))


def test_diagonal_fixes_standard_flag():
    a, b = 2.0 + 1.0j, 0.5 - 0.25j
    g = np.diag([a, b, 1 / (a * b)])
    fl = flag_from_decoration(g)
    assert projectively_equal(fl.x.coords, np.array([1, 0, 0]))
    assert projectively_equal(fl.f.coords, np.array([0, 0, 1]))


def test_flag_covector_is_third_row_of_inverse(rng):
    for _ in range(25):
        g = random_sl3(rng)
        fl = flag_from_decoration(g)
        assert abs(fl.f.coords @ fl.x.coords) < 1e-12
        third_row = np.linalg.inv(g)[2]
        assert projectively_equal(fl.f.coords, third_row)


def test_flag_from_decoration_requires_unit_determinant():
    with pytest.raises(DegenerateError):
        flag_from_decoration(2 * np.eye(3))


def test_flag_incidence_enforced():
    with pytest.raises(DegenerateError):
        Flag(x=ProjectivePoint([1, 0, 0]), f=ProjectiveCovector([1, 0, 0]))


def test_point_scale_window():
    with pytest.raises(DegenerateError):
        ProjectivePoint([1e-9, 0, 0])
    with pytest.raises(DegenerateError):
        ProjectivePoint([0, 0, 0])


# ---------------------------------------------------------------------------
# cross-ratios


def test_even_completion_values():
    assert even_completion(1, 2) == (3, 4)
    assert even_completion(2, 1) == (4, 3)
    assert even_completion(3, 4) == (1, 2)
    assert even_completion(4, 3) == (2, 1)


def test_even_completion_rejects_bad_labels():
    with pytest.raises(ValueError):
        even_completion(2, 2)
    with pytest.raises(ValueError):
        even_completion(0, 1)


def test_cross_ratio_rescaling_invariance(rng):
    t = random_tetra(rng)
    scaled_flags = []
    for fl in t.flags:
        sx = complex(rng.normal(), rng.normal())
        sf = complex(rng.normal(), rng.normal())
        scaled_flags.append(Flag(
            x=ProjectivePoint(fl.x.coords * sx),
            f=ProjectiveCovector(fl.f.coords * sf),
        ))
    t2 = FlagTetrahedron(tuple(scaled_flags))
    for i, j in ((1, 2), (2, 1), (3, 4), (4, 3), (1, 3), (4, 2)):
        a = cross_ratio(t, i, j)
        b = cross_ratio(t2, i, j)
        assert abs(a - b) < 1e-9 * abs(a)


def test_cross_ratio_sl3_invariance(rng):
    t = random_tetra(rng)
    A = random_sl3(rng)
    Ainv = np.linalg.inv(A)
    moved = FlagTetrahedron(tuple(
        Flag(x=ProjectivePoint(A @ fl.x.coords),
             f=ProjectiveCovector(fl.f.coords @ Ainv))
        for fl in t.flags
    ))
    for i, j in ((1, 2), (2, 1), (3, 4), (4, 3)):
        a = cross_ratio(t, i, j)
        assert abs(cross_ratio(moved, i, j) - a) < 1e-9 * abs(a)


def test_cross_ratio_matches_pencil_oracle(rng):
    for _ in range(100):
        t = random_tetra(rng)
        for i, j in ((1, 2), (2, 1), (3, 4), (4, 3), (2, 3), (1, 4)):
            a = cross_ratio(t, i, j)
            b = cross_ratio_oracle(t, i, j)
            assert abs(a - b) < 1e-9 * abs(a)


def test_cross_ratio_oracle_finite_nonzero(rng):
    t = random_tetra(rng)
    v = cross_ratio_oracle(t, 1, 2)
    assert np.isfinite(v) and v != 0


def test_cross_ratio_rejects_equal_labels(rng):
    with pytest.raises(ValueError):
        cross_ratio(random_tetra(rng), 3, 3)


# ---------------------------------------------------------------------------
# the 4-term element


def test_volume_element_has_four_terms(rng):
    e = volume_element(random_tetra(rng))
    assert len(e) == 4


def test_volume_element_conjugation_negates(rng):
    t = random_tetra(rng)
    assert abs(dilog_eval(volume_element(t.conjugate()))
               + dilog_eval(volume_element(t))) < 1e-10


def test_repeated_flag_is_degenerate(rng):
    g = random_sl3(rng)
    h = random_sl3(rng)
    fl = [flag_from_decoration(m) for m in (g, g, h, random_sl3(rng))]
    with pytest.raises(DegenerateError):
        FlagTetrahedron(tuple(fl))


# ---------------------------------------------------------------------------
# triple ratio and duality


def _incident_flag(point, covector):
    return Flag(x=ProjectivePoint(point), f=ProjectiveCovector(covector))


def test_triple_ratio_standard_example():
    f1 = _incident_flag([1, 0, 0], [0, 1, 1])
    f2 = _incident_flag([0, 1, 0], [1, 0, 1])
    f3 = _incident_flag([0, 0, 1], [1, 1, 0])
    assert abs(triple_ratio(f1, f2, f3) - 1.0) < 1e-14


def test_triple_ratio_rescaling_invariance(rng):
    t = random_tetra(rng)
    f1, f2, f3 = t.flags[:3]
    base = triple_ratio(f1, f2, f3)
    s = complex(rng.normal(), rng.normal())
    f1s = Flag(x=ProjectivePoint(f1.x.coords * s),
               f=ProjectiveCovector(f1.f.coords * (2 - 1j)))
    assert abs(triple_ratio(f1s, f2, f3) - base) < 1e-10 * abs(base)


def test_triple_ratio_cyclic_invariance(rng):
    t = random_tetra(rng)
    f1, f2, f3 = t.flags[:3]
    a = triple_ratio(f1, f2, f3)
    b = triple_ratio(f2, f3, f1)
    c = triple_ratio(f3, f1, f2)
    assert abs(a - b) < 1e-10 * abs(a)
    assert abs(a - c) < 1e-10 * abs(a)


def test_dual_of_standard_flag():
    fl = flag_from_decoration(np.eye(3))
    d = dual_flag(fl)
    assert projectively_equal(d.x.coords, np.array([0, 0, 1]))
    assert projectively_equal(d.f.coords, np.array([1, 0, 0]))


def test_dual_is_involution(rng):
    for _ in range(10):
        fl = flag_from_decoration(random_sl3(rng))
        dd = dual_flag(dual_flag(fl))
        assert projectively_equal(dd.x.coords, fl.x.coords)
        assert projectively_equal(dd.f.coords, fl.f.coords)


def test_dual_preserves_incidence(rng):
    for _ in range(10):
        fl = flag_from_decoration(random_sl3(rng))
        d = dual_flag(fl)
        assert abs(d.f.coords @ d.x.coords) < 1e-12
