import math
from fractions import Fraction

import numpy as np
import pytest

from flagvol.lie import (
    cartan_diff,
    cs_constant,
    group_involution,
    sign_identity_check,
    trace_power,
)
from flagvol.selftest import random_traceless

from flagvol.triangulation import _random_vertex_matrix as random_sl3


def test_cartan_diff_fixes_anti_hermitian_diagonal():
    X = np.diag([1j, 1j, -2j])
    assert np.allclose(cartan_diff(X), X)


def test_cartan_diff_on_elementary_matrix():
    E12 = np.zeros((3, 3), dtype=complex)
    E12[0, 1] = 1
    expected = np.zeros((3, 3), dtype=complex)
    expected[1, 0] = -1
    assert np.allclose(cartan_diff(E12), expected)


def test_cartan_diff_is_involution(rng):
    for _ in range(20):
        X = random_traceless(rng, 3)
        assert np.allclose(cartan_diff(cartan_diff(X)), X)


def test_cartan_diff_requires_traceless():
    with pytest.raises(ValueError):
        cartan_diff(np.eye(3))


def test_trace_power_diagonal_example():
    assert abs(trace_power(np.diag([1j, 1j, -2j]), 2) - (-6.0)) < 1e-12


def test_trace_power_conjugation_invariance(rng):
    for _ in range(20):
        X = random_traceless(rng, 3)
        g = random_sl3(rng)
        a = trace_power(X, 3)
        b = trace_power(g @ X @ np.linalg.inv(g), 3)
        assert abs(a - b) < 1e-9 * max(1.0, abs(a))


def test_trace_power_matches_eigenvalue_oracle(rng):
    for _ in range(20):
        X = random_traceless(rng, 4)
        lam = np.linalg.eigvals(X)
        for k in (2, 3, 5):
            assert abs(trace_power(X, k) - np.sum(lam ** k)) < 1e-8 * max(
                1.0, abs(trace_power(X, k))
            )


def test_cs_constant_small_values():
    assert cs_constant(1) == Fraction(1)
    assert cs_constant(2) == Fraction(-1, 6)
    assert cs_constant(3) == Fraction(1, 40)


def test_cs_constant_matches_factorial_oracle():
    for k in range(1, 11):
        oracle = Fraction((-1) ** (k - 1)) * Fraction(
            math.factorial(k) * math.factorial(k - 1),
            2 ** (k - 1) * math.factorial(2 * k - 1),
        )
        assert cs_constant(k) == oracle


def test_sign_identity_even_odd(rng):
    X = random_traceless(rng, 3)
    even = sign_identity_check(X, 2)
    assert abs(even.rhs - np.conj(trace_power(X, 2))) < 1e-12
    assert even.ok()
    odd = sign_identity_check(X, 3)
    assert abs(odd.rhs + np.conj(trace_power(X, 3))) < 1e-12
    assert odd.ok()


def test_sign_identity_zero_matrix():
    rep = sign_identity_check(np.zeros((3, 3)), 4)
    assert rep.lhs == 0 and rep.rhs == 0 and rep.deviation == 0


def test_sign_identity_bulk(rng):
    worst = 0.0
    for _ in range(100):
        X = random_traceless(rng, 3)
        for k in (2, 3, 4, 5):
            worst = max(worst, sign_identity_check(X, k).deviation)
    assert worst < 1e-9


def test_group_involution_identity():
    for kind in ("cartan", "transpose_inverse"):
        assert np.allclose(group_involution(np.eye(3), kind), np.eye(3))


def test_group_involution_fixes_unitary(rng):
    q, r = np.linalg.qr(random_sl3(rng))
    q = q / np.linalg.det(q) ** (1 / 3)
    assert np.allclose(group_involution(q, "cartan"), q, atol=1e-10)


def test_group_involution_multiplicative(rng):
    for kind in ("cartan", "transpose_inverse"):
        A, B = random_sl3(rng), random_sl3(rng)
        lhs = group_involution(A @ B, kind)
        rhs = group_involution(A, kind) @ group_involution(B, kind)
        assert np.allclose(lhs, rhs, atol=1e-9)


def test_group_involution_is_involution(rng):
    for kind in ("cartan", "transpose_inverse"):
        A = random_sl3(rng)
        assert np.allclose(group_involution(group_involution(A, kind), kind), A,
                           atol=1e-9)


def test_group_involution_preserves_determinant(rng):
    for kind in ("cartan", "transpose_inverse"):
        A = random_sl3(rng)
        assert abs(np.linalg.det(group_involution(A, kind)) - 1.0) < 1e-9


def test_group_involution_rejects_singular():
    with pytest.raises(ValueError):
        group_involution(np.zeros((3, 3)), "cartan")
