import subprocess
import sys

import numpy as np
import pytest

from flagvol.backend import backend_name, get_backend


def have_numba() -> bool:
    try:
        get_backend("numba")
        return True
    except ImportError:
        return False


def sample(n=4000, seed=2):
    rng = np.random.default_rng(seed)
    r = np.exp(rng.uniform(np.log(0.05), np.log(20.0), n))
    return r * np.exp(1j * rng.uniform(-np.pi, np.pi, n))


@pytest.mark.skipif(not have_numba(), reason="numba backend unavailable")
def test_backends_agree_on_li2():
    z = sample()
    a = get_backend("numpy").li2_values(z)
    b = get_backend("numba").li2_values(z)
    assert np.max(np.abs(a - b)) < 1e-13 * np.maximum(1.0, np.abs(a)).max()


@pytest.mark.skipif(not have_numba(), reason="numba backend unavailable")
def test_backends_agree_on_bloch_wigner():
    z = sample()
    a = get_backend("numpy").bloch_wigner_values(z)
    b = get_backend("numba").bloch_wigner_values(z)
    assert np.max(np.abs(a - b)) < 1e-13


@pytest.mark.skipif(not have_numba(), reason="numba backend unavailable")
def test_backend_scalars_agree():
    for z in (0.3 + 0.4j, -2.5 + 1j, 7 - 3j, 0.99 + 0.3j):
        assert abs(get_backend("numpy").li2_scalar(z)
                   - get_backend("numba").li2_scalar(z)) < 1e-14


def test_active_backend_is_known():
    assert backend_name() in ("numpy", "numba")


def _backend_in_subprocess(env_value):
    code = "import flagvol; print(flagvol.backend_name())"
    import os

    env = dict(os.environ)
    env["FLAGVOL_BACKEND"] = env_value
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env=env)
    return out


def test_env_flag_selects_numpy():
    out = _backend_in_subprocess("numpy")
    assert out.returncode == 0
    assert out.stdout.strip() == "numpy"


@pytest.mark.skipif(not have_numba(), reason="numba backend unavailable")
def test_env_flag_selects_numba():
    out = _backend_in_subprocess("numba")
    assert out.returncode == 0
    assert out.stdout.strip() == "numba"


def test_env_flag_rejects_unknown():
    out = _backend_in_subprocess("fortran")
    assert out.returncode != 0
    assert "FLAGVOL_BACKEND" in out.stderr


def test_numpy_backend_full_battery_sample():
    """The fallback passes the same spot identities as the active backend."""
    b = get_backend("numpy")
    z = 0.3 + 0.7j
    assert abs(b.bloch_wigner_scalar(z) + b.bloch_wigner_scalar(1 / z)) < 1e-12
    assert abs(b.bloch_wigner_scalar(z) + b.bloch_wigner_scalar(z.conjugate())) < 1e-12
    assert b.bloch_wigner_scalar(0.5) == 0.0
