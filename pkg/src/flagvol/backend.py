"""Kernel backend selection.

The hot numeric kernels (dilogarithm and Bloch-Wigner evaluation) exist in
two interchangeable implementations: a numba-jitted one and a pure-numpy
one. The environment variable ``FLAGVOL_BACKEND`` picks the active one:

* ``auto`` (default) -- numba when importable, numpy otherwise;
* ``numba``          -- require the jitted kernels, fail loudly if missing;
* ``numpy``          -- force the pure-numpy path.

``benchmarks/bench_dilog.py`` compares the two.
"""

import os
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _dilog_numpy

ENV_VAR = "FLAGVOL_BACKEND"


@dataclass(frozen=True)
class Backend:
    name: str
    li2_scalar: Callable
    li2_values: Callable
    bloch_wigner_scalar: Callable
    bloch_wigner_values: Callable


_NUMPY = Backend(
    name="numpy",
    li2_scalar=_dilog_numpy.li2_scalar,
    li2_values=_dilog_numpy.li2_values,
    bloch_wigner_scalar=_dilog_numpy.bloch_wigner_scalar,
    bloch_wigner_values=_dilog_numpy.bloch_wigner_values,
)


def _load_numba_backend() -> Backend:
    from . import _dilog_numba

    return Backend(
        name="numba",
        li2_scalar=_dilog_numba.li2_scalar,
        li2_values=_dilog_numba.li2_values,
        bloch_wigner_scalar=_dilog_numba.bloch_wigner_scalar,
        bloch_wigner_values=_dilog_numba.bloch_wigner_values,
    )


def get_backend(name: str) -> Backend:
    """Load a backend by name ('numpy' or 'numba')."""
    if name == "numpy":
        return _NUMPY
    if name == "numba":
        return _load_numba_backend()
    raise ValueError(f"unknown backend {name!r} (expected 'numpy' or 'numba')")


def _select() -> Backend:
    requested = os.environ.get(ENV_VAR, "auto").strip().lower()
    if requested in ("", "auto"):
        try:
            return _load_numba_backend()
        except ImportError:
            return _NUMPY
    if requested in ("numpy", "numba"):
        return get_backend(requested)
    raise ValueError(
        f"{ENV_VAR}={requested!r} not understood (use 'auto', 'numba' or 'numpy')"
    )


_ACTIVE = _select()


def active_backend() -> Backend:
    return _ACTIVE


def backend_name() -> str:
    return _ACTIVE.name


def li2_scalar(z: complex) -> complex:
    return _ACTIVE.li2_scalar(z)


def li2_values(z: np.ndarray) -> np.ndarray:
    return _ACTIVE.li2_values(z)


def bloch_wigner_scalar(z: complex) -> float:
    return _ACTIVE.bloch_wigner_scalar(z)


def bloch_wigner_values(z: np.ndarray) -> np.ndarray:
    return _ACTIVE.bloch_wigner_values(z)
