"""Shared numerical tolerances and defaults."""

from __future__ import annotations

import os
from contextlib import contextmanager

#: Orthogonality, identity and nonnegativity checks.
EPS = 1e-9
#: Snapping recovered character values to exact closed forms.
SNAP_TOL = 1e-6
#: Largest imaginary part tolerated before a realizing matrix counts as complex.
IMAG_TOL = 1e-7
#: Multiset comparisons of spectra.
SPECTRUM_TOL = 1e-7
DEFAULT_SEED = 0x5EED
ORDER_CAP = 512

TOLERANCE_ENV = "CHARPERRON_TOLERANCE"

_state = {"eps": float(os.environ.get(TOLERANCE_ENV, EPS))}


def get_tolerance() -> float:
    return _state["eps"]


def set_tolerance(eps: float) -> None:
    if not eps > 0:
        raise ValueError(f"tolerance must be positive, got {eps!r}")
    _state["eps"] = float(eps)


@contextmanager
def tolerance(eps: float):
    """Temporarily override the global comparison tolerance."""
    old = _state["eps"]
    set_tolerance(eps)
    try:
        yield
    finally:
        _state["eps"] = old


def resolve(tol: float | None) -> float:
    return _state["eps"] if tol is None else tol
