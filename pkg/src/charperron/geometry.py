"""Simplex volumes, the projected spectratope of a real character table, and
the trace-nonnegative polytope it is compared against."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from ._config import SNAP_TOL
from .char_table import CharacterTable
from .errors import RealTableRequiredError, UnsupportedDimensionError
from .perron import rescale_stochastic

_DEGENERATE = 1e-12


@dataclass(frozen=True, eq=False)
class Simplex:
    vertices: np.ndarray

    def __post_init__(self):
        V = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if V.shape[0] != V.shape[1] + 1 and not (V.shape[0] == 1 and V.size <= 1):
            raise ValueError(f"an m-simplex needs m+1 vertices in m-space, got shape {V.shape}")
        object.__setattr__(self, "vertices", V.reshape(V.shape[0], -1) if V.size else np.zeros((1, 0)))

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def _bordered_det(self) -> float:
        V = self.vertices
        return float(np.linalg.det(np.hstack([np.ones((len(V), 1)), V])))

    @property
    def volume(self) -> float:
        return simplex_volume(self)

    @property
    def is_degenerate(self) -> bool:
        V = self.vertices
        scale = max(1.0, float(np.abs(V).max(initial=0.0))) ** self.dim
        return abs(self._bordered_det()) <= _DEGENERATE * scale


def simplex_volume(s) -> float:
    """``|det [[1, v_0], ..., [1, v_m]]| / m!``; 0 for a degenerate simplex."""
    if not isinstance(s, Simplex):
        s = Simplex(s)
    if s.is_degenerate:
        return 0.0
    return abs(s._bordered_det()) / math.factorial(s.dim)


def project_drop(x, k: int = 0) -> np.ndarray:
    """Delete coordinate ``k`` (0-based) from ``x``, or from each row of a matrix."""
    x = np.asarray(x)
    n = x.shape[-1]
    if not 0 <= k < n:
        raise IndexError(f"coordinate {k} out of range for length {n}")
    return np.delete(x, k, axis=-1)


@dataclass(frozen=True)
class VolumeReport:
    formula_value: float
    determinant_value: float
    ratio_to_trace_polytope: float

    def __str__(self):
        return (f"volume: {self.formula_value:.12g}\n"
                f"determinant: {self.determinant_value:.12g}\n"
                f"ratio: {self.ratio_to_trace_polytope:.12g}")


def _require_real(Q: CharacterTable):
    if not Q.is_real:
        msg = f"volume needs a real character table; max |imag| = {Q.max_imag:.3g}"
        if Q.max_imag < SNAP_TOL:
            msg += " (borderline: imaginary parts look like round-off, check the table)"
        raise RealTableRequiredError(msg)


def projected_vertices(Q: CharacterTable) -> np.ndarray:
    """Rows of ``diag(degrees)^{-1} Q`` with the first coordinate dropped."""
    _require_real(Q)
    return project_drop(rescale_stochastic(Q.real_entries, 0), 0)


def volume_formula(Q: CharacterTable) -> float:
    """``sqrt(prod |C(g_k)|) / ((n-1)! prod dim(rho_k))``."""
    num = math.sqrt(math.prod(int(c) for c in Q.centralizer_orders))
    return num / (math.factorial(Q.n - 1) * math.prod(int(d) for d in Q.degrees))


def spectratope_volume(Q: CharacterTable) -> VolumeReport:
    """Volume of the projected stochastic spectratope of a real character table.

    Computed twice: by the closed form in the centralizer orders and degrees,
    and as the determinant volume of the simplex spanned by the projected rows.
    """
    _require_real(Q)
    formula = volume_formula(Q)
    det = simplex_volume(projected_vertices(Q))
    return VolumeReport(formula, det, formula / trace_polytope_volume(Q.n - 1))


def trace_polytope_volume(m: int, exact: bool = False):
    """Volume of ``{y in [-1, 1]^m : 1 + sum(y) >= 0}``.

    ``exact=True`` returns a :class:`~fractions.Fraction`.
    """
    if m < 0:
        raise ValueError(f"dimension must be nonnegative, got {m}")
    half = Fraction(m - 1, 2)
    tail = sum(((-1) ** k * math.comb(m, k) * (half - k) ** m
                for k in range((m - 1) // 2 + 1)), Fraction(0)) if m else Fraction(0)
    vol = 2 ** m * (1 - tail / math.factorial(m))
    return vol if exact else float(vol)


def occupancy_ratio(Q: CharacterTable) -> float:
    return spectratope_volume(Q).ratio_to_trace_polytope


def trace_polytope_vertices(m: int) -> np.ndarray:
    """Vertices of ``{y in [-1, 1]^m : 1 + sum(y) >= 0}``.

    Cube vertices on the feasible side plus the points where the hyperplane
    ``sum(y) = -1`` crosses cube edges.
    """
    pts = set()
    for corner in itertools.product((-1.0, 1.0), repeat=m):
        if sum(corner) >= -1:
            pts.add(corner)
        for i in range(m):
            rest = sum(corner) - corner[i]
            t = -1 - rest
            if -1 < t < 1:
                p = list(corner)
                p[i] = t
                pts.add(tuple(p))
    return np.array(sorted(pts))


def _ccw(points: np.ndarray) -> np.ndarray:
    c = points.mean(axis=0)
    ang = np.arctan2(points[:, 1] - c[1], points[:, 0] - c[0])
    return points[np.argsort(ang)]


def emit_plot_data(Q: CharacterTable, path) -> Path:
    """Write projected spectratope and feasible-region vertices for plotting.

    Supports tables with 3 classes (planar data) or 4 classes (spatial data).
    """
    if Q.n not in (3, 4):
        raise UnsupportedDimensionError(f"plot data needs a 3x3 or 4x4 table, got {Q.n}x{Q.n}")
    spect = projected_vertices(Q)
    feas = trace_polytope_vertices(Q.n - 1)
    if Q.n == 3:
        spect, feas = _ccw(spect), _ccw(feas)
    path = Path(path)
    with open(path, "w") as fh:
        fh.write(f"dim={Q.n - 1}\n")
        fh.write("spectratope:\n")
        for p in spect:
            fh.write(" ".join(f"{v + 0.0:.12g}" for v in p) + "\n")
        fh.write("feasible:\n")
        for p in feas:
            fh.write(" ".join(f"{v + 0.0:.12g}" for v in p) + "\n")
    return path


def read_plot_data(path) -> dict:
    """Parse a file written by :func:`emit_plot_data`."""
    out = {"dim": None, "spectratope": [], "feasible": []}
    section = None
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("dim="):
            out["dim"] = int(line[4:])
        elif line.endswith(":"):
            section = line[:-1]
        else:
            out[section].append([float(t) for t in line.split()])
    out["spectratope"] = np.array(out["spectratope"])
    out["feasible"] = np.array(out["feasible"])
    return out
