"""Farey fractions, the unit-circle points of the Karpelevic region, and
extremality checks for character tables of abelian groups."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from ._config import resolve
from .char_table import dft_table, kron_tables, match_tables
from .errors import NotAbelianError
from .groups import FiniteGroup
from .perron import is_ideal, is_perron_similarity


@dataclass(frozen=True, order=True)
class FareyFraction:
    p: int
    q: int

    def __post_init__(self):
        if not (self.q > 0 and 0 <= self.p <= self.q and math.gcd(self.p, self.q) == 1):
            raise ValueError(f"{self.p}/{self.q} is not a reduced fraction in [0, 1]")

    def __float__(self):
        return self.p / self.q

    def __str__(self):
        return f"{self.p}/{self.q}"


def farey(n: int) -> list[FareyFraction]:
    """Reduced fractions in [0, 1] with denominator at most ``n``, ascending.

    Successive terms come from the neighbour recurrence: after ``a/b < c/d``
    the next term is ``(k c - a) / (k d - b)`` with ``k = (n + b) // d``.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    a, b, c, d = 0, 1, 1, n
    out = [FareyFraction(a, b)]
    while c <= n:
        out.append(FareyFraction(c, d))
        k = (n + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
    return out


@dataclass(frozen=True)
class CirclePoint:
    """``exp(2 pi i p / q)`` with ``0 <= p < q`` and ``gcd(p, q) = 1``."""

    p: int
    q: int

    @property
    def value(self) -> complex:
        return complex(np.exp(2j * np.pi * self.p / self.q))


def karpelevic_circle_points(n: int) -> list[CirclePoint]:
    """Points where the Karpelevic region of order ``n`` meets the unit circle.

    These are the roots of unity of order at most ``n``; the set is closed
    under conjugation and each point appears once (``0/1`` and ``1/1`` both
    give 1).
    """
    pts = set()
    for f in farey(n):
        for p in (f.p % f.q, (f.q - f.p) % f.q):
            g = math.gcd(p, f.q)
            pts.add((p // g, f.q // g))
    return [CirclePoint(p, q) for p, q in sorted(pts, key=lambda t: t[0] / t[1])]


def is_totally_extremal(S, tol: float | None = None) -> tuple[bool, tuple[int, int] | None]:
    """Every entry within ``tol`` of a Karpelevic circle point of index ``n = len(S)``."""
    tol = resolve(tol)
    A = np.asarray(getattr(S, "entries", S), dtype=complex)
    n = len(A)
    pts = np.array([c.value for c in karpelevic_circle_points(n)])
    dist = np.abs(A[:, :, None] - pts[None, None, :]).min(axis=2)
    bad = np.argwhere(dist > tol)
    if len(bad):
        return False, (int(bad[0][0]), int(bad[0][1]))
    return True, None


# -- abelian groups ----------------------------------------------------------

def _prime_factors(n: int) -> dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_factorization(G: FiniteGroup) -> list[int]:
    """Prime powers ``p^e`` with ``G`` isomorphic to the sum of the ``Z_{p^e}``.

    For each prime ``p`` the number of cyclic factors of order at least
    ``p^k`` is ``log_p |Omega_k| - log_p |Omega_{k-1}|``, where ``Omega_k``
    is the set of elements killed by ``p^k``.
    """
    if not G.is_abelian:
        raise NotAbelianError(f"{G.label or 'group'} is not abelian")
    orders = G.element_orders
    out = []
    for p, e in _prime_factors(G.order).items():
        logs = [0]
        for k in range(1, e + 1):
            omega = int(np.count_nonzero((p ** k) % orders == 0))
            logs.append(round(math.log(omega, p)))
        at_least = [logs[k] - logs[k - 1] for k in range(1, e + 1)]
        for k in range(1, e + 1):
            exactly = at_least[k - 1] - (at_least[k] if k < e else 0)
            out.extend([p ** k] * exactly)
    return sorted(out)


def _partitions(e: int, largest: int | None = None):
    largest = e if largest is None else largest
    if e == 0:
        yield ()
        return
    for first in range(min(e, largest), 0, -1):
        for rest in _partitions(e - first, first):
            yield (first, *rest)


def abelian_types(n: int) -> list[tuple[int, ...]]:
    """All abelian groups of order ``n`` as sorted tuples of prime powers."""
    types = [()]
    for p, e in _prime_factors(n).items():
        types = [t + tuple(p ** k for k in part) for t in types for part in _partitions(e)]
    return [tuple(sorted(t)) for t in types] if n > 1 else [()]


def abelian_label(factors) -> str:
    return "×".join(f"Z{q}" for q in factors) if factors else "Z1"


def abelian_table(factors):
    """Kronecker product of DFT tables; the character table of the sum of cyclic groups."""
    tables = [dft_table(q) for q in factors] or [dft_table(1)]
    return reduce(kron_tables, tables)


@dataclass
class ProbeReport:
    """Evidence gathered for the closing conjecture about totally extremal
    ideal Perron similarities."""

    normalized_perron: bool
    ideal: bool
    totally_extremal: bool
    matches: str | None = None
    match_factors: tuple | None = None
    normalization_flag: str | None = None

    @property
    def all_hold(self) -> bool:
        return self.normalized_perron and self.ideal and self.totally_extremal

    def __str__(self):
        lines = [
            f"normalized_perron: {self.normalized_perron}",
            f"ideal: {self.ideal}",
            f"totally_extremal: {self.totally_extremal}",
        ]
        if self.normalization_flag:
            lines.append(f"flag: {self.normalization_flag}")
        if self.all_hold:
            lines.append(f"matches: {self.matches if self.matches else 'none'}")
        return "\n".join(lines)


def conjecture_probe(S, tol: float | None = None) -> ProbeReport:
    tol = resolve(tol)
    A = np.asarray(getattr(S, "entries", S), dtype=complex)
    n = len(A)
    perron, k = is_perron_similarity(A, tol)
    first_col = bool(np.abs(A[:, 0] - 1).max() <= tol)
    bounded = bool(np.abs(A).max() <= 1 + tol)
    flag = None
    if first_col != bounded:
        flag = "first column is all ones" if first_col else "entries bounded by 1"
        flag += " but the other normalization condition fails"
    rep = ProbeReport(
        normalized_perron=bool(perron and k == 0 and first_col and bounded),
        ideal=is_ideal(A, tol)[0],
        totally_extremal=is_totally_extremal(A, tol)[0],
        normalization_flag=flag,
    )
    if rep.all_hold:
        for factors in abelian_types(n):
            if match_tables(A, abelian_table(factors)) is not None:
                rep.matches = abelian_label(factors)
                rep.match_factors = factors
                break
    return rep
