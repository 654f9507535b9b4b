"""Character tables of finite groups.

Tables come from closed forms (DFT and Walsh matrices), from Kronecker
products, or from the class-matrix eigenvector method applied to an arbitrary
:class:`~charperron.groups.FiniteGroup`.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from functools import cached_property, reduce

import numpy as np

from ._config import DEFAULT_SEED, SNAP_TOL, resolve
from .errors import (
    InvalidSizeError,
    NumericalDegeneracyError,
    TableCorruptError,
)
from .groups import FiniteGroup

_MAX_REDRAWS = 8
_EIG_SEPARATION = 1e-6


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """``entries[i, j]`` is the value of the i-th irreducible character on
    the j-th conjugacy class.

    Column 0 is the identity class and row 0 the trivial character.  The
    constructor verifies column orthogonality, row orthonormality under the
    class-weighted inner product, and ``|cl(g)| * |C(g)| = |G|``.
    """

    entries: np.ndarray
    class_sizes: np.ndarray
    centralizer_orders: np.ndarray
    group_label: str = ""
    check: InitVar[bool] = True

    def __post_init__(self, check):
        Q = np.array(self.entries, dtype=complex)
        sizes = np.array(self.class_sizes, dtype=np.int64)
        cents = np.array(self.centralizer_orders, dtype=np.int64)
        for a in (Q, sizes, cents):
            a.setflags(write=False)
        object.__setattr__(self, "entries", Q)
        object.__setattr__(self, "class_sizes", sizes)
        object.__setattr__(self, "centralizer_orders", cents)
        if check:
            self.validate()

    @classmethod
    def from_matrix(cls, entries, class_sizes, label: str = "", check: bool = True) -> CharacterTable:
        """Build a table when only the class sizes are known."""
        sizes = np.asarray(class_sizes, dtype=np.int64)
        order = int(sizes.sum())
        return cls(entries, sizes, order // sizes, label, check)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def order(self) -> int:
        return int(self.class_sizes.sum())

    @property
    def degrees(self) -> np.ndarray:
        return np.rint(self.entries[:, 0].real).astype(np.int64)

    @cached_property
    def max_imag(self) -> float:
        return float(np.abs(self.entries.imag).max())

    @property
    def is_real(self) -> bool:
        return self.max_imag <= resolve(None)

    @property
    def real_entries(self) -> np.ndarray:
        return self.entries.real.copy()

    def validate(self, tol: float | None = None) -> None:
        tol = resolve(tol)
        Q, n = self.entries, self.n
        if Q.shape != (n, n) or self.class_sizes.shape != (n,) or self.centralizer_orders.shape != (n,):
            raise TableCorruptError(f"inconsistent shapes {Q.shape}, {self.class_sizes.shape}")
        if not np.all(np.isfinite(Q)):
            raise TableCorruptError("non-finite entry")
        if np.any(self.class_sizes < 1) or np.any(self.centralizer_orders < 1):
            raise TableCorruptError("class sizes and centralizer orders must be positive")
        order = self.order
        if self.class_sizes[0] != 1:
            raise TableCorruptError("column 0 must be the identity class (size 1)")
        if np.any(self.class_sizes * self.centralizer_orders != order):
            raise TableCorruptError("class size * centralizer order != |G|")
        if np.abs(Q[0] - 1).max() > tol:
            raise TableCorruptError("row 0 is not the trivial character")
        d = Q[:, 0]
        if np.abs(d.imag).max() > tol or np.abs(d.real - np.rint(d.real)).max() > tol or d.real.min() < 1 - tol:
            raise TableCorruptError("column 0 is not a vector of positive integer degrees")
        if abs(float(np.sum(np.rint(d.real) ** 2)) - order) > 0.5:
            raise TableCorruptError("sum of squared degrees differs from |G|")
        gram = Q.conj().T @ Q
        err = np.abs(gram - np.diag(self.centralizer_orders)).max()
        if err > tol:
            raise TableCorruptError(f"columns not orthogonal: max deviation {err:.3g} > {tol:g}")
        inner = (Q.conj() * self.class_sizes) @ Q.T / order
        err = np.abs(inner - np.eye(n)).max()
        if err > tol:
            raise TableCorruptError(f"rows not orthonormal: max deviation {err:.3g} > {tol:g}")

    def permuted(self, rows, cols) -> CharacterTable:
        """Simultaneous reordering; ``rows[0]`` and ``cols[0]`` must stay 0."""
        rows, cols = np.asarray(rows), np.asarray(cols)
        return CharacterTable(self.entries[np.ix_(rows, cols)], self.class_sizes[cols],
                              self.centralizer_orders[cols], self.group_label)

    def __str__(self):
        return format_table(self)


# -- closed-form families ----------------------------------------------------

def dft_table(n: int) -> CharacterTable:
    """Character table of Z_n: the matrix ``[w^(i*j)]`` with ``w = exp(2 pi i / n)``."""
    if n < 1:
        raise InvalidSizeError(f"n must be positive, got {n}")
    k = np.outer(np.arange(n), np.arange(n)) % n
    F = snap_values(np.exp(2j * np.pi * k / n))
    return CharacterTable(F, np.ones(n, dtype=int), np.full(n, n), f"Z{n}")


_H2 = np.array([[1, 1], [1, -1]])


def walsh_table(m: int) -> CharacterTable:
    """Character table of (Z_2)^k, the k-fold Kronecker power of ``[[1,1],[1,-1]]``."""
    if m < 1 or m & (m - 1):
        raise InvalidSizeError(f"Walsh size must be a power of two, got {m}")
    k = m.bit_length() - 1
    H = reduce(np.kron, [_H2] * k, np.ones((1, 1), dtype=int))
    label = "×".join(["Z2"] * k) if k else "Z1"
    return CharacterTable(H, np.ones(m, dtype=int), np.full(m, m), label)


def kron_tables(Q1: CharacterTable, Q2: CharacterTable) -> CharacterTable:
    """Character table of the direct product of the two groups."""
    return CharacterTable(
        np.kron(Q1.entries, Q2.entries),
        np.kron(Q1.class_sizes, Q2.class_sizes),
        np.kron(Q1.centralizer_orders, Q2.centralizer_orders),
        f"{Q1.group_label}×{Q2.group_label}",
    )


def dephased_f4_theta(theta: float) -> np.ndarray:
    """The one-parameter family of 4x4 dephased complex Hadamard matrices.

    At ``theta = 0`` this is the DFT matrix of order 4.  For most other angles
    it is not a character table.
    """
    if not 0 <= theta < math.pi:
        raise ValueError(f"theta must lie in [0, pi), got {theta}")
    u = 1j * np.exp(1j * theta)
    return np.array([
        [1, 1, 1, 1],
        [1, u, -1, -u],
        [1, -1, 1, -1],
        [1, -u, -1, u],
    ], dtype=complex)


# -- class-matrix (Burnside) algorithm ---------------------------------------

def structure_constants(G: FiniteGroup) -> np.ndarray:
    """``c[i, j, k] = #{(x, y) in cl_i x cl_j : x*y = z}`` for a fixed ``z`` in ``cl_k``."""
    classes = G.classes
    n = len(classes)
    cls = G.class_of
    T, inv = G.cayley, G.inverses
    c = np.zeros((n, n, n), dtype=np.int64)
    for k, K in enumerate(classes):
        z = K.representative
        # x ranges over G and y = x^{-1} z is forced
        y = T[inv, z]
        np.add.at(c[:, :, k], (cls, cls[y]), 1)
    return c


def burnside_table(G: FiniteGroup, seed: int = DEFAULT_SEED) -> CharacterTable:
    """Character table of ``G`` by simultaneous diagonalization of class matrices.

    The central characters ``w_k = |cl_k| chi(g_k) / chi(1)`` are the common
    eigenvectors of the matrices ``A_i[j, k] = c[i, j, k]``.  A seeded random
    real combination of the ``A_i`` is diagonalized; the draw is repeated (up
    to 8 times) while two eigenvalues lie closer than 1e-6.  Degrees follow
    from ``d^2 * sum_k |w_k|^2 / |cl_k| = |G|``.

    Columns follow :func:`~charperron.groups.conjugacy_classes`; rows are
    sorted by degree and then by their entries (trivial character first).
    """
    c = structure_constants(G)
    sizes = np.array([K.size for K in G.classes])
    cents = np.array([K.centralizer_order for K in G.classes])
    n = len(sizes)
    rng = np.random.default_rng(seed)
    for _ in range(_MAX_REDRAWS):
        r = rng.random(n)
        A = np.einsum("i,ijk->jk", r, c).astype(float)
        vals, vecs = np.linalg.eig(A)
        gaps = np.abs(vals[:, None] - vals[None, :])
        np.fill_diagonal(gaps, np.inf)
        if n == 1 or gaps.min() >= _EIG_SEPARATION * max(1.0, np.abs(vals).max()):
            break
    else:
        raise NumericalDegeneracyError(
            f"eigenvalues of the class-matrix combination stay within {_EIG_SEPARATION:g} "
            f"after {_MAX_REDRAWS} draws"
        )
    if np.any(np.abs(vecs[0]) < 1e-12):
        raise NumericalDegeneracyError("eigenvector with vanishing identity coordinate")
    omega = (vecs / vecs[0]).T
    deg = np.sqrt(G.order / np.sum(np.abs(omega) ** 2 / sizes, axis=1))
    deg = np.rint(deg)
    if np.any(deg < 1):
        raise NumericalDegeneracyError("recovered a non-positive degree")
    chi = snap_values(deg[:, None] * omega / sizes)
    order = sorted(range(n), key=lambda i: _row_key(chi[i]))
    return CharacterTable(chi[order], sizes, cents, G.label)


def _row_key(row):
    d = round(row[0].real)
    # descending entries put the trivial character first among the linear ones
    return (d, tuple((-round(z.real, 6) + 0.0, -round(z.imag, 6) + 0.0) for z in row))


def _trig_candidates():
    vals = set()
    for q in range(1, 25):
        for p in range(0, 2 * q + 1):
            for c in (1, 2):
                vals.add(c * math.cos(math.pi * p / q))
                vals.add(c * math.sin(math.pi * p / q))
    return np.array(sorted(vals))


_TRIG = _trig_candidates()


def _snap_real(v: np.ndarray, tol: float) -> np.ndarray:
    out = v.copy()
    done = np.zeros(v.shape, dtype=bool)
    for q in range(1, 65):
        p = np.rint(v * q)
        hit = ~done & (np.abs(v - p / q) <= tol)
        out[hit] = p[hit] / q
        done |= hit
    idx = np.clip(np.searchsorted(_TRIG, v), 1, len(_TRIG) - 1)
    lo, hi = _TRIG[idx - 1], _TRIG[idx]
    near = np.where(np.abs(v - lo) <= np.abs(v - hi), lo, hi)
    hit = ~done & (np.abs(v - near) <= tol)
    out[hit] = near[hit]
    return out + 0.0


def snap_values(z, tol: float = SNAP_TOL) -> np.ndarray:
    """Snap real and imaginary parts to nearby exact closed forms.

    Candidates are rationals with denominator at most 64, then ``c*cos`` and
    ``c*sin`` of rational multiples of pi (denominator at most 24, ``c`` in
    {1, 2}).  Values with no candidate within ``tol`` are left as they are.
    """
    z = np.asarray(z, dtype=complex)
    return _snap_real(z.real, tol) + 1j * _snap_real(z.imag, tol)


# -- character arithmetic ----------------------------------------------------

def inverse_table(Q: CharacterTable) -> np.ndarray:
    """``Q^{-1}[i, j] = conj(q[j, i]) / |C(g_i)|``."""
    return Q.entries.conj().T / Q.centralizer_orders[:, None]


def char_inner_product(Q: CharacterTable, a, b) -> complex:
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    if a.shape != (Q.n,) or b.shape != (Q.n,):
        raise ValueError(f"class functions must have length {Q.n}")
    return complex(np.sum(Q.class_sizes * a.conj() * b) / Q.order)


def tensor_multiplicities(Q: CharacterTable, i: int, j: int, conjugate_second: bool = False) -> np.ndarray:
    """Multiplicities of the irreducibles in the product of characters ``i`` and ``j``.

    With ``conjugate_second`` the second factor is the dual (conjugate)
    character.  The result holds real parts; they are nonnegative integers up
    to rounding.  Deviations above 1e-4 mean the table is not a character
    table and raise :class:`TableCorruptError`.
    """
    second = Q.entries[j].conj() if conjugate_second else Q.entries[j]
    prod = Q.entries[i] * second
    alpha = (Q.entries.conj() * Q.class_sizes) @ prod / Q.order
    if np.abs(alpha.imag).max() > 1e-4:
        raise TableCorruptError(f"non-real multiplicity in product of rows {i}, {j}")
    alpha = alpha.real
    if np.abs(alpha - np.rint(alpha)).max() > 1e-4 or alpha.min() < -1e-4:
        raise TableCorruptError(f"non-integral multiplicity in product of rows {i}, {j}: {alpha}")
    return alpha


# -- permutation matching ----------------------------------------------------

def _matrix(S) -> np.ndarray:
    return S.entries if isinstance(S, CharacterTable) else np.asarray(S, dtype=complex)


def match_tables(A, B, tol: float = 1e-8):
    """Find permutations with ``A[rows][:, cols] == B`` entrywise within ``tol``.

    Returns ``(rows, cols)`` or ``None``.  Candidate pairs are pruned by sorted
    row and column value multisets, then rows are assigned by backtracking
    while a bipartite matching of the columns stays feasible.
    """
    A, B = _matrix(A), _matrix(B)
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        return None
    n = len(A)

    def sig(v):
        return np.array(sorted(np.round(v, 6) + 0.0, key=lambda z: (z.real, z.imag)))

    rsig_a = [sig(r) for r in A]
    rsig_b = [sig(r) for r in B]
    csig_a = [sig(c) for c in A.T]
    csig_b = [sig(c) for c in B.T]
    row_ok = np.array([[np.abs(rsig_a[i] - rsig_b[k]).max() <= 1e-5 for k in range(n)] for i in range(n)])
    col_ok = np.array([[np.abs(csig_a[j] - csig_b[l]).max() <= 1e-5 for l in range(n)] for j in range(n)])
    if not row_ok.any(axis=1).all() or not col_ok.any(axis=1).all():
        return None
    order = sorted(range(n), key=lambda i: row_ok[i].sum())

    def col_matching(ok):
        match = -np.ones(n, dtype=int)

        def augment(j, seen):
            for l in np.flatnonzero(ok[j]):
                if not seen[l]:
                    seen[l] = True
                    if match[l] < 0 or augment(match[l], seen):
                        match[l] = j
                        return True
            return False

        for j in range(n):
            if not augment(j, np.zeros(n, dtype=bool)):
                return None
        return match

    rows = -np.ones(n, dtype=int)
    used = np.zeros(n, dtype=bool)

    def search(depth, ok):
        if col_matching(ok) is None:
            return None
        if depth == n:
            return col_matching(ok)
        i = order[depth]
        for k in np.flatnonzero(row_ok[i] & ~used):
            new_ok = ok & (np.abs(A[i][:, None] - B[k][None, :]) <= tol)
            if not new_ok.any(axis=1).all():
                continue
            rows[k] = i
            used[k] = True
            cols = search(depth + 1, new_ok)
            if cols is not None:
                return cols
            used[k] = False
            rows[k] = -1
        return None

    cols = search(0, col_ok.copy())
    if cols is None:
        return None
    return rows.copy(), cols


# -- text output -------------------------------------------------------------

def format_complex(z: complex) -> str:
    re_, im_ = z.real + 0.0, z.imag + 0.0
    re_s = f"{re_:.12g}"
    if abs(im_) <= 1e-13:
        return "0" if re_s == "-0" else re_s
    im_s = f"{abs(im_):.12g}"
    if abs(re_) <= 1e-13:
        return f"{'-' if im_ < 0 else ''}{im_s}i"
    return f"{re_s}{'-' if im_ < 0 else '+'}{im_s}i"


def format_table(Q: CharacterTable) -> str:
    lines = [f"{Q.n} {Q.order} {Q.group_label}".rstrip()]
    for row in Q.entries:
        lines.append(" ".join(format_complex(z) for z in row))
    lines.append("classes: " + " ".join(str(s) for s in Q.class_sizes))
    lines.append("centralizers: " + " ".join(str(c) for c in Q.centralizer_orders))
    return "\n".join(lines)
