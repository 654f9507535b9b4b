"""Spectracones, spectratopes and Perron similarities.

For an invertible ``S`` and a vector ``x`` the realizing matrix is
``M_x = S diag(x) S^{-1}``.  The spectracone ``C(S)`` is the set of ``x`` with
``M_x`` entrywise nonnegative, the spectratope ``P(S)`` the subset whose
``M_x`` is row stochastic, and ``C_r(S)`` the conical hull of the rows of
``S``.  Every function accepts either a plain square matrix or a
:class:`~charperron.char_table.CharacterTable`; for the latter the inverse is
taken from the exact orthogonality formula instead of a linear solve.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.sparse.csgraph import connected_components

from ._config import IMAG_TOL, SPECTRUM_TOL, resolve
from .char_table import CharacterTable, format_complex, inverse_table, tensor_multiplicities
from .errors import (
    IllConditionedError,
    InputError,
    InternalConsistencyError,
    NonRealRealizationError,
    NotTotallyNonzeroError,
    TableCorruptError,
)

_MAX_COND = 1e12


def _split(S):
    """Return ``(matrix, inverse)`` for a matrix or character table."""
    if isinstance(S, CharacterTable):
        return S.entries, inverse_table(S)
    A = np.asarray(S, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InputError(f"expected a square matrix, got shape {A.shape}")
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > _MAX_COND:
        raise IllConditionedError(f"condition number {cond:.3g} exceeds {_MAX_COND:g}")
    return A, np.linalg.inv(A)


def _vector(x, n: int) -> np.ndarray:
    v = np.asarray(x, dtype=complex).ravel()
    if v.shape != (n,):
        raise InputError(f"spectrum vector must have length {n}, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise InputError("spectrum vector has non-finite entries")
    return v


def _realify(M: np.ndarray, tol: float = IMAG_TOL) -> np.ndarray:
    if np.abs(M.imag).max(initial=0.0) <= tol:
        return M.real.copy()
    return M


@dataclass(frozen=True, eq=False)
class RealizingMatrix:
    m: np.ndarray
    S: Any = field(repr=False)
    x: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of a membership test.

    A positive verdict carries ``coeffs``; a negative one names the violated
    constraint (an index or an ``(i, j)`` pair, 0-based) and its value.
    """

    member: bool
    coeffs: np.ndarray | None = None
    constraint: Any = None
    value: complex | float | None = None

    def __bool__(self):
        return self.member

    def __str__(self):
        if self.member:
            if self.coeffs is None:
                return "MEMBER"
            vals = ", ".join(f"{float(c.real) if np.iscomplexobj(c) else float(c):.12g}" for c in self.coeffs)
            return f"MEMBER coeffs=[{vals}]"
        c = self.constraint
        if isinstance(c, tuple):
            ident = "(" + ",".join(str(i + 1) for i in c) + ")"
        elif isinstance(c, (int, np.integer)):
            ident = str(c + 1)
        else:
            ident = str(c)
        v = self.value
        if isinstance(v, complex) and abs(v.imag) > IMAG_TOL:
            vs = f"{v.real:.12g}{v.imag:+.12g}i"
        else:
            vs = f"{np.real(v):.12g}"
        return f"NOT_MEMBER facet={ident} value={vs}"


def realize(S, x, require_real: bool = True) -> RealizingMatrix:
    """``M_x = S diag(x) S^{-1}``.

    With ``require_real`` the result must have imaginary parts at most 1e-7;
    otherwise :class:`NonRealRealizationError` reports the worst entry.
    """
    A, Ainv = _split(S)
    v = _vector(x, len(A))
    M = (A * v) @ Ainv
    if require_real:
        im = np.abs(M.imag)
        if im.max() > IMAG_TOL:
            ij = np.unravel_index(int(np.argmax(im)), M.shape)
            raise NonRealRealizationError(
                f"entry {ij} of M_x has imaginary part {M[ij].imag:.3g}", entry=ij, value=complex(M[ij]))
        M = M.real.copy()
    return RealizingMatrix(M, S, v)


def row_cone_membership(S, x, tol: float | None = None) -> MembershipVerdict:
    """Is ``x`` a conical combination of the rows of ``S``?

    Decided by ``y = x^T S^{-1} >= 0`` (real, at least ``-tol``); ``y`` is the
    certificate.
    """
    tol = resolve(tol)
    A, Ainv = _split(S)
    y = _vector(x, len(A)) @ Ainv
    for k, yk in enumerate(y):
        if abs(yk.imag) > tol or yk.real < -tol:
            return MembershipVerdict(False, constraint=int(k), value=complex(yk))
    return MembershipVerdict(True, coeffs=np.clip(y.real, 0, None))


def spectracone_membership(S, x, tol: float | None = None) -> MembershipVerdict:
    """Entrywise test of ``M_x >= 0``; the witness is the first bad ``(i, j)``."""
    tol = resolve(tol)
    A, Ainv = _split(S)
    v = _vector(x, len(A))
    M = (A * v) @ Ainv
    bad = (np.abs(M.imag) > IMAG_TOL) | (M.real < -tol)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        return MembershipVerdict(False, constraint=(int(i), int(j)), value=complex(M[i, j]))
    y = v @ Ainv
    return MembershipVerdict(True, coeffs=y.real if np.abs(y.imag).max() <= IMAG_TOL else y)


def spectratope_membership(S, x, tol: float | None = None) -> MembershipVerdict:
    tol = resolve(tol)
    verdict = spectracone_membership(S, x, tol)
    if not verdict:
        return verdict
    M = realize(S, x).m
    sums = M.sum(axis=1)
    off = np.abs(sums - 1)
    if off.max() > tol:
        i = int(np.argmax(off))
        return MembershipVerdict(False, constraint=f"rowsum{i + 1}", value=float(sums[i]))
    return verdict


# -- the reduced inequality system of a character table ----------------------

@dataclass(frozen=True, eq=False)
class ConeDescription:
    """Generators and facet inequalities of the spectracone of a character table.

    Facet ``i`` reads ``sum_k |cl(g_k)| chi_i(g_k) x_k >= 0``.
    """

    generators: np.ndarray
    facet_coeffs: np.ndarray
    order: int

    def evaluate(self, x) -> np.ndarray:
        return self.facet_coeffs @ _vector(x, len(self.facet_coeffs))

    def contains(self, x, tol: float | None = None) -> MembershipVerdict:
        """Membership through the reduced system.

        Facet values are divided by ``|G|`` before the ``-tol`` comparison so
        they sit on the same scale as the first column of ``M_x``.
        """
        tol = resolve(tol)
        vals = self.evaluate(x) / self.order
        for i, f in enumerate(vals):
            if abs(f.imag) > IMAG_TOL or f.real < -tol:
                return MembershipVerdict(False, constraint=i, value=complex(f * self.order))
        # x^T Q^{-1} by the orthogonality relations
        y = self.facet_coeffs.conj() @ _vector(x, len(vals)) / self.order
        return MembershipVerdict(True, coeffs=y.real)


def reduced_inequalities(Q: CharacterTable) -> ConeDescription:
    return ConeDescription(Q.entries, Q.entries * Q.class_sizes, Q.order)


def format_inequality(row) -> str:
    """``x1 + 2*x2 - 3*x3 >= 0``; non-real coefficients stay parenthesized."""
    out = ""
    for k, c in enumerate(row):
        if abs(c) <= 1e-12:
            continue
        var = f"x{k + 1}"
        if abs(c.imag) > 1e-12:
            term, sign = f"({format_complex(c)})*{var}", "+"
        else:
            mag = abs(c.real)
            term = var if abs(mag - 1) <= 1e-12 else f"{format_complex(mag)}*{var}"
            sign = "-" if c.real < 0 else "+"
        if not out:
            out = term if sign == "+" else f"-{term}"
        else:
            out += f" {sign} {term}"
    return f"{out or '0'} >= 0"


def redundancy_certificate(Q: CharacterTable, i: int, j: int, tol: float | None = None) -> np.ndarray:
    """Coefficients ``c`` with ``|G| [M_x]_ij = sum_l c_l facet_l(x)`` for all ``x``.

    ``c_l`` is the multiplicity of the l-th irreducible in the product of
    character ``i`` with the dual of character ``j``.  The identity is checked
    on the standard basis.
    """
    tol = resolve(tol)
    c = tensor_multiplicities(Q, i, j, conjugate_second=True)
    facets = reduced_inequalities(Q).facet_coeffs
    Qinv = inverse_table(Q)
    for k in range(Q.n):
        lhs = Q.order * Q.entries[i, k] * Qinv[k, j]
        rhs = c @ facets[:, k]
        if abs(lhs - rhs) > tol * max(1.0, abs(lhs)):
            raise InternalConsistencyError(
                f"certificate for ({i}, {j}) fails on basis vector {k}: {lhs} != {rhs}")
    return c


# -- structural predicates ---------------------------------------------------

def _positive_direction(v: np.ndarray, tol: float) -> complex | None:
    """Unit phase ``a`` with ``v / a`` a positive real vector, or ``None``."""
    if np.abs(v).min() <= tol:
        return None
    phase = v[0] / abs(v[0])
    w = v / phase
    if np.abs(w.imag).max() > tol * max(1.0, np.abs(w).max()) or w.real.min() <= tol:
        return None
    return phase


def is_perron_similarity(S, tol: float | None = None) -> tuple[bool, int | None]:
    """Test for a column ``k`` with ``S e_k`` and ``e_k^T S^{-1}`` both
    positive up to phases whose product is positive.  Returns ``(flag, k)``.
    """
    tol = resolve(tol)
    A, Ainv = _split(S)
    hits = []
    for k in range(len(A)):
        a = _positive_direction(A[:, k], tol)
        b = _positive_direction(Ainv[k, :], tol)
        if a is not None and b is not None:
            ab = a * b
            if abs(ab.imag) <= tol and ab.real > 0:
                hits.append(k)
    if len(hits) == 1:
        return True, hits[0]
    return False, None


def is_rhc(S, tol: float | None = None) -> tuple[bool, tuple[int, int] | None]:
    """Row Hadamard conic test: every ``r_i * r_j`` (entrywise) lies in ``C_r(S)``."""
    A, _ = _split(S)
    n = len(A)
    for i in range(n):
        for j in range(i, n):
            if not row_cone_membership(S, A[i] * A[j], tol):
                return False, (i, j)
    return True, None


def is_ideal(S, tol: float | None = None) -> tuple[bool, str]:
    """``S`` is ideal iff ``e`` lies in ``C_r(S)`` and ``S`` is RHC."""
    A, _ = _split(S)
    if not row_cone_membership(S, np.ones(len(A)), tol):
        return False, "all-ones vector is not in the row cone"
    ok, pair = is_rhc(S, tol)
    if not ok:
        return False, f"not RHC: Hadamard product of rows {pair[0] + 1} and {pair[1] + 1} leaves the row cone"
    return True, "ideal"


def rescale_stochastic(S, k: int = 0) -> np.ndarray:
    """``diag(v)^{-1} S`` with ``v = S e_k``; column ``k`` of the result is all ones."""
    A = S.entries if isinstance(S, CharacterTable) else np.asarray(S, dtype=complex)
    v = A[:, k]
    if np.any(v == 0):
        raise NotTotallyNonzeroError(f"column {k} has a zero entry")
    return _realify(A / v[:, None], 0.0)


def eigenpair_transform(S, x, k: int = 0) -> np.ndarray:
    """``diag(v)^{-1} M_x diag(v)`` with ``v = S e_k``; its row sums all equal ``x_k``."""
    A, Ainv = _split(S)
    v = A[:, k]
    if np.any(v == 0):
        raise NotTotallyNonzeroError(f"column {k} has a zero entry")
    x = _vector(x, len(A))
    M = (A * x) @ Ainv
    return _realify(M * v[None, :] / v[:, None])


def is_irreducible(M, tol: float | None = None) -> bool:
    """Strong connectivity of the digraph of entries above ``tol``."""
    tol = resolve(tol)
    M = np.asarray(M, dtype=float)
    if len(M) == 1:
        return True
    graph = (np.clip(M, 0, None) > tol).astype(int)
    ncomp, _ = connected_components(graph, directed=True, connection="strong")
    return ncomp == 1


def structure_check(Q: CharacterTable, x, tol: float | None = None) -> str:
    """Symmetric (real table) or normal (complex table) realizing matrix.

    Returns ``"symmetric"`` or ``"normal"``; raises :class:`TableCorruptError`
    when the expected structure is absent.
    """
    tol = resolve(tol)
    M = realize(Q, x, require_real=False).m
    if Q.is_real:
        err = np.abs(M - M.T).max()
        if err > tol:
            raise TableCorruptError(f"M_x not symmetric: deviation {err:.3g}")
        return "symmetric"
    err = np.abs(M.conj().T @ M - M @ M.conj().T).max()
    if err > tol:
        raise TableCorruptError(f"M_x not normal: deviation {err:.3g}")
    return "normal"


# -- spectra -----------------------------------------------------------------

def multiset_match(a, b, tol: float = SPECTRUM_TOL) -> bool:
    """Greedy nearest pairing of two complex multisets."""
    a = list(np.asarray(a, dtype=complex).ravel())
    b = list(np.asarray(b, dtype=complex).ravel())
    if len(a) != len(b):
        return False
    for z in a:
        d = [abs(z - w) for w in b]
        k = int(np.argmin(d))
        if d[k] > tol:
            return False
        b.pop(k)
    return True


def power_sum(x, k: int) -> complex:
    return complex(np.sum(np.asarray(x, dtype=complex) ** k))


@dataclass
class NecessaryConditionsReport:
    """First failure of each classical necessary condition, ``None`` if it holds.

    ``spectral_radius``: the largest modulus is attained by a positive real
    element; ``self_conjugate``: the list is closed under conjugation;
    ``trace``: power sums are nonnegative; ``jll``: the
    Johnson-Loewy-London inequalities.
    """

    spectral_radius: str | None = None
    self_conjugate: str | None = None
    trace: str | None = None
    jll: str | None = None

    @property
    def all_pass(self) -> bool:
        return not any((self.spectral_radius, self.self_conjugate, self.trace, self.jll))

    def failures(self) -> dict[str, str]:
        return {k: v for k, v in vars(self).items() if v is not None}

    def __str__(self):
        lines = []
        for name in ("spectral_radius", "self_conjugate", "trace", "jll"):
            msg = getattr(self, name)
            lines.append(f"{name}: {'PASS' if msg is None else 'FAIL ' + msg}")
        return "\n".join(lines)


def necessary_conditions(x, max_power: int = 12, tol: float | None = None) -> NecessaryConditionsReport:
    tol = resolve(tol)
    lam = np.asarray(x, dtype=complex).ravel()
    n = len(lam)
    rep = NecessaryConditionsReport()

    rho = np.abs(lam).max()
    if not np.any(np.abs(lam - rho) <= SPECTRUM_TOL * max(1.0, rho)):
        rep.spectral_radius = f"spectral radius {rho:.12g} is not an element"

    if not multiset_match(lam, lam.conj(), SPECTRUM_TOL):
        rep.self_conjugate = "list differs from its conjugate"

    s = {k: power_sum(lam, k) for k in range(1, max_power + 1)}
    for k in range(1, max_power + 1):
        scale = max(1.0, abs(s[k]))
        if abs(s[k].imag) > tol * scale or s[k].real < -tol * scale:
            rep.trace = f"s_{k} = {s[k].real:.12g}{s[k].imag:+.12g}i"
            break

    for k in range(1, max_power + 1):
        if rep.jll:
            break
        for ell in range(2, max_power // k + 1):
            lhs = s[k] ** ell
            rhs = n ** (ell - 1) * s[k * ell]
            scale = max(1.0, abs(lhs), abs(rhs))
            if abs(lhs.imag) > tol * scale or abs(rhs.imag) > tol * scale:
                rep.jll = f"k={k}, l={ell}: non-real power sums"
                break
            if lhs.real > rhs.real + tol * scale:
                rep.jll = f"k={k}, l={ell}: s_k^l = {lhs.real:.12g} > n^(l-1) s_kl = {rhs.real:.12g}"
                break
    return rep


_IMAG_UNIT = re.compile(r"(?<![\d.])([ij])")


def parse_spectrum(text: str) -> np.ndarray:
    """Parse ``"1, -0.5+0.2i, i"`` into a complex vector."""
    out = []
    for tok in text.split(","):
        tok = tok.strip().replace(" ", "")
        if not tok:
            raise InputError(f"empty entry in {text!r}")
        tok = _IMAG_UNIT.sub(r"1\1", tok).replace("i", "j")
        try:
            out.append(complex(tok))
        except ValueError:
            raise InputError(f"cannot parse {tok!r} as a complex number") from None
    return np.array(out)
