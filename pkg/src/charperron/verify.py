"""Golden checks: every worked example plus invariant sweeps over the
built-in groups.  Used by ``charperron verify-paper``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import library
from ._config import DEFAULT_SEED, resolve
from .char_table import (
    CharacterTable,
    burnside_table,
    dephased_f4_theta,
    match_tables,
    tensor_multiplicities,
)
from .extremal import abelian_factorization, conjecture_probe, farey, is_totally_extremal
from .geometry import spectratope_volume, trace_polytope_volume
from .perron import (
    is_ideal,
    is_perron_similarity,
    multiset_match,
    necessary_conditions,
    realize,
    redundancy_certificate,
    reduced_inequalities,
    rescale_stochastic,
    spectracone_membership,
    spectratope_membership,
    structure_check,
)

CATEGORIES = ("tables", "perron", "inequalities", "volumes", "spectrum",
              "counterexample", "inclusion", "extremal")

SYM3 = np.array([[1, 1, 1], [1, -1, 1], [2, 0, -1]])
H2 = np.array([[1, 1], [1, -1]])
H4 = np.array([[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]])


@dataclass
class CheckResult:
    category: str
    name: str
    passed: bool
    detail: str = ""

    def __str__(self):
        return f"{'PASS' if self.passed else 'FAIL'} [{self.category}] {self.name}" + (
            f": {self.detail}" if self.detail else "")


def conical_samples(Q, count: int, rng: np.random.Generator) -> np.ndarray:
    """``count`` random conical combinations of the rows of ``Q``."""
    A = getattr(Q, "entries", Q)
    c = rng.random((count, len(A)))
    # sparsify so that boundary faces are exercised as well
    c[rng.random(c.shape) < 0.3] = 0.0
    return c @ A


def mixed_samples(Q, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random vectors, roughly half inside the spectracone of ``Q``."""
    A = getattr(Q, "entries", Q)
    n = len(A)
    k = count // 3
    inside = rng.uniform(-0.3, 1.0, (k, n)) @ A
    real = rng.normal(size=(k, n))
    cplx = rng.normal(size=(count - 2 * k, n)) + 1j * rng.normal(size=(count - 2 * k, n))
    return np.vstack([inside, real, cplx])


class _Runner:
    def __init__(self, tol, seed):
        self.tol = resolve(tol)
        self.seed = seed
        self._tables: dict[str, CharacterTable] = {}

    def table(self, name) -> CharacterTable:
        if name not in self._tables:
            self._tables[name] = burnside_table(library.builtin_group(name), seed=self.seed)
        return self._tables[name]

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


def _check(category: str, name: str, fn: Callable[[], str | bool | None]) -> CheckResult:
    try:
        out = fn()
    except Exception as exc:  # a failing check is reported, not raised
        return CheckResult(category, name, False, f"{type(exc).__name__}: {exc}")
    if out is False:
        return CheckResult(category, name, False)
    return CheckResult(category, name, True, out if isinstance(out, str) else "")


def _tables(r: _Runner) -> Iterator[CheckResult]:
    goldens = [("Z2", H2), ("Z2×Z2", H4), ("Sym(3)", SYM3)]
    for name, want in goldens:
        yield _check("tables", f"golden {name}",
                     lambda name=name, want=want: match_tables(r.table(name), want, 1e-8) is not None)
    for name in library.builtin_names():
        def ortho(name=name):
            Q = r.table(name)
            err = float(np.abs(Q.entries.conj().T @ Q.entries - np.diag(Q.centralizer_orders)).max())
            if err > r.tol:
                raise AssertionError(f"max deviation {err:.3g} > tolerance {r.tol:g}")
            return f"max deviation {err:.1e}"
        yield _check("tables", f"orthogonality {name}", ortho)


def _perron(r: _Runner) -> Iterator[CheckResult]:
    for name in library.builtin_names():
        def run(name=name):
            Q = r.table(name)
            ok, k = is_perron_similarity(Q, r.tol)
            assert ok and k == 0, f"perron similarity test gave {(ok, k)}"
            m = realize(Q, np.eye(Q.n)[0]).m
            assert m.min() > 0, "M_e1 is not positive"
            ideal, why = is_ideal(Q, r.tol)
            assert ideal, why
            for i in range(Q.n):
                for j in range(Q.n):
                    for conj in (False, True):
                        a = tensor_multiplicities(Q, i, j, conj)
                        assert np.abs(a - np.rint(a)).max() <= 1e-6 and a.min() > -1e-6
            return "perron, M_e1 > 0, ideal, integral multiplicities"
        yield _check("perron", name, run)


def _inequalities(r: _Runner) -> Iterator[CheckResult]:
    def sym3():
        Q = r.table("Sym(3)")
        rows, cols = match_tables(Q, SYM3)
        facets = reduced_inequalities(Q).facet_coeffs[np.ix_(rows, cols)]
        assert np.abs(facets - [[1, 3, 2], [1, -3, 2], [2, 0, -2]]).max() <= 1e-9
        return "x1+3x2+2x3, x1-3x2+2x3, 2(x1-x3)"

    def h4():
        Q = CharacterTable.from_matrix(H4, [1, 1, 1, 1])
        assert np.array_equal(reduced_inequalities(Q).facet_coeffs.real, H4)
        return "four sign patterns"

    def cert():
        Q = r.table("Sym(3)")
        c = redundancy_certificate(Q, 2, 2)
        # hand-computed weights (4+2)/6, (4+2)/6, (8-2)/6
        assert np.allclose(c, [(4 + 2) / 6, (4 + 2) / 6, (8 - 2) / 6], atol=1e-9)
        return f"c = {c.round(9).tolist()}"

    yield _check("inequalities", "Sym(3) half-spaces", sym3)
    yield _check("inequalities", "H4 half-spaces", h4)
    yield _check("inequalities", "Sym(3) redundancy certificate (3,3)", cert)
    for name in library.builtin_names():
        def agree(name=name):
            Q = r.table(name)
            cone = reduced_inequalities(Q)
            xs = mixed_samples(Q, 1000, r.rng(11))
            members = 0
            for x in xs:
                a = cone.contains(x, r.tol).member
                b = spectracone_membership(Q, x, r.tol).member
                assert a == b, f"disagreement at x={x}"
                members += a
            return f"1000 samples, {members} members, 0 disagreements"
        yield _check("inequalities", f"reduced system agreement {name}", agree)


def _volumes(r: _Runner) -> Iterator[CheckResult]:
    def vol(name, want):
        def run():
            rep = spectratope_volume(r.table(name))
            assert abs(rep.formula_value - want) <= 1e-9, rep.formula_value
            assert abs(rep.formula_value - rep.determinant_value) <= 1e-9 * max(1, rep.formula_value)
            return f"{rep.formula_value:.12g}"
        return run

    def ratio(name, want):
        def run():
            rep = spectratope_volume(r.table(name))
            assert abs(rep.ratio_to_trace_polytope - want) <= 1e-9
            return f"{rep.ratio_to_trace_polytope:.12g}"
        return run

    def trace(m, want):
        def run():
            v = trace_polytope_volume(m)
            assert abs(v - want) <= 1e-12
            return f"{trace_polytope_volume(m, exact=True)}"
        return run

    yield _check("volumes", "spectratope Sym(3) = 3/2", vol("Sym(3)", 3 / 2))
    yield _check("volumes", "spectratope Z2×Z2 = 8/3", vol("Z2×Z2", 8 / 3))
    yield _check("volumes", "trace polytope m=2 = 7/2", trace(2, 7 / 2))
    yield _check("volumes", "trace polytope m=3 = 20/3", trace(3, 20 / 3))
    yield _check("volumes", "occupancy Sym(3) = 3/7", ratio("Sym(3)", 3 / 7))
    yield _check("volumes", "occupancy Z2×Z2 = 2/5", ratio("Z2×Z2", 2 / 5))
    for name in library.builtin_names():
        def agree(name=name):
            Q = r.table(name)
            if not Q.is_real:
                return "complex table, skipped"
            rep = spectratope_volume(Q)
            err = abs(rep.formula_value - rep.determinant_value)
            assert err <= 1e-9 * max(1, rep.formula_value), err
            return f"V = {rep.formula_value:.12g}"
        yield _check("volumes", f"formula vs determinant {name}", agree)


def _spectrum(r: _Runner, count: int = 500) -> Iterator[CheckResult]:
    for name in library.builtin_names():
        def run(name=name):
            Q = r.table(name)
            xs = conical_samples(Q, count, r.rng(23))
            for x in xs:
                m = realize(Q, x).m
                assert m.min() >= -1e-9, "negative entry"
                assert multiset_match(np.linalg.eigvals(m), x, 1e-7), "spectrum mismatch"
                structure_check(Q, x, 1e-8)
            for x, y in zip(xs, np.roll(xs, 1, axis=0)):
                assert spectracone_membership(Q, x * y, r.tol), "Hadamard closure fails"
            return f"{count} samples"
        yield _check("spectrum", name, run)


def _counterexample(r: _Runner) -> Iterator[CheckResult]:
    for theta in (math.pi / 5, 1.0, 2.0):
        def run(theta=theta):
            S = dephased_f4_theta(theta)
            row = S[1]
            self_conj = multiset_match(row, row.conj(), 1e-7)
            report = necessary_conditions(row)
            ideal, _ = is_ideal(S, r.tol)
            if not self_conj:
                assert not ideal, "claimed ideal"
                assert report.self_conjugate is not None, "self-conjugacy not flagged"
            return f"ideal={ideal}, self-conjugate={self_conj}"
        yield _check("counterexample", f"F4(theta={theta:.6g})", run)
    yield _check("counterexample", "F4(0) ideal", lambda: is_ideal(dephased_f4_theta(0.0), r.tol)[0])


def _inclusion(r: _Runner) -> Iterator[CheckResult]:
    S = np.array([[1.0, 1.0], [2.0, -2.0]])

    def grid():
        accepted = []
        for a in np.linspace(-1, 1, 41):
            for b in np.linspace(-1, 1, 41):
                if spectratope_membership(S, [a, b], r.tol):
                    accepted.append((a, b))
        assert accepted == [(1.0, 1.0)], accepted
        return "only (1, 1) accepted on the 41x41 grid"

    def rescaled():
        H = rescale_stochastic(S, 0)
        assert np.allclose(H, H2)
        return is_ideal(H, r.tol)[0]

    yield _check("inclusion", "P(S) trivial", grid)
    yield _check("inclusion", "rescaled S is H2 and ideal", rescaled)


def _extremal(r: _Runner) -> Iterator[CheckResult]:
    for name in library.builtin_names():
        G = library.builtin_group(name)
        if G.is_abelian:
            def run(name=name, G=G):
                Q = r.table(name)
                ok, bad = is_totally_extremal(Q, r.tol)
                assert ok, f"entry {bad} off the circle points"
                rep = conjecture_probe(Q, r.tol)
                want = tuple(abelian_factorization(G))
                assert rep.all_hold and rep.match_factors == want, str(rep)
                return f"matches {rep.matches}"
            yield _check("extremal", f"totally extremal + probe {name}", run)
    yield _check("extremal", "Sym(3) not totally extremal",
                 lambda: not is_totally_extremal(r.table("Sym(3)"), r.tol)[0])

    def totient():
        for n in range(1, 51):
            phi = sum(1 for q in range(1, n + 1) for p in range(1, q + 1) if math.gcd(p, q) == 1)
            assert len(farey(n)) == 1 + phi, n
        return "n <= 50"
    yield _check("extremal", "Farey counts", totient)


_SECTIONS = {
    "tables": _tables,
    "perron": _perron,
    "inequalities": _inequalities,
    "volumes": _volumes,
    "spectrum": _spectrum,
    "counterexample": _counterexample,
    "inclusion": _inclusion,
    "extremal": _extremal,
}


def run_checks(only=None, tol: float | None = None, seed: int = DEFAULT_SEED) -> Iterator[CheckResult]:
    """Yield check results in a fixed order; ``only`` restricts to categories."""
    wanted = CATEGORIES if not only else tuple(only)
    unknown = set(wanted) - set(CATEGORIES)
    if unknown:
        raise ValueError(f"unknown check categories {sorted(unknown)}; choose from {CATEGORIES}")
    r = _Runner(tol, seed)
    for cat in CATEGORIES:
        if cat in wanted:
            yield from _SECTIONS[cat](r)
