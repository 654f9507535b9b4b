"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; ``conftest.py`` prints them at the end of
the run.  The module can also be executed directly:
``python tests/test_acceptance.py``.
"""

import functools
import itertools
import math
import re
import sys
import time

import numpy as np
from scipy.optimize import linear_sum_assignment

from charperron import library
from charperron.char_table import burnside_table, dephased_f4_theta, tensor_multiplicities
from charperron.extremal import conjecture_probe, farey, is_totally_extremal
from charperron.geometry import occupancy_ratio, spectratope_volume, trace_polytope_volume
from charperron.groups import build_cyclic, build_direct_product, build_from_generators
from charperron.perron import (
    is_ideal,
    is_perron_similarity,
    necessary_conditions,
    realize,
    reduced_inequalities,
    redundancy_certificate,
    rescale_stochastic,
    spectratope_membership,
)

SEED = 0x5EED
EPS = 1e-9
H2 = np.array([[1, 1], [1, -1]])
H4 = np.kron(H2, H2)
SYM3 = np.array([[1, 1, 1], [1, -1, 1], [2, 0, -1]])

RESULTS: list[str] = []
_START = time.perf_counter()


def criterion(name):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            t0 = time.perf_counter()
            try:
                detail = fn()
            except BaseException as exc:
                RESULTS.append(f"FAIL  {name}: {type(exc).__name__}: {exc}".splitlines()[0])
                raise
            tail = f" ({detail})" if detail else ""
            RESULTS.append(f"PASS  {name}{tail} [{time.perf_counter() - t0:.2f}s]")
        return run
    return wrap


@functools.lru_cache(maxsize=None)
def table(name):
    return burnside_table(library.builtin_group(name), seed=SEED)


def all_tables():
    return [(name, table(name)) for name in library.builtin_names()]


def perm_match(A, B, tol):
    """Smallest max-error over all simultaneous row/column permutations (n <= 4)."""
    n = len(A)
    best = np.inf
    for r in itertools.permutations(range(n)):
        for c in itertools.permutations(range(n)):
            best = min(best, float(np.abs(A[np.ix_(r, c)] - B).max()))
    return best


@criterion("character-table goldens")
def test_golden_tables():
    cases = [
        ("Z2", build_cyclic(2), H2),
        ("Z2+Z2", build_direct_product(build_cyclic(2), build_cyclic(2)), H4),
        ("Sym(3)", build_from_generators(["(1 2)", "(1 2 3)"]), SYM3),
    ]
    errs = []
    for label, G, want in cases:
        err = perm_match(burnside_table(G, seed=SEED).entries, want, 1e-8)
        assert err <= 1e-8, f"{label}: best permuted error {err:.3g}"
        errs.append(err)
    return f"max error {max(errs):.1e}"


@criterion("Perron/ideal suite over built-in groups")
def test_perron_ideal_suite():
    names = library.builtin_names()
    for need in ("Sym(3)", "Sym(4)", "D8", "D10", "D12"):
        assert need in names
    for name, Q in all_tables():
        assert is_perron_similarity(Q, EPS) == (True, 0), name
        M = realize(Q, np.eye(Q.n)[0]).m
        # oracle: [M_{e1}]_ij = d_i d_j / |G|
        d = Q.entries[:, 0].real
        assert np.allclose(M, np.outer(d, d) / Q.order, atol=1e-12), name
        assert M.min() > 0, name
        assert is_ideal(Q, EPS)[0], name
        for i in range(Q.n):
            for j in range(Q.n):
                m = tensor_multiplicities(Q, i, j)
                assert np.abs(m - np.round(m)).max() <= 1e-6 and np.round(m).min() >= 0, (name, i, j)
    return f"{len(names)} tables"


def _mixed_samples(Q, count, rng):
    n = Q.n
    k = count // 3
    w = rng.random((k, n)) * (rng.random((k, n)) > 0.3)
    inside = w @ Q.entries
    if Q.is_real:
        inside = inside.real
    real = rng.normal(size=(k, n))
    cplx = rng.normal(size=(count - 2 * k, n)) + 1j * rng.normal(size=(count - 2 * k, n))
    return [*inside, *real, *cplx]


@criterion("reduced inequality suite")
def test_inequalities():
    sym3 = table("Sym(3)")
    F = reduced_inequalities(sym3).facet_coeffs
    cols = [np.flatnonzero(sym3.class_sizes == s)[0] for s in (1, 3, 2)]
    want = {(1, 3, 2), (1, -3, 2), (2, 0, -2)}
    assert {tuple(np.round(r.real[cols]).astype(int)) for r in F} == want
    assert np.allclose(F.imag, 0) and np.allclose(F.real[:, cols], np.round(F.real[:, cols]))
    h4 = table("Z2×Z2")
    assert {tuple(np.round(r.real).astype(int)) for r in reduced_inequalities(h4).facet_coeffs} \
        == {tuple(r) for r in H4}
    std = int(np.flatnonzero(sym3.degrees == 2)[0])
    c = redundancy_certificate(sym3, std, std)
    assert np.allclose(np.sort(c), [1, 1, 1])
    assert np.allclose(c, [(4 + 2) / 6, (4 + 2) / 6, (8 - 2) / 6])
    rng = np.random.default_rng(SEED)
    total = 0
    for name, Q in all_tables():
        X = np.array(_mixed_samples(Q, 1000, rng), dtype=complex)
        Qi = np.linalg.inv(Q.entries)
        Ms = np.einsum("ik,sk,kj->sij", Q.entries, X, Qi)
        entrywise = ((np.abs(Ms.imag) <= 1e-7) & (Ms.real >= -EPS)).all(axis=(1, 2))
        cone = reduced_inequalities(Q)
        reduced = np.array([cone.contains(x, EPS).member for x in X])
        bad = int(np.count_nonzero(entrywise != reduced))
        assert bad == 0, f"{name}: {bad} disagreements"
        total += len(X)
    return f"{total} samples, 0 disagreements"


@criterion("volume suite")
def test_volumes():
    s3 = spectratope_volume(table("Sym(3)"))
    assert abs(s3.formula_value - 1.5) <= 1e-9 and abs(s3.determinant_value - 1.5) <= 1e-9
    v4 = spectratope_volume(table("Z2×Z2"))
    assert abs(v4.formula_value - 8 / 3) <= 1e-9 and abs(v4.determinant_value - 8 / 3) <= 1e-9
    # closed form, evaluated here independently in floating point
    def closed(m):
        s = sum((-1) ** k * math.comb(m, k) * ((m - 1) / 2 - k) ** m for k in range((m - 1) // 2 + 1))
        return 2 ** m * (1 - s / math.factorial(m))
    for m, want in ((2, 7 / 2), (3, 20 / 3)):
        assert abs(trace_polytope_volume(m) - want) <= 1e-12
        assert abs(closed(m) - want) <= 1e-12
    assert abs(occupancy_ratio(table("Sym(3)")) - 3 / 7) <= 1e-9
    assert abs(occupancy_ratio(table("Z2×Z2")) - 2 / 5) <= 1e-9
    return "3/2, 8/3, 7/2, 20/3, 3/7, 2/5"


def _spectra_match(a, b):
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())


@criterion("spectrum property test")
def test_spectrum():
    rng = np.random.default_rng([SEED, 5])
    worst = {"neg": 0.0, "eig": 0.0, "struct": 0.0}
    for name, Q in all_tables():
        A = Q.entries
        Ai = np.linalg.inv(A)
        W = rng.random((500, Q.n)) * (rng.random((500, Q.n)) > 0.3)
        X = W @ A
        Ms = np.einsum("ik,sk,kj->sij", A, X, Ai)
        assert np.abs(Ms.imag).max() <= 1e-7, name
        M = Ms.real
        worst["neg"] = max(worst["neg"], -float(M.min()))
        assert M.min() >= -1e-9, name
        eig = np.linalg.eigvals(M)
        for s in range(500):
            err = _spectra_match(eig[s], X[s])
            worst["eig"] = max(worst["eig"], err)
            assert err <= 1e-7, (name, s, err)
        if Q.is_real:
            dev = float(np.abs(M - M.transpose(0, 2, 1)).max())
        else:
            Mt = M.transpose(0, 2, 1)
            dev = float(np.abs(M @ Mt - Mt @ M).max())
        worst["struct"] = max(worst["struct"], dev)
        assert dev <= 1e-8, (name, dev)
        # Hadamard closure on paired samples
        Y = X * np.roll(X, 1, axis=0)
        My = np.einsum("ik,sk,kj->sij", A, Y, Ai)
        assert np.abs(My.imag).max() <= 1e-7 and My.real.min() >= -1e-9, name
    return ", ".join(f"{k} {v:.1e}" for k, v in worst.items())


def _self_conjugate(v, tol=1e-9):
    v = np.asarray(v)
    cost = np.abs(v[:, None] - v.conj()[None, :])
    r, c = linear_sum_assignment(cost)
    return cost[r, c].max() <= tol


@criterion("F4 counterexample family")
def test_counterexample():
    seen = 0
    for theta in (np.pi / 5, 1.0, 2.0):
        A = dephased_f4_theta(theta)
        if not _self_conjugate(A[1]):
            seen += 1
            assert not is_ideal(A, EPS)[0], theta
            assert necessary_conditions(A[1]).self_conjugate is not None, theta
    assert seen == 3
    assert is_ideal(dephased_f4_theta(0.0), EPS)[0]
    return "theta in {pi/5, 1, 2} not ideal; theta=0 ideal"


@criterion("strict-inclusion example")
def test_strict_inclusion():
    S = np.array([[1.0, 1], [2, -2]])
    grid = np.linspace(-1, 1, 41)
    hits = [(a, b) for a in grid for b in grid if spectratope_membership(S, [a, b], EPS)]
    assert hits == [(1.0, 1.0)], hits
    H = rescale_stochastic(S, 0)
    assert np.allclose(H, H2)
    assert is_ideal(H, EPS)[0]
    return "only (1, 1) on the 41x41 grid"


def _prime_powers(label):
    out = []
    for n in map(int, re.findall(r"Z(\d+)", label)):
        p = 2
        while n > 1:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            if q > 1:
                out.append(q)
            p += 1
    return tuple(sorted(out))


@criterion("extremality, Farey counts and the abelian probe")
def test_extremality():
    abelian = [n for n in library.builtin_names() if library.builtin_group(n).is_abelian]
    for name in abelian:
        assert is_totally_extremal(table(name), EPS)[0], name
    assert not is_totally_extremal(table("Sym(3)"), EPS)[0]
    for n in range(1, 51):
        phi = sum(sum(1 for j in range(1, k + 1) if math.gcd(j, k) == 1) for k in range(1, n + 1))
        assert len(farey(n)) == 1 + phi, n
    for name in abelian:
        rep = conjecture_probe(table(name), EPS)
        assert rep.all_hold, name
        assert tuple(rep.match_factors) == _prime_powers(name), (name, rep.matches)
    return f"{len(abelian)} abelian tables matched"


@criterion("total runtime under 10 s")
def test_runtime():
    elapsed = time.perf_counter() - _START
    assert elapsed < 10, f"{elapsed:.1f}s"
    return f"{elapsed:.1f}s"


if __name__ == "__main__":
    failed = 0
    for fn in [v for k, v in list(globals().items()) if k.startswith("test_")]:
        try:
            fn()
        except BaseException:
            failed += 1
    print("\n".join(RESULTS))
    sys.exit(1 if failed else 0)
