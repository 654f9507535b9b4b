"""Finite groups given by Cayley tables, and their conjugacy classes.

Elements are the integers ``0 .. order-1``.  ``cayley[a, b]`` is the index of
the product ``a*b`` (row is the left factor).  Every constructor in this module
places the identity at index 0.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from ._config import ORDER_CAP
from .errors import (
    GroupAxiomError,
    GroupTooLargeError,
    InputError,
    InternalConsistencyError,
    InvalidOrderError,
    InvalidPermutationError,
)


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: frozenset
    size: int
    centralizer_order: int


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group stored as a validated Cayley table.

    Construction checks the Latin-square property, the identity row/column,
    inverses, and (for ``order <= 512``) associativity over all triples.
    """

    cayley: np.ndarray
    identity: int = 0
    label: str = ""
    inverses: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        table = np.array(self.cayley, dtype=np.int64)
        _check_axioms(table, self.identity)
        table.setflags(write=False)
        object.__setattr__(self, "cayley", table)
        inv = np.argmax(table == self.identity, axis=1)
        if not np.all(table[inv, np.arange(len(table))] == self.identity):
            raise GroupAxiomError("left and right inverses disagree")
        inv.setflags(write=False)
        object.__setattr__(self, "inverses", inv)

    @property
    def order(self) -> int:
        return len(self.cayley)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, label={self.label!r})"

    def mul(self, a: int, b: int) -> int:
        return int(self.cayley[a, b])

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.cayley[x, g]
            k += 1
        return k

    @cached_property
    def element_orders(self) -> np.ndarray:
        return np.array([self.element_order(g) for g in range(self.order)])

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    @cached_property
    def classes(self) -> list[ConjugacyClass]:
        return _compute_classes(self)

    @cached_property
    def class_of(self) -> np.ndarray:
        """Map element index -> position of its class in :attr:`classes`."""
        out = np.empty(self.order, dtype=np.int64)
        for k, c in enumerate(self.classes):
            out[list(c.members)] = k
        return out


def _check_axioms(table: np.ndarray, identity: int) -> None:
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise GroupAxiomError(f"Cayley table must be square, got shape {table.shape}")
    n = table.shape[0]
    if n == 0:
        raise InvalidOrderError("a group needs at least one element")
    if table.min() < 0 or table.max() >= n:
        raise GroupAxiomError(f"entries must lie in 0..{n - 1}")
    if not 0 <= identity < n:
        raise GroupAxiomError(f"identity index {identity} out of range")
    want = np.arange(n)
    for i in range(n):
        if len(np.unique(table[i])) != n:
            raise GroupAxiomError(f"not a Latin square: row {i} repeats an element")
    for j in range(n):
        if len(np.unique(table[:, j])) != n:
            raise GroupAxiomError(f"not a Latin square: column {j} repeats an element")
    if not np.array_equal(table[identity], want) or not np.array_equal(table[:, identity], want):
        raise GroupAxiomError(f"element {identity} is not a two-sided identity")
    if n > ORDER_CAP:
        return
    for a in range(n):
        # (a*b)*c versus a*(b*c) for every b, c at once
        lhs = table[table[a]]
        rhs = table[a][table]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0]
            raise GroupAxiomError(f"associativity fails for triple ({a}, {b}, {c})")


def _compute_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    T, inv = G.cayley, G.inverses
    n = G.order
    seen = np.zeros(n, dtype=bool)
    found = []
    for g in range(n):
        if seen[g]:
            continue
        # a g a^{-1} for all a
        members = np.unique(T[T[:, g], inv])
        seen[members] = True
        centralizer = int(np.count_nonzero(T[:, g] == T[g, :]))
        size = len(members)
        if size * centralizer != n:
            raise InternalConsistencyError(
                f"class of {g}: size {size} * centralizer {centralizer} != {n}"
            )
        found.append(ConjugacyClass(int(members[0]), frozenset(int(m) for m in members), size, centralizer))
    ident = [c for c in found if G.identity in c.members]
    rest = sorted((c for c in found if G.identity not in c.members),
                  key=lambda c: c.representative)
    return ident + rest


def conjugacy_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    """Conjugacy classes in canonical order.

    The identity class comes first; the rest follow in order of their smallest
    member, so a group built from generators lists classes in discovery order.  Centralizer orders are counted directly and cross-checked
    against ``|G| = |C(g)| |cl(g)|``.
    """
    return list(G.classes)


# -- constructors ------------------------------------------------------------

def build_cyclic(n: int, label: str | None = None) -> FiniteGroup:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidOrderError(f"cyclic group order must be a positive integer, got {n!r}")
    idx = np.arange(n)
    return FiniteGroup((idx[:, None] + idx[None, :]) % n, 0, label or f"Z{n}")


def build_direct_product(G1: FiniteGroup, G2: FiniteGroup, label: str | None = None) -> FiniteGroup:
    """Direct product; the pair ``(i, j)`` has index ``i*|G2| + j``."""
    n1, n2 = G1.order, G2.order
    T = (G1.cayley[:, None, :, None] * n2 + G2.cayley[None, :, None, :]).reshape(n1 * n2, n1 * n2)
    return FiniteGroup(T, G1.identity * n2 + G2.identity, label or f"{G1.label}×{G2.label}")


def build_from_cayley(table, label: str = "") -> FiniteGroup:
    """Validate an arbitrary Cayley table and relabel its identity to 0."""
    T = np.asarray(table)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise GroupAxiomError(f"Cayley table must be square, got shape {T.shape}")
    if not np.issubdtype(T.dtype, np.integer):
        raise GroupAxiomError("Cayley table entries must be integers")
    n = len(T)
    want = np.arange(n)
    candidates = [e for e in range(n) if np.array_equal(T[e], want) and np.array_equal(T[:, e], want)]
    if not candidates:
        # let the axiom checker name the first defect (Latin square before identity)
        _check_axioms(T.astype(np.int64), 0)
        raise GroupAxiomError("no two-sided identity element")
    e = candidates[0]
    if e != 0:
        sigma = np.arange(n)
        sigma[[0, e]] = sigma[[e, 0]]
        # sigma is an involution, so it is its own inverse
        T = sigma[T[np.ix_(sigma, sigma)]]
    return FiniteGroup(T, 0, label)


def closure_table(generators: Sequence, compose: Callable, identity, key: Callable[..., Hashable] = lambda g: g,
                  order_cap: int = ORDER_CAP):
    """Breadth-first closure of ``generators`` under ``compose``.

    Returns ``(elements, cayley)`` with ``elements[0] == identity``.
    Generators are applied in the given order, so the numbering is
    deterministic.
    """
    elements = [identity]
    index = {key(identity): 0}
    queue = deque([identity])
    while queue:
        g = queue.popleft()
        for s in generators:
            h = compose(s, g)
            k = key(h)
            if k not in index:
                if len(elements) >= order_cap:
                    raise GroupTooLargeError(f"closure exceeds the order cap {order_cap}")
                index[k] = len(elements)
                elements.append(h)
                queue.append(h)
    n = len(elements)
    T = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            T[i, j] = index[key(compose(a, b))]
    return elements, T


def build_from_generators(perms: Iterable, order_cap: int = ORDER_CAP, label: str = "") -> FiniteGroup:
    """Permutation group generated by ``perms``.

    Each permutation is either a string in 1-based cycle notation such as
    ``"(1 2)(3 4 5)"`` or a sequence of 0-based images.  The product ``g*h``
    applies ``h`` first.
    """
    perms = [parse_cycles(p) if isinstance(p, str) else _as_image_tuple(p) for p in perms]
    degree = max((len(p) for p in perms), default=1)
    perms = [p + tuple(range(len(p), degree)) for p in perms]
    ident = tuple(range(degree))
    _, T = closure_table(perms, lambda a, b: tuple(a[x] for x in b), ident, order_cap=order_cap)
    return FiniteGroup(T, 0, label)


def _as_image_tuple(p) -> tuple:
    img = tuple(int(x) for x in p)
    if sorted(img) != list(range(len(img))):
        raise InvalidPermutationError(f"{list(p)} is not a bijection on 0..{len(img) - 1}")
    return img


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> tuple:
    """Parse 1-based cycle notation into a tuple of 0-based images."""
    s = text.strip()
    if _CYCLE.sub("", s).strip():
        raise InvalidPermutationError(f"cannot parse permutation {text!r}")
    cycles = []
    for body in _CYCLE.findall(s):
        pts = [int(t) for t in body.replace(",", " ").split()]
        if any(p < 1 for p in pts):
            raise InvalidPermutationError(f"points are 1-based: {text!r}")
        cycles.append(pts)
    flat = [p for c in cycles for p in c]
    if len(flat) != len(set(flat)):
        raise InvalidPermutationError(f"cycles are not disjoint in {text!r}")
    m = max([degree or 0, *flat, 1])
    img = list(range(m))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def split_generators(text: str) -> list[str]:
    """Split ``"(1 2),(1 2 3)"`` at top-level commas."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out if s.strip()]


# -- group definition files --------------------------------------------------

_SPEC_KEYS = ("cyclic_factors", "generators", "cayley")


def group_from_spec(spec: dict) -> FiniteGroup:
    """Build a group from a parsed definition mapping.

    Exactly one of ``cyclic_factors``, ``generators`` or ``cayley`` must be
    present; ``label`` is optional.
    """
    if not isinstance(spec, dict):
        raise InputError("group definition must be a mapping")
    present = [k for k in _SPEC_KEYS if k in spec]
    if len(present) != 1:
        raise InputError(f"group definition needs exactly one of {_SPEC_KEYS}, got {present}")
    label = str(spec.get("label", ""))
    kind = present[0]
    if kind == "cyclic_factors":
        factors = [int(n) for n in spec[kind]]
        if not factors:
            raise InvalidOrderError("cyclic_factors is empty")
        G = build_cyclic(factors[0])
        for n in factors[1:]:
            G = build_direct_product(G, build_cyclic(n))
        return FiniteGroup(G.cayley, 0, label or G.label)
    if kind == "generators":
        gens = spec[kind]
        if isinstance(gens, str):
            gens = split_generators(gens)
        return build_from_generators(gens, label=label)
    return build_from_cayley(spec[kind], label=label)


def load_group_file(path) -> FiniteGroup:
    import yaml

    with open(Path(path)) as fh:
        spec = yaml.safe_load(fh)
    return group_from_spec(spec)
