"""Built-in groups: every group of order at most 16, plus Sym(4).

Nonabelian groups are realized as permutation groups, split semidirect
products ``N x| Z_m``, or closures of small complex matrices (the quaternion
families and the Pauli group).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .groups import (
    FiniteGroup,
    build_cyclic,
    build_direct_product,
    build_from_cayley,
    build_from_generators,
    closure_table,
)


def direct_product(*groups: FiniteGroup, label: str | None = None) -> FiniteGroup:
    G = groups[0]
    for H in groups[1:]:
        G = build_direct_product(G, H)
    return FiniteGroup(G.cayley, G.identity, label or G.label)


def abelian(*orders: int, label: str | None = None) -> FiniteGroup:
    """``Z_{n1} x Z_{n2} x ...``"""
    return direct_product(*(build_cyclic(n) for n in orders), label=label)


def semidirect_cyclic(N: FiniteGroup, m: int, phi, label: str = "") -> FiniteGroup:
    """``N x| Z_m`` where the generator of ``Z_m`` acts by the automorphism ``phi``.

    ``phi`` maps element indices of ``N`` to element indices; ``phi**m`` must
    be the identity map.  The pair ``(a, k)`` gets index ``k*|N| + a``.
    """
    phi = np.asarray(phi)
    n = N.order
    powers = [np.arange(n)]
    for _ in range(1, m):
        powers.append(phi[powers[-1]])
    if not np.array_equal(phi[powers[-1]], np.arange(n)):
        raise ValueError("phi**m is not the identity")
    T = np.empty((m * n, m * n), dtype=np.int64)
    for k1 in range(m):
        for k2 in range(m):
            # (a1, k1)(a2, k2) = (a1 * phi^k1(a2), k1 + k2)
            block = N.cayley[:, powers[k1]]
            T[k1 * n:(k1 + 1) * n, k2 * n:(k2 + 1) * n] = ((k1 + k2) % m) * n + block
    return build_from_cayley(T, label=label)


def metacyclic(n: int, m: int, r: int, label: str = "") -> FiniteGroup:
    """``Z_n x| Z_m`` with the generator acting as ``x -> r*x``."""
    return semidirect_cyclic(build_cyclic(n), m, (r * np.arange(n)) % n, label)


def dihedral(order: int) -> FiniteGroup:
    k = order // 2
    return metacyclic(k, 2, -1, f"D{order}")


def from_matrices(mats, label: str = "") -> FiniteGroup:
    mats = [np.asarray(m, dtype=complex) for m in mats]

    def key(a):
        return tuple(np.round(a, 8).ravel().tolist())

    _, T = closure_table(mats, lambda a, b: a @ b, np.eye(len(mats[0]), dtype=complex), key=key)
    return FiniteGroup(T, 0, label)


def generalized_quaternion(order: int) -> FiniteGroup:
    z = np.exp(2j * np.pi / (order // 2))
    a = np.diag([z, 1 / z])
    b = np.array([[0, -1], [1, 0]])
    return from_matrices([a, b], f"Q{order}")


def symmetric(k: int) -> FiniteGroup:
    cycle = "(" + " ".join(str(i) for i in range(1, k + 1)) + ")"
    return build_from_generators(["(1 2)", cycle], label=f"Sym({k})")


def pauli() -> FiniteGroup:
    X = [[0, 1], [1, 0]]
    Y = [[0, -1j], [1j, 0]]
    Z = [[1, 0], [0, -1]]
    return from_matrices([X, Y, Z], "Pauli")


def _g16_3() -> FiniteGroup:
    # (Z4 x Z2) x| Z2 acting by (x, y) -> (x, x + y mod 2)
    N = abelian(4, 2)
    phi = [x * 2 + (x + y) % 2 for x in range(4) for y in range(2)]
    return semidirect_cyclic(N, 2, phi, "(Z4×Z2)⋊Z2")


_BUILDERS = {
    "Z1": lambda: build_cyclic(1),
    "Z2": lambda: build_cyclic(2),
    "Z3": lambda: build_cyclic(3),
    "Z4": lambda: build_cyclic(4),
    "Z2×Z2": lambda: abelian(2, 2),
    "Z5": lambda: build_cyclic(5),
    "Z6": lambda: build_cyclic(6),
    "Sym(3)": lambda: symmetric(3),
    "Z7": lambda: build_cyclic(7),
    "Z8": lambda: build_cyclic(8),
    "Z4×Z2": lambda: abelian(4, 2),
    "Z2×Z2×Z2": lambda: abelian(2, 2, 2),
    "D8": lambda: dihedral(8),
    "Q8": lambda: generalized_quaternion(8),
    "Z9": lambda: build_cyclic(9),
    "Z3×Z3": lambda: abelian(3, 3),
    "Z10": lambda: build_cyclic(10),
    "D10": lambda: dihedral(10),
    "Z11": lambda: build_cyclic(11),
    "Z12": lambda: build_cyclic(12),
    "Z6×Z2": lambda: abelian(6, 2),
    "A4": lambda: build_from_generators(["(1 2 3)", "(1 2)(3 4)"], label="A4"),
    "D12": lambda: dihedral(12),
    "Dic12": lambda: metacyclic(3, 4, -1, "Dic12"),
    "Z13": lambda: build_cyclic(13),
    "Z14": lambda: build_cyclic(14),
    "D14": lambda: dihedral(14),
    "Z15": lambda: build_cyclic(15),
    "Z16": lambda: build_cyclic(16),
    "Z4×Z4": lambda: abelian(4, 4),
    "Z8×Z2": lambda: abelian(8, 2),
    "Z4×Z2×Z2": lambda: abelian(4, 2, 2),
    "Z2×Z2×Z2×Z2": lambda: abelian(2, 2, 2, 2),
    "(Z4×Z2)⋊Z2": _g16_3,
    "Z4⋊Z4": lambda: metacyclic(4, 4, -1, "Z4⋊Z4"),
    "M16": lambda: metacyclic(8, 2, 5, "M16"),
    "D16": lambda: dihedral(16),
    "SD16": lambda: metacyclic(8, 2, 3, "SD16"),
    "Q16": lambda: generalized_quaternion(16),
    "D8×Z2": lambda: direct_product(dihedral(8), build_cyclic(2), label="D8×Z2"),
    "Q8×Z2": lambda: direct_product(generalized_quaternion(8), build_cyclic(2), label="Q8×Z2"),
    "Pauli": pauli,
    "Sym(4)": lambda: symmetric(4),
}


def builtin_names() -> list[str]:
    return list(_BUILDERS)


@lru_cache(maxsize=None)
def builtin_group(name: str) -> FiniteGroup:
    try:
        G = _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown built-in group {name!r}; choose from {', '.join(_BUILDERS)}") from None
    if G.label != name:
        G = FiniteGroup(G.cayley, G.identity, name)
    return G


def builtin_groups() -> dict[str, FiniteGroup]:
    return {name: builtin_group(name) for name in _BUILDERS}
