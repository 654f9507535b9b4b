"""Character tables from scratch.

Builds a few small groups, computes their character tables with the class
matrix method, and checks them against the closed-form constructions.
Run: python demos/01_character_tables.py
"""

import numpy as np

from charperron import burnside_table, build_from_generators, dft_table, match_tables, walsh_table
from charperron.char_table import kron_tables, tensor_multiplicities
from charperron.library import builtin_group

# Sym(3) from two generating permutations.
S3 = build_from_generators(["(1 2)", "(1 2 3)"], label="Sym(3)")
Q = burnside_table(S3)
print(Q, end="\n\n")

# The rows are orthonormal under the class-weighted inner product.
X = Q.entries
gram = (X * Q.class_sizes) @ X.conj().T / Q.order
print("row Gram matrix is the identity:", np.allclose(gram, np.eye(Q.n)))

# Abelian groups need no eigen-solve: their tables are Kronecker products of DFTs.
Z2xZ2 = builtin_group("Z2×Z2")
print("Z2×Z2 matches the 4x4 Walsh matrix:",
      match_tables(burnside_table(Z2xZ2).entries, walsh_table(4).entries) is not None)
print("Z2×Z3 matches F2 ⊗ F3:",
      match_tables(burnside_table(builtin_group("Z6")).entries,
                   kron_tables(dft_table(2), dft_table(3)).entries) is not None)

# Products of characters decompose with nonnegative integer multiplicities.
S4 = burnside_table(builtin_group("Sym(4)"))
print("\nSym(4):")
print(S4)
big = int(np.argmax(S4.degrees))
print(f"chi_{big + 1} squared =", tensor_multiplicities(S4, big, big).round(6))
