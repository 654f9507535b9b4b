"""When is S diag(x) S^-1 entrywise nonnegative?

For a character table the answer reduces to n linear inequalities, one per
irreducible character, and every other entry is a nonnegative combination of
them.  This script prints the inequalities for Sym(3) and for the Klein four
group, tests a few points, and shows one redundancy certificate.
Run: python demos/02_cone_inequalities.py
"""

import numpy as np

from charperron import burnside_table, build_from_generators, realize, reduced_inequalities, walsh_table
from charperron.perron import format_inequality, redundancy_certificate, spectracone_membership

Q = burnside_table(build_from_generators(["(1 2)", "(1 2 3)"]))
cone = reduced_inequalities(Q)
print("Sym(3) half-spaces (classes sized", Q.class_sizes.tolist(), "):")
for row in cone.facet_coeffs:
    print("   ", format_inequality(row))

x = np.array([1.0, 0.2, -0.4])
print("\nx =", x)
print("M_x =\n", realize(Q, x).m.round(4))
print("reduced test:", cone.contains(x))
print("entrywise test:", spectracone_membership(Q, x))

# The (3,3) entry of 6 M_x is 4x1 + 2x3; it is the sum of all three facets.
c = redundancy_certificate(Q, 2, 2)
print("\n6*[M_x]_33 = sum of facets with weights", c.round(9))

H4 = walsh_table(4)
print("\nKlein four group, two test points:")
for x in ([1, -1, 1, -1], [1, 1, 1, -1]):
    print(f"   x = {x}: {reduced_inequalities(H4).contains(x)}")
