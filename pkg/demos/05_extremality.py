"""Totally extremal matrices and abelian groups.

Entries of an abelian character table are roots of unity, exactly where the
Karpelevic region of stochastic eigenvalues touches the unit circle.  The
probe checks this and identifies the abelian group whose table matches.
Run: python demos/05_extremality.py
"""

from charperron import builtin_group, burnside_table, conjecture_probe, farey, karpelevic_circle_points
from charperron.extremal import abelian_factorization

print("F_5:", " ".join(map(str, farey(5))))
print("circle points for n=4:", [f"{c.p}/{c.q}" for c in karpelevic_circle_points(4)])

for name in ("Z8", "Z4×Z2", "Z2×Z2×Z2", "Z6×Z2", "D8", "Q8"):
    G = builtin_group(name)
    rep = conjecture_probe(burnside_table(G))
    tail = f"matches {rep.matches}" if rep.all_hold else "not totally extremal"
    factors = abelian_factorization(G) if G.is_abelian else "-"
    print(f"{name:10s} primary factors {factors}: {tail}")
