"""How much of the realizable region does a character table reach?

The stochastic spectratope of a real character table is a simplex whose
volume has a closed form in the centralizer orders and degrees.  Comparing it
with the trace-nonnegative polytope gives the fraction of spectra it reaches.
Plot data for the two 2- and 3-dimensional pictures is written to the
current directory.
Run: python demos/03_volumes_and_plot_data.py
"""

from charperron import builtin_group, burnside_table, emit_plot_data, spectratope_volume, trace_polytope_volume
from charperron.geometry import read_plot_data

for m in (1, 2, 3, 4):
    print(f"trace-nonnegative polytope, m={m}: volume {trace_polytope_volume(m, exact=True)}")

print()
for name in ("Z2", "Sym(3)", "Z2×Z2", "D8", "Sym(4)"):
    rep = spectratope_volume(burnside_table(builtin_group(name)))
    print(f"{name:7s} volume {rep.formula_value:.6g} (determinant {rep.determinant_value:.6g}), "
          f"fraction of region {rep.ratio_to_trace_polytope:.4f}")

for name, fname in (("Sym(3)", "sym3_triangle.dat"), ("Z2×Z2", "klein_tetrahedron.dat")):
    path = emit_plot_data(burnside_table(builtin_group(name)), fname)
    data = read_plot_data(path)
    print(f"\nwrote {path}: {len(data['spectratope'])} simplex vertices, "
          f"{len(data['feasible'])} feasible-region vertices")
