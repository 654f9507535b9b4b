"""A unitary matrix family that is a Perron similarity but not ideal.

Dephased 4x4 complex Hadamard matrices F4(theta) contain the DFT matrix at
theta = 0.  For other angles the second row is not closed under conjugation,
so it cannot be the spectrum of a real matrix; the row cone then strictly
contains the spectracone.
Run: python demos/04_f4_counterexample.py
"""

import numpy as np

from charperron import dephased_f4_theta, is_ideal, is_perron_similarity, is_rhc, necessary_conditions

for theta in (0.0, np.pi / 5, 1.0, 2.0):
    A = dephased_f4_theta(theta)
    perron, k = is_perron_similarity(A)
    ideal, why = is_ideal(A)
    rhc, pair = is_rhc(A)
    print(f"theta = {theta:.4f}: perron={perron} (column {k}), rhc={rhc}, ideal={ideal}")
    if not ideal:
        print("   ", why)
        report = necessary_conditions(A[1])
        print("    row 2 as a spectrum:", report.failures())
