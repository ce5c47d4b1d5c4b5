"""
Checking the closed-form maps against the circuits
==================================================

The purification and swapping maps act on four numbers per pair.  Here the
same steps are run on full density matrices, gate by gate, and the
diagonal of the result is compared with the four-number version.
"""

import numpy as np

from repeatersim import NoiseModel, GraphDiagonalState, dejmps_noisy, oracle
from repeatersim.validation import equivalence_report

a = GraphDiagonalState((0.7, 0.1, 0.15, 0.05), shift=(0, 1))
b = GraphDiagonalState((0.6, 0.2, 0.1, 0.1), shift=(1, 1))
noise = NoiseModel(0.99, 0.99)

closed = dejmps_noisy(a, b, noise)
rho, prob = oracle.dm_dejmps_class(a, b, noise)
print("kept outcomes:", oracle.success_class(a.shift, b.shift))
print("success probability:", closed.success_prob, "vs", prob)
print("diagonal:", np.round(oracle.graph_diagonal(rho), 12))
print("closed:  ", np.round(oracle.graph_diagonal(oracle.dense_from_graph_diagonal(closed.state)), 12))

# The seeded grid behind the oracle-check command.
for check in equivalence_report(seed=0, cases=200):
    print(f"{check.name:<24} {check.max_deviation:.2e}")
