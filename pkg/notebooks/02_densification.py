"""
Densification and the phase transition at p = 1/2
=================================================

Each newcomer cites ``1 + p * (average degree)`` papers in expectation, so
the average degree settles at ``2 / (1 - 2p)`` below ``p = 1/2`` and grows
like a power of the network size above it.
"""

import numpy as np

from reforcite import grow_reforcite1
from reforcite.meanfield import avg_degree, expected_series

sizes = np.array([1_000, 5_000, 20_000, 50_000])

# %%
# Closed form, exact expectation recursion and one simulated network per size.
for p in (0.3, 0.5, 0.6):
    kbar, _ = expected_series(int(sizes[-1]), p)
    print(f"p={p}")
    print("      t   closed  recursion  simulated")
    for t in sizes:
        sim = 2 * grow_reforcite1(int(t), p, seed=int(t)).n_edges / t
        print(f"{t:7d}  {avg_degree(t, p):7.2f}  {kbar[t - 1]:9.2f}  {sim:9.2f}")

# %%
# At exactly p = 1/2 the closed form is 2 ln(t/2) - 1, one unit below the
# limit of the neighbouring branch. The recursion, and simulation, sit
# above both.
t = 10_000
print("p -> 1/2 from either side:", round(avg_degree(t, 0.5 - 1e-7), 3), round(avg_degree(t, 0.5 + 1e-7), 3))
print("value at p = 1/2:         ", round(avg_degree(t, 0.5), 3))
print("exact recursion:          ", round(expected_series(t, 0.5)[0][-1], 3))
