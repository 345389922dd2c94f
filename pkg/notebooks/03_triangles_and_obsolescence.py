"""
Triangles, diameter, h-index and the age profile of citations
=============================================================

Copying a neighbourhood closes triangles, and it spreads citations over
young and old papers more evenly than preferential attachment does.
"""

import numpy as np

from reforcite import SnapshotSchedule, grow_cp, grow_pa, grow_reforcite1
from reforcite.meanfield import expected_triangles, triangle_count
from reforcite.metrics import count_triangles, network_h_index, obsolescence_curve, snapshot_diameters

# %%
# Exact triangle counts against the closed form and the full recursion.
n = 10_000
print("   p  simulated  closed-form  recursion")
for p in (0.1, 0.3, 0.5):
    sim = np.mean([count_triangles(grow_reforcite1(n, p, seed=s)) for s in range(5)])
    print(f"{p:4}  {sim:9.0f}  {triangle_count(n, p):11.0f}  {expected_triangles(n, p):9.0f}")

# %%
# Diameter of the largest component, measured every 5000 arrivals.
g = grow_reforcite1(20_000, 0.45, seed=3)
for size, d in snapshot_diameters(g, SnapshotSchedule(5000), sample_sources=10, seed=0):
    print(f"first {size:6d} nodes: diameter {d}")
print("h-index:", network_h_index(g))

# %%
# Share of all citations held by the oldest fraction o of papers.
grid = np.array([0.01, 0.05, 0.1, 0.25, 0.5])
runs = 10
curves = {
    "PA (m=1)": lambda s: grow_pa(20_000, 1, seed=s),
    "CP (p=0.5)": lambda s: grow_cp(20_000, 0.5, seed=s),
    "RefOrCite1 (p=0.5)": lambda s: grow_reforcite1(20_000, 0.5, seed=s),
}
print("model                " + "  ".join(f"o={o:<5}" for o in grid))
for name, make in curves.items():
    r = np.mean([obsolescence_curve(make(s), grid).r for s in range(runs)], axis=0)
    print(f"{name:20s} " + "  ".join(f"{v:7.3f}" for v in r))
