"""
Recovering model parameters from a degree distribution
======================================================

Fitting simulates the model on a grid of parameter values, with as many
nodes as the observed network, and keeps the value whose in-degree
distribution is closest in L1 distance.
"""

from reforcite import grow_reforcite1, grow_reforcite2
from reforcite.fitting import FitConfig, fit_reforcite2, fit_single_parameter, solve_p_sum
from reforcite.meanfield import avg_in_degree
from reforcite.metrics import in_degree_distribution

# %%
# A synthetic "observed" network with known p.
n = 10_000
observed = grow_reforcite1(n, 0.45, seed=11)
config = FitConfig(in_degree_distribution(observed), n, grid_step=0.05, realizations=2, seed=0)
res = fit_single_parameter("reforcite1", config)
print("best p:", res.model.p, " L1:", round(res.l1, 3))
for params, l1 in res.grid_trace[5:12]:
    print(f"  p={params.p:.2f}  L1={l1:.3f}")

# %%
# The two-parameter variant first pins p1 + p2 from the average in-degree,
# then searches along that line.
observed2 = grow_reforcite2(n, 0.6, 0.4, seed=12)
k_obs = observed2.n_edges / n
c = solve_p_sum(k_obs, n)
print(f"average in-degree {k_obs:.2f} -> p1 + p2 = {c:.3f} (prediction at c: {avg_in_degree(n, c / 2, c / 2):.2f})")
res2 = fit_reforcite2(FitConfig(in_degree_distribution(observed2), n, grid_step=0.05, realizations=2), c)
print(f"best (p1, p2): ({res2.model.p1:.2f}, {res2.model.p2:.2f})  L1: {res2.l1:.3f}")
