"""
From scores to per-channel evaporation
======================================

Each channel gets its own evaporation rate. The best-scoring channel decays
at ``rho_min``; the others are spread affinely up towards ``rho_max`` in
proportion to how far their score falls short of the best.
"""

import numpy as np

from aco_handoff import baseline_scenario, derive_evaporation, derive_visibility, score_edges

scenario = baseline_scenario()
edges = scenario.graph().edges
scores = score_edges(edges, scenario.criteria)
rho = derive_evaporation(scores, scenario.criteria.rho_min, scenario.criteria.rho_max)
eta = derive_visibility(edges)

for cid, u, r, v in zip(scores.channel_ids, scores.normalized(), rho, eta):
    print(f"{cid:<6} relative score={u:.4f}  rho={r:.4f}  visibility={v:.2f}")

# %%
# With a single channel always chosen by ``n`` ants, pheromone settles at
# ``n * q * u / rho``, so a low evaporation rate is what lets the best
# channel pull ahead.
n = scenario.aco.ant_count
print("steady-state pheromone if chosen by every ant:", np.round(n * scores.normalized() / rho, 2))
