"""
Ranking candidate channels without ants
=======================================

The composite score is deterministic: normalize every criterion by its best
value across channels, multiply the benefit criteria, divide by the product
of the cost criteria. The ranking it produces is the reference the colony is
expected to agree with.
"""

from aco_handoff import baseline_scenario, normalize_criteria, composite_score, oracle_rank

scenario = baseline_scenario()
graph = scenario.graph()

# %%
# Normalized criteria, one row per channel. Speed, priority and handoff count
# come from the call and are the same on every edge, so they normalize to 1.
norm = normalize_criteria(graph.edges, scenario.criteria)
print("channel  " + "  ".join(f"{c:>6}" for c in norm.criteria))
for cid, row in zip(norm.channel_ids, norm.values):
    print(f"{cid:<8} " + "  ".join(f"{v:6.3f}" for v in row))

# %%
# Benefit and cost products, and their quotient.
scores = composite_score(norm)
for cid, b, c, s in zip(scores.channel_ids, scores.benefit_product, scores.cost_product, scores.scores):
    print(f"{cid:<6} benefit={b:.4g} cost={c:.4g} score={s:.4g}")

# %%
# The oracle ranking puts unavailable channels last regardless of score.
for entry in oracle_rank(graph.edges, scenario.criteria):
    print(entry)
