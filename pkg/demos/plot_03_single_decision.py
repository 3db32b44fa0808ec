"""
One colony decision and its pheromone trace
===========================================

Run the colony on the baseline scenario and plot pheromone and selection
probability per channel until one channel holds the convergence threshold
for the whole window.
"""

import io

import matplotlib.pyplot as plt
import numpy as np

from aco_handoff import baseline_scenario, emit_trace_csv, run_until_convergence

scenario = baseline_scenario()
report = run_until_convergence(scenario.graph(), scenario.criteria, scenario.aco)
print(f"winner={report.winner} converged_at={report.converged_at} wall={report.wall_time * 1e3:.2f} ms")

# %%
# The trace as it is written to CSV.
buf = io.StringIO()
emit_trace_csv(report, buf)
print(buf.getvalue()[:400])

# %%
tau = np.array([row.tau for row in report.trace])
prob = np.array([row.probabilities for row in report.trace])
it = [row.iteration for row in report.trace]
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
for k, cid in enumerate(report.channel_ids):
    ax1.plot(it, tau[:, k], marker="o", label=cid)
    ax2.plot(it, prob[:, k], marker="o", label=cid)
ax1.set(xlabel="iteration", ylabel="pheromone", yscale="log")
ax2.axhline(scenario.aco.convergence_threshold, ls="--", c="grey")
ax2.set(xlabel="iteration", ylabel="selection probability")
ax1.legend()
fig.tight_layout()
plt.show()
