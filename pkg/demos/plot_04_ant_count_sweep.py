"""
Convergence versus number of ants
=================================

Sweep ant counts 3 to 8 over many base seeds. The winner should not depend
on the ant count; the number of iterations to converge may.
"""

import collections
import io

import matplotlib.pyplot as plt
import numpy as np

from aco_handoff import baseline_scenario, emit_convergence_summary, run_sweep

scenario = baseline_scenario()
ants = [3, 4, 5, 6, 7, 8]

sweep = run_sweep(scenario, ants)
buf = io.StringIO()
emit_convergence_summary(sweep, buf)
print(buf.getvalue())

# %%
iterations = collections.defaultdict(list)
wall_ms = collections.defaultdict(list)
winners = collections.Counter()
for seed in range(200):
    for entry in run_sweep(scenario, ants, seed=seed).entries:
        iterations[entry.ant_count].append(entry.report.converged_at)
        wall_ms[entry.ant_count].append(entry.report.wall_time * 1e3)
        winners[entry.report.winner] += 1
print("winners over all runs:", dict(winners))

# %%
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
ax1.boxplot([iterations[n] for n in ants])
ax1.set_xticks(range(1, len(ants) + 1), ants)
ax1.set(xlabel="ants", ylabel="iterations to converge")
ax2.plot(ants, [np.median(wall_ms[n]) for n in ants], marker="o")
ax2.set(xlabel="ants", ylabel="median wall time (ms)")
fig.tight_layout()
plt.show()
