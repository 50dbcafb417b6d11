"""How long must the anneal run before recall accuracy saturates?

Anneals the same seeded instances (seeds are shared across annealing times by
construction) at increasing T and watches the mean success climb to its
adiabatic plateau. The Hebb rule saturates an order of magnitude earlier than
Storkey and projection, which need slower ramps through their narrower gaps.
"""

import numpy as np

from hopfield_annealing import anneal_time_sweep

N = 20
P_VALUES = [1, 3, 5]
TIMES = [10.0, 20.0, 50.0, 100.0, 500.0, 1000.0]
SEED = 11
RULE_BIAS = {"hebb": 0.5, "storkey": 0.15, "projection": 0.15}

results = {}
for rule, gamma in RULE_BIAS.items():
    stats = anneal_time_sweep("exact", 5, P_VALUES, rule, gamma, TIMES,
                              count=N, master_seed=SEED)
    results[rule] = stats
    print(f"\n{rule} rule (gamma = {gamma}), mean success:")
    print("      T:", "  ".join(f"{t:6.0f}" for t in TIMES))
    for p in P_VALUES:
        row = [s.mean_success for s in stats if s.p == p]
        print(f"  p={p}: ", "  ".join(f"{m:6.2f}" for m in row))

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the plot")
else:
    fig, axes = plt.subplots(1, 3, figsize=(12, 3.6), sharey=True)
    for ax, (rule, stats) in zip(axes, results.items()):
        for p in P_VALUES:
            ys = [s.mean_success for s in stats if s.p == p]
            ax.semilogx(TIMES, ys, marker="o", ms=3, label=f"p={p}")
        ax.set_title(f"{rule} (gamma = {RULE_BIAS[rule]})")
        ax.set_xlabel("annealing time T")
    axes[0].set_ylabel("mean success")
    axes[0].legend()
    fig.tight_layout()
    fig.savefig("annealing_time.png", dpi=150)
    print("\nwrote annealing_time.png")
