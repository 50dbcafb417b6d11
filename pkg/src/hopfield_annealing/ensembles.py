"""Recall experiments: single runs, seeded ensembles, and parameter sweeps.

A run scores the probability P_ans that the final annealed state collapses to
its target pattern. The binary success indicator f_x = [P_ans >= x] (default
threshold x = 2/3) is averaged over an ensemble of N independently generated
instances; the ensemble mean is a binomial parameter, so the reported variance
is exactly mean * (1 - mean).

Instances inside an ensemble share the register size and schedule, so their
quantum evolutions run as one batch (see `evolution.evolve_batch`). Cells of a
sweep are independent of each other and of execution order: every instance
seed is derived from (master seed, protocol, p, bias index, time index,
instance index) alone.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .evolution import AnnealSchedule, evolve_batch, DEFAULT_DT
from .hamiltonians import ising_hamiltonian, ground_state_mass
from .instances import ProblemInstance, derive_seed, generate_instance
from .learning import weights_for_rule
from .network import BiasSpec
from .patterns import pattern_to_index

__all__ = [
    "DEFAULT_THRESHOLD",
    "DEFAULT_ENSEMBLE_SIZE",
    "success_indicator",
    "RecallOutcome",
    "EnsembleStats",
    "run_instance",
    "run_ensemble",
    "bias_sweep",
    "anneal_time_sweep",
    "write_results_csv",
    "RESULTS_HEADER",
]

DEFAULT_THRESHOLD = 2.0 / 3.0
DEFAULT_ENSEMBLE_SIZE = 100

RESULTS_HEADER = [
    "protocol", "rule", "n", "p", "gamma", "T", "N", "x",
    "mean_success", "variance", "master_seed",
]


def success_indicator(p_ans: float, x: float = DEFAULT_THRESHOLD) -> int:
    """1 when the answer probability reaches the threshold x, else 0."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"threshold x must lie in [0, 1], got {x}")
    return 1 if p_ans >= x else 0


@dataclass(frozen=True)
class RecallOutcome:
    """Score of one recall run."""

    p_ans: float
    success: int
    ground_overlap: float
    instance: ProblemInstance


@dataclass(frozen=True)
class EnsembleStats:
    """Mean success of one ensemble cell with its binomial variance."""

    protocol: str
    rule: str
    n: int
    p: int
    gamma: float
    anneal_time: float
    count: int
    threshold: float
    mean_success: float
    variance: float
    master_seed: int

    @property
    def sigma(self) -> float:
        """Binomial standard error of the reported mean."""
        return float(np.sqrt(self.variance / self.count))


def _instance_hamiltonian(instance: ProblemInstance):
    weights = weights_for_rule(instance.rule, instance.memories)
    bias = BiasSpec(input_key=instance.input_key, gamma=instance.gamma)
    return ising_hamiltonian(weights, bias)


def run_instance(
    instance: ProblemInstance,
    x: float = DEFAULT_THRESHOLD,
    dt: float = DEFAULT_DT,
) -> RecallOutcome:
    """Anneal one instance and score the recall probability of its target."""
    h1 = _instance_hamiltonian(instance)
    schedule = AnnealSchedule.linear(instance.anneal_time)
    psi = evolve_batch(h1.diagonal()[None, :], schedule, dt)[0]
    p_ans = float(np.abs(psi[pattern_to_index(instance.target_pattern())]) ** 2)
    return RecallOutcome(
        p_ans=p_ans,
        success=success_indicator(p_ans, x),
        ground_overlap=ground_state_mass(psi, h1),
        instance=instance,
    )


def _ensemble_cell(
    protocol: str,
    n: int,
    p: int,
    rule: str,
    gamma: float,
    anneal_time: float,
    count: int,
    x: float,
    dt: float,
    master_seed: int,
    gamma_index: int,
    time_index: int,
) -> EnsembleStats:
    instances = [
        generate_instance(
            protocol, n, p, rule, gamma, anneal_time,
            seed=derive_seed(master_seed, protocol, p, gamma_index, time_index, i),
        )
        for i in range(count)
    ]
    diagonals = np.stack([_instance_hamiltonian(inst).diagonal() for inst in instances])
    schedule = AnnealSchedule.linear(anneal_time)
    states = evolve_batch(diagonals, schedule, dt)
    targets = [pattern_to_index(inst.target_pattern()) for inst in instances]
    p_ans = np.abs(states[np.arange(count), targets]) ** 2
    successes = np.fromiter(
        (success_indicator(float(q), x) for q in p_ans), dtype=float, count=count
    )
    mean = float(successes.mean())
    return EnsembleStats(
        protocol=protocol,
        rule=rule,
        n=n,
        p=p,
        gamma=gamma,
        anneal_time=anneal_time,
        count=count,
        threshold=x,
        mean_success=mean,
        variance=mean * (1.0 - mean),
        master_seed=master_seed,
    )


def run_ensemble(
    protocol: str,
    n: int,
    p: int,
    rule: str,
    gamma: float,
    anneal_time: float,
    count: int = DEFAULT_ENSEMBLE_SIZE,
    x: float = DEFAULT_THRESHOLD,
    dt: float = DEFAULT_DT,
    master_seed: int = 0,
) -> EnsembleStats:
    """Average recall success over `count` seeded instances."""
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}")
    return _ensemble_cell(
        protocol, n, p, rule, gamma, anneal_time, count, x, dt, master_seed,
        gamma_index=0, time_index=0,
    )


def bias_sweep(
    protocol: str,
    n: int,
    p_list,
    rule: str,
    gamma_grid,
    anneal_time: float,
    count: int = DEFAULT_ENSEMBLE_SIZE,
    x: float = DEFAULT_THRESHOLD,
    dt: float = DEFAULT_DT,
    master_seed: int = 0,
) -> list[EnsembleStats]:
    """One ensemble per (p, gamma) cell; instances re-sampled per cell."""
    gamma_grid = [float(g) for g in gamma_grid]
    if any(not 0.0 <= g <= 1.0 for g in gamma_grid):
        raise ValueError("gamma grid values must lie in [0, 1]")
    results = []
    for p in p_list:
        for gi, gamma in enumerate(gamma_grid):
            results.append(
                _ensemble_cell(
                    protocol, n, int(p), rule, gamma, anneal_time, count, x, dt,
                    master_seed, gamma_index=gi, time_index=0,
                )
            )
    return results


def anneal_time_sweep(
    protocol: str,
    n: int,
    p_list,
    rule: str,
    gamma: float,
    time_list,
    count: int = DEFAULT_ENSEMBLE_SIZE,
    x: float = DEFAULT_THRESHOLD,
    dt: float = DEFAULT_DT,
    master_seed: int = 0,
) -> list[EnsembleStats]:
    """One ensemble per (p, T) cell.

    Instance seeds deliberately ignore the position of T in the list, so the
    exact same instances are annealed at every T and the curves differ only by
    annealing time.
    """
    time_list = [float(t) for t in time_list]
    if any(t <= 0 for t in time_list) or sorted(time_list) != time_list:
        raise ValueError("time_list must be positive and ascending")
    results = []
    for p in p_list:
        for anneal_time in time_list:
            results.append(
                _ensemble_cell(
                    protocol, n, int(p), rule, gamma, anneal_time, count, x, dt,
                    master_seed, gamma_index=0, time_index=0,
                )
            )
    return results


def _sort_key(s: EnsembleStats):
    return (s.protocol, s.rule, s.n, s.p, s.gamma, s.anneal_time, s.count, s.threshold)


def write_results_csv(stats, path) -> None:
    """Deterministic results table, one row per cell, sorted by its keys."""
    rows = sorted(stats, key=_sort_key)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULTS_HEADER)
        for s in rows:
            writer.writerow([
                s.protocol, s.rule, s.n, s.p,
                f"{s.gamma:.17g}", f"{s.anneal_time:.17g}",
                s.count, f"{s.threshold:.17g}",
                f"{s.mean_success:.17g}", f"{s.variance:.17g}",
                s.master_seed,
            ])
