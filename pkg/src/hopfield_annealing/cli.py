"""Command-line front end.

Subcommands: ``spectrum``, ``recall``, ``classical``, ``bias-sweep``,
``anneal-sweep``, ``figures``. Option values resolve with the precedence
flags > config file (``--config``, JSON) > built-in defaults, and every run
echoes its effective configuration to ``<out>/config.json`` together with a
one-line provenance record, so a run can be reproduced from its own output
directory.

Exit codes: 0 success, 2 usage error, 3 numerical or convergence failure.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .ensembles import (
    DEFAULT_ENSEMBLE_SIZE,
    DEFAULT_THRESHOLD,
    anneal_time_sweep,
    bias_sweep,
    run_instance,
    write_results_csv,
)
from .evolution import (
    AnnealSchedule,
    ConvergenceError,
    DEFAULT_DT,
    evolve_batch,
    halving_convergence,
)
from .hamiltonians import (
    QubitBudgetError,
    ising_hamiltonian,
    transverse_field_hamiltonian,
)
from .instances import PROTOCOLS, ProblemInstance, generate_instance
from .learning import LEARNING_RULES, SingularCovarianceError, weights_for_rule
from .memio import (
    FIGURE_IDS,
    MemoryFileError,
    bundled_memories_path,
    emit_figure_data,
    load_memories,
    provenance_line,
    write_json_atomic,
    write_text_atomic,
)
from .network import BiasSpec, classical_update, network_energy
from .patterns import as_pattern, hadamard_memories, hamming_distance, pattern_to_index
from .spectrum import min_gap, spectrum_trace, write_spectrum_csv

__all__ = ["RunConfig", "parse_config", "main"]

COMMANDS = ("spectrum", "recall", "classical", "bias-sweep", "anneal-sweep", "figures")


@dataclass(frozen=True)
class RunConfig:
    """Effective, fully validated parameters of one CLI run."""

    command: str
    params: dict


def _float_list(text):
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    return [float(tok) for tok in str(text).replace(",", " ").split()]


def _int_list(text):
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    return [int(tok) for tok in str(text).replace(",", " ").split()]


def _pattern_text(text):
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    return [int(tok) for tok in str(text).replace(",", " ").split()]


# option name -> (argparse flag, value normalizer, help)
_OPTIONS = {
    "n": ("--n", int, "number of neurons / qubits"),
    "p": ("--p", int, "number of stored memories"),
    "rule": ("--rule", str, f"learning rule, one of {LEARNING_RULES}"),
    "gamma": ("--gamma", float, "bias energy scale"),
    "T": ("--T", float, "annealing time"),
    "dt": ("--dt", float, "propagator time step"),
    "N": ("--N", int, "instances per ensemble cell"),
    "x": ("--x", float, "success threshold on the answer probability"),
    "seed": ("--seed", int, "master seed; all randomness derives from it"),
    "protocol": ("--protocol", str, f"instance protocol, one of {PROTOCOLS}"),
    "memories": ("--memories", str, "memory-set file (see README for the format)"),
    "input": ("--input", _pattern_text, "input key, e.g. '+1,-1,+1,-1'"),
    "out": ("--out", str, "output directory"),
    "samples": ("--samples", int, "time samples for the spectrum grid"),
    "hadamard": ("--hadamard", bool, "use orthogonal Hadamard-column memories"),
    "check_dt": ("--check-dt", bool, "verify the result is stable under dt halving"),
    "mode": ("--mode", str, "update mode: synchronous or asynchronous"),
    "max_sweeps": ("--max-sweeps", int, "sweep budget for the classical dynamics"),
    "p_list": ("--p-list", _int_list, "memory counts, e.g. '1,2,3,4,5'"),
    "gamma_grid": ("--gamma-grid", _float_list, "bias grid, e.g. '0.05,0.15,0.5'"),
    "T_list": ("--T-list", _float_list, "annealing times, ascending"),
    "id": ("--id", str, f"figure id, one of {FIGURE_IDS}"),
}

_SHARED = ("n", "p", "rule", "gamma", "T", "dt", "N", "x", "seed",
           "protocol", "memories", "input", "out")

_COMMAND_PARAMS = {
    "spectrum": _SHARED + ("samples", "hadamard"),
    "recall": _SHARED + ("check_dt",),
    "classical": _SHARED + ("mode", "max_sweeps"),
    "bias-sweep": _SHARED + ("p_list", "gamma_grid"),
    "anneal-sweep": _SHARED + ("p_list", "T_list"),
    "figures": _SHARED + ("id", "p_list", "gamma_grid", "T_list", "samples"),
}

_BASE_DEFAULTS = {
    "n": None,
    "p": None,
    "rule": "hebb",
    "gamma": 0.1,
    "T": 1000.0,
    "dt": DEFAULT_DT,
    "N": DEFAULT_ENSEMBLE_SIZE,
    "x": DEFAULT_THRESHOLD,
    "seed": 0,
    "protocol": "exact",
    "memories": None,
    "input": None,
    "out": None,
    "samples": 201,
    "hadamard": False,
    "check_dt": False,
    "mode": "asynchronous",
    "max_sweeps": 100,
    "p_list": [1, 2, 3, 4, 5],
    "gamma_grid": [round(0.05 * k, 2) for k in range(0, 21)],
    "T_list": [50.0, 500.0, 5000.0],
    "id": None,
}

_COMMAND_DEFAULTS = {
    "classical": {"gamma": 0.0},
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfield-annealing",
        description="Store bipolar memories in an Ising network and recall "
                    "them by simulated quantum annealing.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        cp = sub.add_parser(command)
        cp.add_argument("--config", default=None,
                        help="JSON file of option values (flags win)")
        for name in _COMMAND_PARAMS[command]:
            flag, norm, help_text = _OPTIONS[name]
            if norm is bool:
                cp.add_argument(flag, dest=name, action="store_true", default=None,
                                help=help_text)
            else:
                cp.add_argument(flag, dest=name, type=str, default=None,
                                help=help_text)
    return parser


def _normalize(name: str, value):
    norm = _OPTIONS[name][1]
    if value is None or norm is bool:
        return value if value is not None else None
    return norm(value)


def _defaults_for(command: str) -> dict:
    params = {name: _BASE_DEFAULTS[name] for name in _COMMAND_PARAMS[command]}
    params.update(_COMMAND_DEFAULTS.get(command, {}))
    return params


def parse_config(argv) -> RunConfig:
    """Resolve argv (and an optional config file) into a validated RunConfig."""
    ns = _build_parser().parse_args(argv)
    command = ns.command
    params = _defaults_for(command)

    if ns.config is not None:
        try:
            with open(ns.config) as fh:
                file_values = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file {ns.config}: invalid JSON ({exc})")
        if not isinstance(file_values, dict):
            raise ValueError(f"config file {ns.config}: expected a JSON object")
        for key, value in file_values.items():
            if key == "command":
                if value != command:
                    raise ValueError(
                        f"config file is for command {value!r}, not {command!r}"
                    )
                continue
            if key not in params:
                raise ValueError(f"unknown config key {key!r} for command {command!r}")
            params[key] = _normalize(key, value) if value is not None else None

    for name in _COMMAND_PARAMS[command]:
        flag_value = getattr(ns, name)
        if flag_value is not None:
            params[name] = _normalize(name, flag_value)

    if params["out"] is None:
        params["out"] = f"{command}-out"
    _validate(command, params)
    return RunConfig(command=command, params=params)


def _validate(command: str, params: dict) -> None:
    def check(cond, key, why):
        if not cond:
            raise ValueError(f"--{key.replace('_', '-')}: {why}")

    check(params["rule"] in LEARNING_RULES, "rule",
          f"must be one of {LEARNING_RULES}, got {params['rule']!r}")
    check(params["protocol"] in PROTOCOLS, "protocol",
          f"must be one of {PROTOCOLS}, got {params['protocol']!r}")
    check(params["gamma"] >= 0, "gamma", f"must be non-negative, got {params['gamma']}")
    check(params["T"] > 0, "T", f"must be positive, got {params['T']}")
    check(params["dt"] > 0, "dt", f"must be positive, got {params['dt']}")
    check(params["N"] >= 1, "N", f"must be at least 1, got {params['N']}")
    check(0.0 <= params["x"] <= 1.0, "x", f"must lie in [0, 1], got {params['x']}")
    if params.get("n") is not None:
        check(params["n"] >= 1, "n", f"must be at least 1, got {params['n']}")
    if params.get("p") is not None:
        check(params["p"] >= 1, "p", f"must be at least 1, got {params['p']}")
    if "mode" in params:
        check(params["mode"] in ("synchronous", "asynchronous"), "mode",
              f"must be synchronous or asynchronous, got {params['mode']!r}")
    if "max_sweeps" in params:
        check(params["max_sweeps"] >= 1, "max_sweeps", "must be at least 1")
    if "samples" in params:
        check(params["samples"] >= 2, "samples", "must be at least 2")
    if "p_list" in params:
        check(all(p >= 1 for p in params["p_list"]), "p_list",
              "memory counts must be at least 1")
    if "gamma_grid" in params:
        check(all(0.0 <= g <= 1.0 for g in params["gamma_grid"]), "gamma_grid",
              "bias values must lie in [0, 1]")
    if "T_list" in params:
        ts = params["T_list"]
        check(all(t > 0 for t in ts) and sorted(ts) == ts, "T_list",
              "annealing times must be positive and ascending")
    if command == "figures":
        check(params["id"] in FIGURE_IDS, "id",
              f"must be one of {FIGURE_IDS}, got {params['id']!r}")


def _echo_outputs(cfg: RunConfig) -> str:
    out = cfg.params["out"]
    os.makedirs(out, exist_ok=True)
    write_json_atomic(os.path.join(out, "config.json"),
                      {"command": cfg.command, **cfg.params})
    write_text_atomic(os.path.join(out, "provenance.txt"),
                      provenance_line(cfg.params["seed"]) + "\n")
    return out


def _load_memory_set(cfg: RunConfig):
    params = cfg.params
    if params["memories"] is not None:
        mem = load_memories(params["memories"])
    elif params.get("hadamard"):
        if params["n"] is None:
            raise ValueError("--hadamard: requires --n")
        mem = hadamard_memories(params["n"], params["p"])
    else:
        mem = load_memories(bundled_memories_path())
        if params["p"] is not None:
            if not 1 <= params["p"] <= mem.shape[0]:
                raise ValueError(f"--p: bundled memory set holds {mem.shape[0]} patterns")
            mem = mem[: params["p"]]
    if params["n"] is not None and mem.shape[1] != params["n"]:
        raise ValueError(f"--n: memory set has n={mem.shape[1]}, flag says {params['n']}")
    return mem


def _bias_from(cfg: RunConfig, n: int) -> BiasSpec | None:
    if cfg.params["input"] is None:
        return None
    key = as_pattern(cfg.params["input"])
    if key.size != n:
        raise ValueError(f"--input: pattern length {key.size} does not match n={n}")
    return BiasSpec(input_key=key, gamma=cfg.params["gamma"])


def _cmd_spectrum(cfg: RunConfig) -> int:
    memories = _load_memory_set(cfg)
    n = memories.shape[1]
    weights = weights_for_rule(cfg.params["rule"], memories)
    h1 = ising_hamiltonian(weights, _bias_from(cfg, n))
    schedule = AnnealSchedule.linear(cfg.params["T"])
    trace = spectrum_trace(transverse_field_hamiltonian(n), h1, schedule,
                           cfg.params["samples"])
    out = _echo_outputs(cfg)
    path = os.path.join(out, "spectrum.csv")
    tmp = f"{path}.tmp"
    write_spectrum_csv(trace, tmp)
    os.replace(tmp, path)
    gap, t_at = min_gap(trace)
    print(f"spectrum: {trace.energies.shape[1]} levels x {trace.times.size} samples "
          f"-> {path}")
    print(f"min gap above ground manifold: {gap:.6g} at t={t_at:.6g}")
    return 0


def _explicit_instance(cfg: RunConfig) -> ProblemInstance:
    memories = _load_memory_set(cfg)
    n = memories.shape[1]
    if cfg.params["input"] is None:
        key = memories[0].copy()
    else:
        key = as_pattern(cfg.params["input"])
        if key.size != n:
            raise ValueError(f"--input: pattern length {key.size} does not match n={n}")
    dists = [hamming_distance(key, m) for m in memories]
    return ProblemInstance(
        protocol="exact",
        n=n,
        memories=memories,
        answer_index=int(np.argmin(dists)),
        input_key=key,
        rule=cfg.params["rule"],
        gamma=cfg.params["gamma"],
        anneal_time=cfg.params["T"],
        seed=cfg.params["seed"],
    )


def _cmd_recall(cfg: RunConfig) -> int:
    params = cfg.params
    if params["memories"] is None and params["n"] is not None and params["p"] is not None:
        instance = generate_instance(
            params["protocol"], params["n"], params["p"], params["rule"],
            params["gamma"], params["T"], seed=params["seed"],
        )
    else:
        instance = _explicit_instance(cfg)
    outcome = run_instance(instance, x=params["x"], dt=params["dt"])
    if params["check_dt"]:
        weights = weights_for_rule(instance.rule, instance.memories)
        h1 = ising_hamiltonian(weights, BiasSpec(instance.input_key, instance.gamma))
        halving_convergence(
            transverse_field_hamiltonian(instance.n), h1,
            AnnealSchedule.linear(instance.anneal_time),
            instance.target_pattern(), dt=params["dt"],
        )
    out = _echo_outputs(cfg)
    payload = {
        "protocol": instance.protocol,
        "rule": instance.rule,
        "n": instance.n,
        "p": instance.p,
        "gamma": instance.gamma,
        "T": instance.anneal_time,
        "answer_index": instance.answer_index,
        "input_key": instance.input_key.tolist(),
        "target": instance.target_pattern().tolist(),
        "p_ans": outcome.p_ans,
        "success": outcome.success,
        "ground_overlap": outcome.ground_overlap,
    }
    write_json_atomic(os.path.join(out, "outcome.json"), payload)
    print(f"p_ans={outcome.p_ans:.9f} success={outcome.success} "
          f"ground_overlap={outcome.ground_overlap:.9f}")
    print(f"outcome -> {os.path.join(out, 'outcome.json')}")
    return 0


def _cmd_classical(cfg: RunConfig) -> int:
    params = cfg.params
    if params["memories"] is None and params["n"] is not None and params["p"] is not None:
        instance = generate_instance(
            params["protocol"], params["n"], params["p"], params["rule"],
            params["gamma"], params["T"], seed=params["seed"],
        )
        memories, key = instance.memories, instance.input_key
    else:
        instance = _explicit_instance(cfg)
        memories, key = instance.memories, instance.input_key
    weights = weights_for_rule(params["rule"], memories)
    bias = BiasSpec(key, params["gamma"]) if params["gamma"] > 0 else None
    state, converged, sweeps = classical_update(
        key, weights, bias, mode=params["mode"],
        max_sweeps=params["max_sweeps"], seed=params["seed"],
    )
    recalled = [int(hamming_distance(state, m) == 0) for m in memories]
    out = _echo_outputs(cfg)
    payload = {
        "rule": params["rule"],
        "mode": params["mode"],
        "input_key": key.tolist(),
        "final_state": state.tolist(),
        "converged": converged,
        "sweeps": sweeps,
        "energy": network_energy(state, weights, bias),
        "is_stored_memory": int(any(recalled)),
    }
    write_json_atomic(os.path.join(out, "outcome.json"), payload)
    print(f"final state {state.tolist()} converged={converged} sweeps={sweeps}")
    return 0


def _cmd_bias_sweep(cfg: RunConfig) -> int:
    params = cfg.params
    if params["n"] is None:
        raise ValueError("--n: required for bias-sweep")
    stats = bias_sweep(
        params["protocol"], params["n"], params["p_list"], params["rule"],
        params["gamma_grid"], params["T"], count=params["N"], x=params["x"],
        dt=params["dt"], master_seed=params["seed"],
    )
    out = _echo_outputs(cfg)
    path = os.path.join(out, "results.csv")
    tmp = f"{path}.tmp"
    write_results_csv(stats, tmp)
    os.replace(tmp, path)
    print(f"{len(stats)} cells -> {path}")
    return 0


def _cmd_anneal_sweep(cfg: RunConfig) -> int:
    params = cfg.params
    if params["n"] is None:
        raise ValueError("--n: required for anneal-sweep")
    stats = anneal_time_sweep(
        params["protocol"], params["n"], params["p_list"], params["rule"],
        params["gamma"], params["T_list"], count=params["N"], x=params["x"],
        dt=params["dt"], master_seed=params["seed"],
    )
    out = _echo_outputs(cfg)
    path = os.path.join(out, "results.csv")
    tmp = f"{path}.tmp"
    write_results_csv(stats, tmp)
    os.replace(tmp, path)
    print(f"{len(stats)} cells -> {path}")
    return 0


def _bias_response(memories, answer, gammas, anneal_time, dt):
    """Recall probability of `answer` vs bias, per learning rule."""
    target = pattern_to_index(answer)
    curves = {"gamma": [float(g) for g in gammas]}
    schedule = AnnealSchedule.linear(anneal_time)
    for rule in LEARNING_RULES:
        weights = weights_for_rule(rule, memories)
        diagonals = np.stack([
            ising_hamiltonian(weights, BiasSpec(answer, float(g))).diagonal()
            for g in gammas
        ])
        states = evolve_batch(diagonals, schedule, dt)
        curves[rule] = [float(np.abs(states[i, target]) ** 2) for i in range(len(gammas))]
    return curves


_FIGURE_RULE_GAMMA = {"hebb": 0.5, "storkey": 0.15, "projection": 0.15}


def _cmd_figures(cfg: RunConfig) -> int:
    params = cfg.params
    fid = params["id"]
    n = params["n"] if params["n"] is not None else (4 if fid in ("f1", "f2") else 5)
    if fid in ("f1", "f2"):
        memories = hadamard_memories(n, params["p"])
        weights = weights_for_rule(params["rule"], memories)
        bias = BiasSpec(memories[0], 1.0) if fid == "f2" else None
        h1 = ising_hamiltonian(weights, bias)
        schedule = AnnealSchedule.linear(params["T"])
        results = spectrum_trace(transverse_field_hamiltonian(n), h1, schedule,
                                 params["samples"])
    elif fid in ("f3", "f4", "f5"):
        memories = _load_memory_set(cfg)
        p = {"f3": 1, "f4": 2, "f5": 3}[fid]
        results = _bias_response(memories[:p], memories[0], params["gamma_grid"],
                                 params["T"], params["dt"])
    elif fid in ("f6", "f7", "f8", "f9"):
        protocol = {"f6": "exact", "f7": "noisy", "f8": "failure1", "f9": "failure2"}[fid]
        results = []
        for rule in LEARNING_RULES:
            results += bias_sweep(
                protocol, n, params["p_list"], rule, params["gamma_grid"],
                params["T"], count=params["N"], x=params["x"], dt=params["dt"],
                master_seed=params["seed"],
            )
    else:  # f10
        results = []
        for rule in LEARNING_RULES:
            results += anneal_time_sweep(
                "exact", n, params["p_list"], rule, _FIGURE_RULE_GAMMA[rule],
                params["T_list"], count=params["N"], x=params["x"],
                dt=params["dt"], master_seed=params["seed"],
            )
    out = _echo_outputs(cfg)
    written = emit_figure_data(results, fid, out)
    for path in written:
        print(f"wrote {path}")
    return 0


_HANDLERS = {
    "spectrum": _cmd_spectrum,
    "recall": _cmd_recall,
    "classical": _cmd_classical,
    "bias-sweep": _cmd_bias_sweep,
    "anneal-sweep": _cmd_anneal_sweep,
    "figures": _cmd_figures,
}


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv if argv is not None else sys.argv[1:])
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    except (MemoryFileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return _HANDLERS[cfg.command](cfg)
    except (SingularCovarianceError, ConvergenceError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (MemoryFileError, QubitBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
