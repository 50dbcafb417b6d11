"""Deterministic generation of recall problem instances.

Four generation protocols, named after what the input key knows about the
stored answer:

- ``exact``:    p distinct uniform-random memories; the input key *is* the
                answer memory (Hamming distance 0).
- ``noisy``:    every non-answer memory is kept at Hamming distance >= 2 from
                the answer; the input key is the answer with one randomly
                flipped spin (Hamming distance 1), so the key is strictly
                closest to the answer.
- ``failure1``: the input key is at Hamming distance exactly 1 from the
                nearest memory but is itself not stored. Recalling the key is
                a content-addressable-memory failure, which is what this
                protocol measures.
- ``failure2``: as failure1 at distance exactly 2.

Randomness is fully reproducible: each instance owns a 64-bit seed that keys a
Philox counter-based generator, and per-instance seeds are derived from the
ensemble master seed with a SplitMix64 hash over the labelled run coordinates
(protocol, p, bias-grid index, time index, instance index). Both the hash and
the generator are part of the package's reproducibility contract.
"""

from dataclasses import dataclass

import numpy as np

from .learning import LEARNING_RULES, covariance_matrix, _COND_LIMIT
from .patterns import as_memory_set, as_pattern, hamming_distance, random_pattern

__all__ = [
    "PROTOCOLS",
    "ProblemInstance",
    "derive_seed",
    "instance_rng",
    "generate_exact_instance",
    "generate_noisy_instance",
    "generate_failure_instance",
    "generate_instance",
    "REJECTION_CAP",
]

PROTOCOLS = ("exact", "noisy", "failure1", "failure2")

# attempts allowed per rejection-sampling loop before declaring infeasibility
REJECTION_CAP = 10_000

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    """One SplitMix64 scrambling round (public-domain constants)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(
    master_seed: int,
    protocol: str,
    p: int,
    gamma_index: int = 0,
    time_index: int = 0,
    instance_index: int = 0,
) -> int:
    """64-bit per-instance seed mixed from the run coordinates.

    The fields are folded into a SplitMix64 chain in a fixed order, so any
    run with the same coordinates regenerates the same instance stream.
    Annealing-time sweeps pass time_index=0 for every T on purpose: the same
    instances are reused so curves differ only by annealing time.
    """
    if protocol not in PROTOCOLS:
        raise ValueError(f"unknown protocol {protocol!r}; choose from {PROTOCOLS}")
    acc = _splitmix64(master_seed & _MASK64)
    for field in (PROTOCOLS.index(protocol), p, gamma_index, time_index, instance_index):
        acc = _splitmix64(acc ^ (field & _MASK64))
    return acc


def instance_rng(seed: int) -> np.random.Generator:
    """Counter-based generator (Philox) keyed by a 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=seed & _MASK64))


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """One fully specified recall run."""

    protocol: str
    n: int
    memories: np.ndarray
    answer_index: int
    input_key: np.ndarray
    rule: str
    gamma: float
    anneal_time: float
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "memories", as_memory_set(self.memories))
        object.__setattr__(self, "input_key", as_pattern(self.input_key))
        if self.memories.shape[1] != self.n:
            raise ValueError(
                f"memories have length {self.memories.shape[1]}, expected n={self.n}"
            )
        if self.input_key.size != self.n:
            raise ValueError(
                f"input key has length {self.input_key.size}, expected n={self.n}"
            )
        if not 0 <= self.answer_index < self.memories.shape[0]:
            raise ValueError(
                f"answer_index {self.answer_index} out of range for p={self.memories.shape[0]}"
            )
        if self.protocol not in PROTOCOLS:
            raise ValueError(f"unknown protocol {self.protocol!r}; choose from {PROTOCOLS}")

    @property
    def p(self) -> int:
        return self.memories.shape[0]

    @property
    def answer(self) -> np.ndarray:
        return self.memories[self.answer_index]

    def target_pattern(self) -> np.ndarray:
        """Pattern whose recall probability defines this instance's score.

        The stored answer for exact/noisy runs; the (non-stored) input key for
        the failure protocols, where recalling the key means the memory failed.
        """
        if self.protocol in ("failure1", "failure2"):
            return self.input_key
        return self.answer


def _validate_request(n: int, p: int, rule: str, gamma: float, anneal_time: float) -> None:
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if not 1 <= p <= 1 << (n - 1):
        raise ValueError(f"p={p} infeasible for n={n} (need 1 <= p <= 2^(n-1))")
    if rule not in LEARNING_RULES:
        raise ValueError(f"unknown learning rule {rule!r}; choose from {LEARNING_RULES}")
    if gamma < 0:
        raise ValueError(f"gamma must be non-negative, got {gamma}")
    if anneal_time <= 0:
        raise ValueError(f"anneal_time must be positive, got {anneal_time}")


def _draw_distinct(rng, n, count, taken, predicate=None):
    """Rejection-sample `count` patterns distinct from each other and `taken`."""
    out = []
    seen = {tuple(t) for t in taken}
    for _ in range(count):
        for attempt in range(REJECTION_CAP):
            cand = random_pattern(n, rng)
            key = tuple(cand)
            if key in seen:
                continue
            if predicate is not None and not predicate(cand):
                continue
            out.append(cand)
            seen.add(key)
            break
        else:
            raise ValueError(
                f"could not draw a feasible pattern in {REJECTION_CAP} attempts"
            )
    return out


def _usable_memory_set(memories: np.ndarray, rule: str) -> bool:
    # the projection rule cannot store linearly dependent memories; ensembles
    # for that rule draw sets with invertible covariance
    if rule != "projection":
        return True
    cond = np.linalg.cond(covariance_matrix(memories))
    return bool(np.isfinite(cond) and cond <= _COND_LIMIT)


def generate_exact_instance(
    n: int, p: int, rule: str, gamma: float, anneal_time: float, seed: int
) -> ProblemInstance:
    """Exact-input protocol: the key equals the chosen answer memory."""
    _validate_request(n, p, rule, gamma, anneal_time)
    rng = instance_rng(seed)
    for _ in range(REJECTION_CAP):
        memories = np.stack(_draw_distinct(rng, n, p, taken=[]))
        if _usable_memory_set(memories, rule):
            break
    else:
        raise ValueError("could not draw a usable memory set (covariance singular)")
    answer_index = int(rng.integers(p))
    return ProblemInstance(
        protocol="exact",
        n=n,
        memories=memories,
        answer_index=answer_index,
        input_key=memories[answer_index].copy(),
        rule=rule,
        gamma=gamma,
        anneal_time=anneal_time,
        seed=seed,
    )


def generate_noisy_instance(
    n: int, p: int, rule: str, gamma: float, anneal_time: float, seed: int
) -> ProblemInstance:
    """Noisy-input protocol: key at distance 1, other memories at distance >= 2."""
    _validate_request(n, p, rule, gamma, anneal_time)
    rng = instance_rng(seed)
    for _ in range(REJECTION_CAP):
        answer = random_pattern(n, rng)
        others = _draw_distinct(
            rng, n, p - 1, taken=[answer],
            predicate=lambda z: hamming_distance(z, answer) >= 2,
        )
        memories = np.stack([answer] + others)
        if _usable_memory_set(memories, rule):
            break
    else:
        raise ValueError("could not draw a usable memory set (covariance singular)")
    input_key = memories[0].copy()
    input_key[rng.integers(n)] *= -1
    return ProblemInstance(
        protocol="noisy",
        n=n,
        memories=memories,
        answer_index=0,
        input_key=input_key,
        rule=rule,
        gamma=gamma,
        anneal_time=anneal_time,
        seed=seed,
    )


def generate_failure_instance(
    n: int, p: int, rule: str, gamma: float, anneal_time: float, seed: int,
    distance: int,
) -> ProblemInstance:
    """Failure protocol: key at Hamming distance exactly `distance` (1 or 2)
    from the nearest memory, so it is never stored itself."""
    if distance not in (1, 2):
        raise ValueError(f"distance must be 1 or 2, got {distance}")
    _validate_request(n, p, rule, gamma, anneal_time)
    rng = instance_rng(seed)
    for _ in range(REJECTION_CAP):
        memories = np.stack(_draw_distinct(rng, n, p, taken=[]))
        if _usable_memory_set(memories, rule):
            break
    else:
        raise ValueError("could not draw a usable memory set (covariance singular)")
    for _ in range(REJECTION_CAP):
        key = random_pattern(n, rng)
        dists = [hamming_distance(key, m) for m in memories]
        if min(dists) == distance:
            break
    else:
        raise ValueError(
            f"could not place an input key at distance {distance} "
            f"in {REJECTION_CAP} attempts"
        )
    return ProblemInstance(
        protocol=f"failure{distance}",
        n=n,
        memories=memories,
        answer_index=int(np.argmin(dists)),
        input_key=key,
        rule=rule,
        gamma=gamma,
        anneal_time=anneal_time,
        seed=seed,
    )


def generate_instance(
    protocol: str, n: int, p: int, rule: str, gamma: float, anneal_time: float, seed: int
) -> ProblemInstance:
    """Generate an instance for any named protocol."""
    if protocol == "exact":
        return generate_exact_instance(n, p, rule, gamma, anneal_time, seed)
    if protocol == "noisy":
        return generate_noisy_instance(n, p, rule, gamma, anneal_time, seed)
    if protocol in ("failure1", "failure2"):
        return generate_failure_instance(
            n, p, rule, gamma, anneal_time, seed, distance=int(protocol[-1])
        )
    raise ValueError(f"unknown protocol {protocol!r}; choose from {PROTOCOLS}")
