"""Evolving a degree sequence until every degree value is shared by at
least k nodes, while drifting as little as possible from the original.

The search is a mutation-only evolutionary loop: the population starts as
copies of the original sequence, offspring are produced by moving one unit
of degree between two positions, and a steady-state merge keeps the best
individuals. Candidates that already meet the anonymity target are scored
in (1, 2] by closeness to the original; the rest score in [0, 1) by how few
nodes violate the target and how tightly the values cluster.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence


class InfeasibleKError(ValueError):
    """The requested anonymity level cannot be satisfied for this input."""


class MutationError(RuntimeError):
    """No valid (increment, decrement) position pair exists."""


class ConvergenceError(RuntimeError):
    """The generation budget ran out before reaching the target level."""

    def __init__(self, message: str, best_k: int, best_delta: int, generations: int):
        super().__init__(message)
        self.best_k = best_k
        self.best_delta = best_delta
        self.generations = generations


@dataclass
class EvolutionParams:
    """Knobs for the sequence search. Defaults converge in seconds on
    graphs with a few hundred nodes."""

    target_k: int
    population_size: int = 100
    offspring_per_generation: int = 100
    max_generations: int = 5000
    rng_seed: int = 0

    def __post_init__(self):
        if self.target_k < 2:
            raise ValueError(f"target_k must be >= 2, got {self.target_k}")
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.offspring_per_generation < 1:
            raise ValueError("offspring_per_generation must be >= 1")
        if self.max_generations < 1:
            raise ValueError("max_generations must be >= 1")


@dataclass
class Candidate:
    """One individual: a degree sequence plus its cached score."""

    sequence: tuple[int, ...]
    fitness: float
    k_value: int
    delta: int
    serial: int


TraceHook = Callable[[int, float, int, int], None]


def anonymity_level(values: Sequence[int]) -> int:
    """Smallest number of nodes sharing any single degree value."""
    if not values:
        raise ValueError("empty degree sequence")
    return min(Counter(values).values())


def sequence_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """L1 distance between two equal-length degree sequences."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return sum(abs(x - y) for x, y in zip(a, b))


def is_graphical(values: Sequence[int]) -> bool:
    """Erdos-Gallai test: can some simple graph realize this sequence?"""
    n = len(values)
    if n == 0:
        return True
    if any(v < 0 or v > n - 1 for v in values):
        return False
    if sum(values) % 2 != 0:
        return False
    d = sorted(values, reverse=True)
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        tail = sum(min(x, k) for x in d[k:])
        if prefix > k * (k - 1) + tail:
            return False
        if d[k - 1] <= k:  # remaining inequalities cannot fail
            break
    return True


def mutate(values: Sequence[int], rng: random.Random) -> list[int]:
    """Move one unit of degree: +1 at one position, -1 at another.

    The two positions are distinct and drawn uniformly among all pairs that
    keep every value inside [0, n-1]. The sum is unchanged.
    """
    n = len(values)
    ups = [i for i, v in enumerate(values) if v < n - 1]
    downs = [j for j, v in enumerate(values) if v > 0]
    both = sum(1 for i in ups if values[i] > 0)
    if len(ups) * len(downs) - both == 0:
        raise MutationError("no valid (+1, -1) position pair")
    while True:
        i = ups[rng.randrange(len(ups))]
        j = downs[rng.randrange(len(downs))]
        if i != j:
            break
    out = list(values)
    out[i] += 1
    out[j] -= 1
    return out


def fitness(values: Sequence[int], original: Sequence[int], target_k: int) -> float:
    """Score a candidate sequence against the target anonymity level.

    Meets the target: 1 + 1/(1 + L1 distance to the original), in (1, 2].
    Misses it: the mean of two penalties in [0, 1) -- the anonymity
    deficiency (total members missing from degree classes smaller than
    target_k, scaled by its maximum n*(k-1)) and the mean absolute
    deviation from the average degree, scaled by its maximum (n-1)/2.
    """
    if len(values) != len(original):
        raise ValueError(f"length mismatch: {len(values)} vs {len(original)}")
    counts = Counter(values)
    if min(counts.values()) >= target_k:
        return 1.0 + 1.0 / (1.0 + sequence_distance(values, original))
    n = len(values)
    deficiency = sum(target_k - c for c in counts.values() if c < target_k)
    deficiency_ratio = deficiency / (n * (target_k - 1))
    mean = sum(values) / n
    dispersion = sum(abs(v - mean) for v in values) / n
    max_dispersion = (n - 1) / 2
    ratio = min(1.0, dispersion / max_dispersion) if max_dispersion > 0 else 0.0
    return 0.5 * (1.0 - deficiency_ratio) + 0.5 * (1.0 - ratio)


def evolve(
    original: Sequence[int],
    params: EvolutionParams,
    rng: random.Random | None = None,
    trace: TraceHook | None = None,
) -> list[int]:
    """Search for a k-anonymous, graphical degree sequence near the original.

    The population is seeded with copies of the original sequence. Each
    generation mutates uniformly chosen parents, scores the offspring, and
    keeps the best population_size individuals of the merged pool (ties
    broken by smaller distance, then by age). The loop stops at the first
    generation whose best candidate meets the target and passes the
    graphicality test; if the test fails the run simply continues.

    Emits (generation, best_fitness, best_k, best_delta) to the trace hook
    after each generation.
    """
    n = len(original)
    if params.target_k > n:
        raise InfeasibleKError(
            f"target k={params.target_k} exceeds node count {n}"
        )
    if anonymity_level(original) >= params.target_k:
        return list(original)
    if rng is None:
        rng = random.Random(params.rng_seed)

    base = tuple(original)
    serial = 0

    def make(seq: tuple[int, ...]) -> Candidate:
        nonlocal serial
        cand = Candidate(
            sequence=seq,
            fitness=fitness(seq, base, params.target_k),
            k_value=anonymity_level(seq),
            delta=sequence_distance(seq, base),
            serial=serial,
        )
        serial += 1
        return cand

    population = [make(base) for _ in range(params.population_size)]
    best = population[0]
    for generation in range(1, params.max_generations + 1):
        offspring = []
        for _ in range(params.offspring_per_generation):
            parent = population[rng.randrange(len(population))]
            try:
                child = mutate(parent.sequence, rng)
            except MutationError:
                continue
            offspring.append(make(tuple(child)))
        merged = population + offspring
        merged.sort(key=lambda c: (-c.fitness, c.delta, c.serial))
        population = merged[: params.population_size]
        best = population[0]
        if trace is not None:
            trace(generation, best.fitness, best.k_value, best.delta)
        if best.k_value >= params.target_k and is_graphical(best.sequence):
            return list(best.sequence)
    raise ConvergenceError(
        f"no graphical sequence with k >= {params.target_k} within "
        f"{params.max_generations} generations (best k reached: {best.k_value})",
        best_k=best.k_value,
        best_delta=best.delta,
        generations=params.max_generations,
    )
