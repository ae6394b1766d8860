"""Edge rotations that drive a graph's degree sequence to a target.

A rotation replaces edge (p, q) with (p, r): node q loses one incident
edge, node r gains one, and the pivot p keeps its degree. Rotations are
applied to a working copy until the degree sequence equals the target;
the original graph is never modified.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .evolution import anonymity_level, is_graphical
from .graph import Graph, degree_sequence


class ReconstructionError(RuntimeError):
    """No rotation sequence reached the target within the retry budget."""


@dataclass
class AnonymizationResult:
    """Outcome of realizing a target degree sequence on a graph."""

    graph: Graph
    achieved_k: int
    delta: int
    rotations_applied: int
    rng_seed: int | None = None


def difference_vector(d_orig: Sequence[int], d_target: Sequence[int]) -> list[int]:
    """Per-node degree surplus: positive entries must lose edges, negative
    entries must gain them. Requires equal lengths and equal sums."""
    if len(d_orig) != len(d_target):
        raise ValueError(f"length mismatch: {len(d_orig)} vs {len(d_target)}")
    if sum(d_orig) != sum(d_target):
        raise ValueError(
            f"sum mismatch: {sum(d_orig)} vs {sum(d_target)} "
            "(target sequence must preserve the edge count)"
        )
    return [a - b for a, b in zip(d_orig, d_target)]


def _rotation_options(
    adj: list[set[int]], q: int, deficit: list[int]
) -> dict[int, list[int]]:
    """Valid (r -> pivots) choices for surplus node q: pivot p is a
    neighbor of q, p != r, and (p, r) is not an edge."""
    options: dict[int, list[int]] = {}
    for r in deficit:
        pivots = [p for p in sorted(adj[q]) if p != r and r not in adj[p]]
        if pivots:
            options[r] = pivots
    return options


def apply_edge_rotations(
    g: Graph,
    d_target: Sequence[int],
    rng: random.Random | None = None,
    max_retries: int = 50,
    seed: int | None = None,
) -> AnonymizationResult:
    """Rotate edges until the graph's degree sequence equals d_target.

    Each step draws a surplus node q, a deficit node r, and a pivot p, each
    uniformly among the currently valid options, then replaces (p, q) with
    (p, r). Nodes stay eligible until their whole surplus or deficit is
    consumed. A step with no valid triple is a dead end: the run restarts
    from the original graph with fresh randomness, up to max_retries times.
    """
    d_orig = degree_sequence(g)
    deltas0 = difference_vector(d_orig, d_target)
    if not is_graphical(d_target):
        raise ValueError("target degree sequence is not graphical")
    if rng is None:
        rng = random.Random(seed)
    delta = sum(abs(x) for x in deltas0)
    achieved_k = anonymity_level(d_target) if g.n else 0
    if delta == 0:
        return AnonymizationResult(g, achieved_k, 0, 0, seed)

    for _attempt in range(max_retries + 1):
        edges = set(g.edges)
        adj = [set(g.neighbors(v)) for v in range(g.n)]
        deltas = list(deltas0)
        surplus = sorted(i for i in range(g.n) if deltas[i] > 0)
        deficit = sorted(i for i in range(g.n) if deltas[i] < 0)
        rotations = 0
        while surplus:
            # Uniform draw over surplus nodes that still admit a rotation:
            # sample, discard invalid candidates, resample.
            pool = list(surplus)
            options: dict[int, list[int]] = {}
            while pool:
                idx = rng.randrange(len(pool))
                q = pool[idx]
                options = _rotation_options(adj, q, deficit)
                if options:
                    break
                pool.pop(idx)
            if not options:
                break  # dead end; restart from scratch
            targets = sorted(options)
            r = targets[rng.randrange(len(targets))]
            pivots = options[r]
            p = pivots[rng.randrange(len(pivots))]

            edges.discard((p, q) if p < q else (q, p))
            edges.add((p, r) if p < r else (r, p))
            adj[q].remove(p)
            adj[p].remove(q)
            adj[p].add(r)
            adj[r].add(p)
            rotations += 1
            deltas[q] -= 1
            if deltas[q] == 0:
                surplus.remove(q)
            deltas[r] += 1
            if deltas[r] == 0:
                deficit.remove(r)
        else:
            result = g.with_edges(edges)
            return AnonymizationResult(result, achieved_k, delta, rotations, seed)
    raise ReconstructionError(
        f"no rotation sequence reached the target degree sequence after "
        f"{max_retries + 1} attempts"
    )
