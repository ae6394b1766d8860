"""Utility and re-identification metrics for comparing a graph with its
anonymized counterpart."""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from typing import Sequence

from .graph import Graph


@dataclass(frozen=True)
class CentralityVector:
    """Per-node centrality values of one kind."""

    values: tuple[float, ...]
    kind: str


@dataclass(frozen=True)
class BandFractions:
    """Fraction of nodes by re-identification risk: candidate-set sizes of
    1 (direct), 2-4 (high), 5-10 (moderate), and 11 or more (low)."""

    direct: float
    high: float
    moderate: float
    low: float


@dataclass(frozen=True)
class RiskReport:
    """Node partition under a structural signature plus its risk bands."""

    classes: tuple[tuple[int, ...], ...]
    band_fractions: BandFractions
    k_degree: int


@dataclass(frozen=True)
class MetricsReport:
    """Full comparison of an original graph and its anonymized version."""

    edge_intersection: float
    rms_betweenness: float
    rms_closeness: float
    rms_degree: float
    risk_original: RiskReport
    risk_anonymized: RiskReport
    histogram_original: dict[int, int]
    histogram_anonymized: dict[int, int]

    def to_json_dict(self) -> dict:
        def risk_dict(r: RiskReport) -> dict:
            return {
                "k_degree": r.k_degree,
                "num_classes": len(r.classes),
                "class_sizes": sorted((len(c) for c in r.classes), reverse=True),
                "band_fractions": {
                    "direct": r.band_fractions.direct,
                    "high": r.band_fractions.high,
                    "moderate": r.band_fractions.moderate,
                    "low": r.band_fractions.low,
                },
            }

        return {
            "edge_intersection": self.edge_intersection,
            "rms": {
                "betweenness": self.rms_betweenness,
                "closeness": self.rms_closeness,
                "degree": self.rms_degree,
            },
            "risk": {
                "original": risk_dict(self.risk_original),
                "anonymized": risk_dict(self.risk_anonymized),
            },
            "histograms": {
                "original": {str(d): c for d, c in self.histogram_original.items()},
                "anonymized": {str(d): c for d, c in self.histogram_anonymized.items()},
            },
        }

    def flat_row(self) -> dict[str, float | int]:
        """One flat mapping suitable for a CSV row."""
        row: dict[str, float | int] = {
            "edge_intersection": self.edge_intersection,
            "rms_betweenness": self.rms_betweenness,
            "rms_closeness": self.rms_closeness,
            "rms_degree": self.rms_degree,
            "orig_k_degree": self.risk_original.k_degree,
            "anon_k_degree": self.risk_anonymized.k_degree,
        }
        for prefix, report in (
            ("orig", self.risk_original),
            ("anon", self.risk_anonymized),
        ):
            bf = report.band_fractions
            row[f"{prefix}_direct"] = bf.direct
            row[f"{prefix}_high"] = bf.high
            row[f"{prefix}_moderate"] = bf.moderate
            row[f"{prefix}_low"] = bf.low
        return row


def edge_intersection(g: Graph, g_anon: Graph) -> float:
    """Shared edges over the larger edge count; 1.0 iff edge sets match."""
    if g.n != g_anon.n:
        raise ValueError(f"node count mismatch: {g.n} vs {g_anon.n}")
    bigger = max(g.m, g_anon.m)
    if bigger == 0:
        return 1.0
    return len(g.edges & g_anon.edges) / bigger


def _bfs_counts(g: Graph, s: int) -> tuple[list[int], list[int], list[list[int]], list[int]]:
    """BFS from s: distances (-1 unreachable), geodesic counts,
    predecessor lists, and the visit order."""
    dist = [-1] * g.n
    sigma = [0] * g.n
    preds: list[list[int]] = [[] for _ in range(g.n)]
    dist[s] = 0
    sigma[s] = 1
    order: list[int] = []
    queue = deque([s])
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in g.neighbors(v):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return dist, sigma, preds, order


def betweenness(g: Graph) -> CentralityVector:
    """Fraction of geodesics passing through each node, summed over ordered
    endpoint pairs that exclude the node itself, normalized by n^2."""
    n = g.n
    scores = [0.0] * n
    for s in range(n):
        _dist, sigma, preds, order = _bfs_counts(g, s)
        dependency = [0.0] * n
        for w in reversed(order):
            for v in preds[w]:
                dependency[v] += sigma[v] / sigma[w] * (1.0 + dependency[w])
            if w != s:
                scores[w] += dependency[w]
    norm = n * n
    return CentralityVector(tuple(x / norm for x in scores), "betweenness")


def closeness(g: Graph) -> CentralityVector:
    """Reachable-node count over the sum of distances to them (self
    included at distance 0); 0 for nodes that reach nothing else."""
    values = []
    for s in range(g.n):
        dist = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        reach = 0
        total = 0
        while queue:
            v = queue.popleft()
            reach += 1
            total += dist[v]
            for w in g.neighbors(v):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        values.append(reach / total if total > 0 else 0.0)
    return CentralityVector(tuple(values), "closeness")


def degree_centrality(g: Graph) -> CentralityVector:
    """Node degree over the total edge count; all zeros when there are no
    edges."""
    if g.m == 0:
        return CentralityVector((0.0,) * g.n, "degree")
    return CentralityVector(
        tuple(g.degree(v) / g.m for v in range(g.n)), "degree"
    )


def rms_difference(orig: CentralityVector, anon: CentralityVector) -> float:
    """Root mean square of per-node differences between two centrality
    vectors of the same kind."""
    if orig.kind != anon.kind:
        raise ValueError(f"kind mismatch: {orig.kind} vs {anon.kind}")
    if len(orig.values) != len(anon.values):
        raise ValueError(
            f"length mismatch: {len(orig.values)} vs {len(anon.values)}"
        )
    n = len(orig.values)
    if n == 0:
        return 0.0
    return math.sqrt(
        sum((a - b) ** 2 for a, b in zip(orig.values, anon.values)) / n
    )


Signature = int | tuple


def vertex_refinement(g: Graph, level: int) -> list[Signature]:
    """Iterative structural signatures: level 0 is a constant token, level 1
    is the node degree, level i is the sorted multiset of the neighbors'
    level i-1 signatures."""
    if level < 0:
        raise ValueError(f"level must be >= 0, got {level}")
    if level == 0:
        return [0] * g.n
    sigs: list[Signature] = [g.degree(v) for v in range(g.n)]
    for _ in range(level - 1):
        sigs = [tuple(sorted(sigs[u] for u in g.neighbors(v))) for v in range(g.n)]
    return sigs


def candidate_sets(g: Graph, level: int) -> list[list[int]]:
    """Equivalence classes of nodes sharing a refinement signature,
    ordered by smallest member."""
    if level < 1:
        raise ValueError(f"level must be >= 1, got {level}")
    groups: dict[Signature, list[int]] = {}
    for v, sig in enumerate(vertex_refinement(g, level)):
        groups.setdefault(sig, []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def risk_bands(classes: Sequence[Sequence[int]]) -> BandFractions:
    """Fraction of nodes in candidate sets of size 1, 2-4, 5-10, >= 11."""
    total = sum(len(c) for c in classes)
    if total == 0:
        return BandFractions(0.0, 0.0, 0.0, 0.0)
    counts = [0, 0, 0, 0]
    for c in classes:
        size = len(c)
        if size == 1:
            counts[0] += size
        elif size <= 4:
            counts[1] += size
        elif size <= 10:
            counts[2] += size
        else:
            counts[3] += size
    return BandFractions(*(c / total for c in counts))


def degree_histogram(g: Graph) -> dict[int, int]:
    """Map degree value -> number of nodes with that degree."""
    counts = Counter(g.degree(v) for v in range(g.n))
    return dict(sorted(counts.items()))


def build_risk_report(g: Graph, level: int = 1) -> RiskReport:
    """Candidate-set partition, risk bands, and smallest class size."""
    classes = candidate_sets(g, level)
    return RiskReport(
        classes=tuple(tuple(c) for c in classes),
        band_fractions=risk_bands(classes),
        k_degree=min((len(c) for c in classes), default=0),
    )


def compute_report(g: Graph, g_anon: Graph) -> MetricsReport:
    """Full metrics comparing a graph and its anonymized version, pairing
    nodes by index."""
    if g.n != g_anon.n:
        raise ValueError(f"node count mismatch: {g.n} vs {g_anon.n}")
    return MetricsReport(
        edge_intersection=edge_intersection(g, g_anon),
        rms_betweenness=rms_difference(betweenness(g), betweenness(g_anon)),
        rms_closeness=rms_difference(closeness(g), closeness(g_anon)),
        rms_degree=rms_difference(degree_centrality(g), degree_centrality(g_anon)),
        risk_original=build_risk_report(g),
        risk_anonymized=build_risk_report(g_anon),
        histogram_original=degree_histogram(g),
        histogram_anonymized=degree_histogram(g_anon),
    )
