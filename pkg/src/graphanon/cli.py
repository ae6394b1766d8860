"""Command-line front end: anonymize, evaluate, risk, experiment.

Exit codes: 0 success, 2 parse/input error, 3 infeasible k, 4 convergence
failure, 5 reconstruction failure.

All result files are deterministic for a fixed configuration and seed;
wall-clock timings go to a separate timings.csv so the main CSVs stay
byte-identical across reruns.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import statistics
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .datasets import DatasetError, available, load_dataset
from .evolution import (
    ConvergenceError,
    EvolutionParams,
    InfeasibleKError,
    anonymity_level,
    evolve,
)
from .graph import (
    Graph,
    ParseError,
    ValidationError,
    degree_sequence,
    parse_edge_list,
    parse_gml,
    serialize_edge_list,
)
from .metrics import MetricsReport, build_risk_report, compute_report, degree_histogram
from .rewire import AnonymizationResult, ReconstructionError, apply_edge_rotations

RESULT_COLUMNS = [
    "dataset",
    "k",
    "seed",
    "status",
    "achieved_k",
    "delta",
    "edge_intersection",
    "rms_betweenness",
    "rms_closeness",
    "rms_degree",
    "band_direct",
    "band_high",
    "band_moderate",
    "band_low",
]

SUMMARY_COLUMNS = [
    "dataset",
    "k",
    "runs",
    "ok_runs",
    "median_delta",
    "median_edge_intersection",
    "median_rms_betweenness",
    "median_rms_closeness",
    "median_rms_degree",
]


@dataclass
class RunConfig:
    """One batch-experiment configuration."""

    dataset: str
    graph: Graph
    ks: list[int]
    repetitions: int
    master_seed: int
    population_size: int = 100
    offspring_per_generation: int = 100
    max_generations: int = 5000
    max_retries: int = 50

    def __post_init__(self):
        if not self.ks or any(k < 2 for k in self.ks):
            raise ValueError("k values must be a nonempty list of integers >= 2")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


def derive_seed(master_seed: int, k: int, repetition: int) -> int:
    """Per-run seed from the master seed: seed the stdlib generator with
    the string 'master:k:repetition' and draw 63 bits. Stable across
    platforms, so any row of an experiment can be reproduced alone."""
    return random.Random(f"{master_seed}:{k}:{repetition}").getrandbits(63)


def anonymize_graph(
    g: Graph,
    target_k: int,
    seed: int,
    population_size: int = 100,
    offspring_per_generation: int = 100,
    max_generations: int = 5000,
    max_retries: int = 50,
    trace=None,
) -> AnonymizationResult:
    """Full pipeline on one graph: evolve the degree sequence, then realize
    it with edge rotations. A single seeded stream drives both steps."""
    if target_k < 2:
        raise InfeasibleKError(
            f"k={target_k} is vacuous: every graph satisfies it"
        )
    params = EvolutionParams(
        target_k=target_k,
        population_size=population_size,
        offspring_per_generation=offspring_per_generation,
        max_generations=max_generations,
        rng_seed=seed,
    )
    rng = random.Random(seed)
    target = evolve(degree_sequence(g), params, rng=rng, trace=trace)
    return apply_edge_rotations(g, target, rng=rng, max_retries=max_retries, seed=seed)


def _load_graph(path: str, fmt: str | None) -> Graph:
    if fmt is None:
        fmt = "gml" if path.lower().endswith(".gml") else "edgelist"
    text = Path(path).read_text(encoding="utf-8")
    if fmt == "gml":
        return parse_gml(text)
    return parse_edge_list(text)


def _align_by_labels(g_orig: Graph, g_anon: Graph) -> Graph:
    """Re-index the second graph so equal labels sit at equal indices.
    Falls back to index pairing when the label sets do not match or are
    not unique."""
    if g_orig.labels == g_anon.labels:
        return g_anon
    if sorted(g_orig.labels) != sorted(g_anon.labels):
        return g_anon
    if len(set(g_orig.labels)) != g_orig.n:
        return g_anon
    pos = {lab: i for i, lab in enumerate(g_orig.labels)}
    mapping = [pos[lab] for lab in g_anon.labels]
    edges = [(mapping[u], mapping[v]) for u, v in g_anon.edges]
    return Graph(g_anon.n, edges, g_orig.labels)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _write_histogram(path: Path, hist: dict[int, int]) -> None:
    _write_csv(path, ["degree", "count"], [[d, c] for d, c in hist.items()])


def _metrics_csv_row(report: MetricsReport) -> tuple[list[str], list]:
    row = report.flat_row()
    return list(row), [row[k] for k in row]


def cmd_anonymize(args: argparse.Namespace) -> int:
    g = _load_graph(args.input, args.format)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.input).stem

    trace_rows: list[list] = []
    hook = (
        (lambda gen, fit, k, delta: trace_rows.append([gen, fit, k, delta]))
        if args.trace
        else None
    )
    result = anonymize_graph(
        g,
        args.k,
        args.seed,
        population_size=args.population,
        offspring_per_generation=args.offspring,
        max_generations=args.max_generations,
        max_retries=args.max_retries,
        trace=hook,
    )
    if args.trace:
        _write_csv(
            Path(args.trace),
            ["generation", "best_fitness", "best_k", "best_delta"],
            trace_rows,
        )

    graph_path = out_dir / f"{stem}_k{args.k}_seed{args.seed}.edgelist"
    graph_path.write_text(serialize_edge_list(result.graph), encoding="utf-8")
    summary = {
        "input": args.input,
        "nodes": g.n,
        "edges": g.m,
        "k_requested": args.k,
        "achieved_k": result.achieved_k,
        "delta": result.delta,
        "rotations_applied": result.rotations_applied,
        "seed": args.seed,
        "generations": len(trace_rows) if args.trace else None,
        "population_size": args.population,
        "offspring_per_generation": args.offspring,
        "max_generations": args.max_generations,
        "max_retries": args.max_retries,
        "output_graph": graph_path.name,
    }
    json_path = out_dir / f"{stem}_k{args.k}_seed{args.seed}.json"
    _write_json(json_path, summary)
    print(
        f"anonymized {args.input}: k={result.achieved_k} delta={result.delta} "
        f"rotations={result.rotations_applied} -> {graph_path}"
    )
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    g = _load_graph(args.original, args.format)
    g_anon = _load_graph(args.anonymized, args.format)
    if g.n != g_anon.n:
        raise ValidationError(
            f"node count mismatch: {g.n} vs {g_anon.n}; "
            "per-node comparison is undefined"
        )
    g_anon = _align_by_labels(g, g_anon)
    report = compute_report(g, g_anon)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_json(out_dir / "metrics.json", report.to_json_dict())
    header, row = _metrics_csv_row(report)
    _write_csv(out_dir / "metrics.csv", header, [row])
    _write_histogram(out_dir / "hist_original.csv", report.histogram_original)
    _write_histogram(out_dir / "hist_anonymized.csv", report.histogram_anonymized)
    print(
        f"edge_intersection={report.edge_intersection:.4f} "
        f"rms_betweenness={report.rms_betweenness:.6f} "
        f"rms_closeness={report.rms_closeness:.6f} "
        f"rms_degree={report.rms_degree:.6f}"
    )
    return 0


def cmd_risk(args: argparse.Namespace) -> int:
    g = _load_graph(args.input, args.format)
    if args.max_level < 1:
        raise ValueError("--max-level must be >= 1")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    band_rows: list[list] = []
    size_rows: list[list] = []
    for level in range(1, args.max_level + 1):
        rep = build_risk_report(g, level)
        bf = rep.band_fractions
        band_rows.append(
            [
                level,
                len(rep.classes),
                rep.k_degree,
                bf.direct,
                bf.high,
                bf.moderate,
                bf.low,
            ]
        )
        sizes: dict[int, int] = {}
        for cls in rep.classes:
            sizes[len(cls)] = sizes.get(len(cls), 0) + 1
        for size in sorted(sizes):
            size_rows.append([level, size, sizes[size]])
        print(
            f"level {level}: classes={len(rep.classes)} min_size={rep.k_degree} "
            f"direct={bf.direct:.4f} high={bf.high:.4f} "
            f"moderate={bf.moderate:.4f} low={bf.low:.4f}"
        )
    _write_csv(
        out_dir / "risk.csv",
        ["level", "num_classes", "min_class_size", "direct", "high", "moderate", "low"],
        band_rows,
    )
    _write_csv(
        out_dir / "risk_class_sizes.csv",
        ["level", "class_size", "num_classes"],
        size_rows,
    )
    return 0


def run_experiment(config: RunConfig) -> tuple[list[list], list[list], list[list], dict[int, dict[int, int]]]:
    """Run the full pipeline for every (k, repetition) pair.

    Returns result rows, summary rows, timing rows, and one anonymized
    degree histogram per k (from the first successful repetition).
    """
    rows: list[list] = []
    timing_rows: list[list] = []
    summary_rows: list[list] = []
    histograms: dict[int, dict[int, int]] = {}
    for k in config.ks:
        ok_rows: list[dict] = []
        for rep in range(config.repetitions):
            seed = derive_seed(config.master_seed, k, rep)
            start = time.perf_counter()
            status = "ok"
            try:
                result = anonymize_graph(
                    config.graph,
                    k,
                    seed,
                    population_size=config.population_size,
                    offspring_per_generation=config.offspring_per_generation,
                    max_generations=config.max_generations,
                    max_retries=config.max_retries,
                )
            except ConvergenceError:
                status = "convergence_failure"
            except ReconstructionError:
                status = "reconstruction_failure"
            wall = time.perf_counter() - start
            timing_rows.append([config.dataset, k, seed, f"{wall:.6f}"])
            if status != "ok":
                rows.append(
                    [config.dataset, k, seed, status] + [""] * (len(RESULT_COLUMNS) - 4)
                )
                continue
            report = compute_report(config.graph, result.graph)
            bf = report.risk_anonymized.band_fractions
            row = {
                "achieved_k": result.achieved_k,
                "delta": result.delta,
                "edge_intersection": report.edge_intersection,
                "rms_betweenness": report.rms_betweenness,
                "rms_closeness": report.rms_closeness,
                "rms_degree": report.rms_degree,
            }
            rows.append(
                [
                    config.dataset,
                    k,
                    seed,
                    status,
                    result.achieved_k,
                    result.delta,
                    report.edge_intersection,
                    report.rms_betweenness,
                    report.rms_closeness,
                    report.rms_degree,
                    bf.direct,
                    bf.high,
                    bf.moderate,
                    bf.low,
                ]
            )
            ok_rows.append(row)
            if k not in histograms:
                histograms[k] = degree_histogram(result.graph)
        summary_rows.append(
            [
                config.dataset,
                k,
                config.repetitions,
                len(ok_rows),
            ]
            + (
                [
                    statistics.median(r["delta"] for r in ok_rows),
                    statistics.median(r["edge_intersection"] for r in ok_rows),
                    statistics.median(r["rms_betweenness"] for r in ok_rows),
                    statistics.median(r["rms_closeness"] for r in ok_rows),
                    statistics.median(r["rms_degree"] for r in ok_rows),
                ]
                if ok_rows
                else ["", "", "", "", ""]
            )
        )
    return rows, summary_rows, timing_rows, histograms


def _parse_k_range(spec: str) -> list[int]:
    if ".." in spec:
        lo_text, hi_text = spec.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise ValueError(f"empty k range {spec!r}")
        return list(range(lo, hi + 1))
    return [int(spec)]


def cmd_experiment(args: argparse.Namespace) -> int:
    if (args.dataset is None) == (args.input is None):
        raise ValueError("provide exactly one of --dataset or --input")
    if args.dataset is not None:
        name = args.dataset
        g = load_dataset(name)
    else:
        name = Path(args.input).stem
        g = _load_graph(args.input, args.format)
    if args.k_range:
        ks = _parse_k_range(args.k_range)
    elif args.k:
        ks = [args.k]
    else:
        raise ValueError("provide --k or --k-range")
    config = RunConfig(
        dataset=name,
        graph=g,
        ks=ks,
        repetitions=args.reps,
        master_seed=args.seed,
        population_size=args.population,
        offspring_per_generation=args.offspring,
        max_generations=args.max_generations,
        max_retries=args.max_retries,
    )
    rows, summary_rows, timing_rows, histograms = run_experiment(config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_csv(out_dir / "results.csv", RESULT_COLUMNS, rows)
    _write_csv(out_dir / "summary.csv", SUMMARY_COLUMNS, summary_rows)
    _write_csv(
        out_dir / "timings.csv", ["dataset", "k", "seed", "wall_time_s"], timing_rows
    )
    _write_histogram(out_dir / "hist_original.csv", degree_histogram(g))
    for k, hist in sorted(histograms.items()):
        _write_histogram(out_dir / f"hist_k{k}.csv", hist)
    ok = sum(1 for r in rows if r[3] == "ok")
    print(f"experiment {name}: {ok}/{len(rows)} runs ok -> {out_dir / 'results.csv'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphanon",
        description="k-degree graph anonymization and evaluation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_evolution_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--population", type=int, default=100)
        p.add_argument("--offspring", type=int, default=100)
        p.add_argument("--max-generations", type=int, default=5000)
        p.add_argument("--max-retries", type=int, default=50)

    p_anon = sub.add_parser("anonymize", help="produce a k-anonymous graph")
    p_anon.add_argument("--input", required=True)
    p_anon.add_argument("--format", choices=["edgelist", "gml"], default=None)
    p_anon.add_argument("--k", type=int, required=True)
    p_anon.add_argument("--seed", type=int, default=0)
    p_anon.add_argument("--out-dir", default=".")
    p_anon.add_argument("--trace", default=None, help="evolution trace CSV path")
    add_evolution_flags(p_anon)
    p_anon.set_defaults(func=cmd_anonymize)

    p_eval = sub.add_parser("evaluate", help="compare a graph with its anonymized form")
    p_eval.add_argument("original")
    p_eval.add_argument("anonymized")
    p_eval.add_argument("--format", choices=["edgelist", "gml"], default=None)
    p_eval.add_argument("--out-dir", default=".")
    p_eval.set_defaults(func=cmd_evaluate)

    p_risk = sub.add_parser("risk", help="structural re-identification audit")
    p_risk.add_argument("--input", required=True)
    p_risk.add_argument("--format", choices=["edgelist", "gml"], default=None)
    p_risk.add_argument("--max-level", type=int, default=2)
    p_risk.add_argument("--out-dir", default=".")
    p_risk.set_defaults(func=cmd_risk)

    p_exp = sub.add_parser("experiment", help="batch runs over k values and seeds")
    p_exp.add_argument("--dataset", choices=available(), default=None)
    p_exp.add_argument("--input", default=None)
    p_exp.add_argument("--format", choices=["edgelist", "gml"], default=None)
    p_exp.add_argument("--k", type=int, default=None)
    p_exp.add_argument("--k-range", default=None, help="inclusive range, e.g. 2..5")
    p_exp.add_argument("--reps", type=int, default=1)
    p_exp.add_argument("--seed", type=int, default=0)
    p_exp.add_argument("--out-dir", default=".")
    add_evolution_flags(p_exp)
    p_exp.set_defaults(func=cmd_experiment)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleKError as exc:
        print(f"error[infeasible-k]: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"error[convergence]: {exc}", file=sys.stderr)
        return 4
    except ReconstructionError as exc:
        print(f"error[reconstruction]: {exc}", file=sys.stderr)
        return 5
    except (ParseError, ValidationError, DatasetError, OSError, ValueError) as exc:
        print(f"error[parse]: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
