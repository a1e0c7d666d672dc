"""Benchmark harness: random instances, sweeps, and routing-overhead metrics.

Every trial draws a random {H, S, CX} circuit, builds its tableau,
synthesizes it twice — on the target architecture and on the complete
graph of the same size — verifies both results, and records the gate
counts.  The complete-graph column isolates how many extra CNOTs pure
routing costs on the constrained device (``routing_portion``).

Reproducibility: trials are seeded independently with
``trial_seed(seed, gates, trial)`` (SHA-256 of the colon-joined triple),
so any row can be regenerated in isolation and parallel execution cannot
change the output, only the row order; rows are sorted before writing.
Circuits are drawn with ``random.Random``, whose Mersenne Twister stream
is stable across platforms and Python versions.
"""

from __future__ import annotations

import csv
import hashlib
import math
import random
import statistics
import time
from dataclasses import dataclass

from .architecture import load_graph
from .circuit import Circuit, Gate
from .synthesis import SynthesisConfig, synthesize
from .tableau import CliffordTableau
from .verify import check_connectivity, check_roundtrip

# Input sizes beyond which synthesized CNOT counts have plateaued.
CONVERGENCE_GATES = {
    "quito": 75,
    "nairobi": 110,
    "guadalupe": 250,
    "mumbai": 500,
    "ithaca": 1250,
    "brisbane": 3000,
}

RESULT_FIELDS = ("arch", "input_gates", "trial", "h", "s", "cx", "cx_fc", "wall_time_ms")
SUMMARY_FIELDS = (
    "arch",
    "n",
    "placement",
    "converged_from",
    "rows_converged",
    "median_cx",
    "median_cx_fc",
    "ratio_fc_n2_over_log2n",
    "ratio_fc_n2",
    "routing_portion",
    "baseline_qiskit",
    "baseline_stim",
)


@dataclass
class ExperimentSpec:
    arch: str
    gate_counts: list[int]
    circuits_per_point: int = 20
    rng_seed: int = 0
    placement: str = "lazy"

    def __post_init__(self):
        if not self.gate_counts:
            raise ValueError("gate_counts must be non-empty")
        if any(b <= a for a, b in zip(self.gate_counts, self.gate_counts[1:])):
            raise ValueError("gate_counts must be strictly ascending")
        if any(g < 0 for g in self.gate_counts):
            raise ValueError("gate_counts must be non-negative")
        if self.circuits_per_point < 1:
            raise ValueError("circuits_per_point must be at least 1")


@dataclass
class ExperimentRow:
    arch: str
    input_gates: int
    trial: int
    h: int
    s: int
    cx: int
    cx_fully_connected: int
    wall_time_ms: float

    def __post_init__(self):
        if min(self.input_gates, self.trial, self.h, self.s, self.cx,
               self.cx_fully_connected) < 0:
            raise ValueError("counts must be non-negative")


def trial_seed(seed: int, gates: int, trial: int) -> int:
    """Stable 64-bit per-trial seed derived from the sweep seed."""
    digest = hashlib.sha256(f"{seed}:{gates}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def random_clifford_circuit(n: int, gates: int, rng: random.Random) -> Circuit:
    """Uniform random circuit: kind from {H, S, CX}, operands uniform.

    CX draws a uniform ordered pair of distinct qubits.  Because H and S
    together outweigh CX two-to-one, single-qubit gates dominate the
    input mix.
    """
    if n < 2 and gates > 0:
        raise ValueError("need at least 2 qubits to sample CX gates")
    circuit = Circuit(n)
    for _ in range(gates):
        kind = rng.randrange(3)
        if kind == 0:
            circuit.append(Gate.h(rng.randrange(n)))
        elif kind == 1:
            circuit.append(Gate.s(rng.randrange(n)))
        else:
            c = rng.randrange(n)
            t = rng.randrange(n - 1)
            if t >= c:
                t += 1
            circuit.append(Gate.cx(c, t))
    return circuit


def routing_portion(cx_routed: int, cx_fully_connected: int) -> float:
    """Fraction of the routed CNOTs attributable to connectivity."""
    if cx_routed < 1:
        raise ValueError("routing portion is undefined for zero routed CNOTs")
    return (cx_routed - cx_fully_connected) / cx_routed


def aggregate_routing_portion(rows) -> float:
    """Routing portion of the summed CNOT counts over the given rows."""
    total = sum(r.cx for r in rows)
    if total == 0:
        return 0.0
    return (total - sum(r.cx_fully_connected for r in rows)) / total


def run_experiment(spec: ExperimentSpec, progress=None) -> list[ExperimentRow]:
    """Run the sweep, verifying every synthesis result before recording it.

    ``progress`` is an optional callable invoked as progress(done, total)
    after every trial.
    """
    graph = load_graph(spec.arch)
    n = graph.num_qubits
    is_complete = len(graph.edges) == n * (n - 1) // 2
    complete = graph if is_complete else load_graph(f"complete-{n}")
    config = SynthesisConfig(placement=spec.placement)
    rows = []
    total = len(spec.gate_counts) * spec.circuits_per_point
    done = 0
    for gates in spec.gate_counts:
        for trial in range(spec.circuits_per_point):
            seed = trial_seed(spec.rng_seed, gates, trial)
            circuit = random_clifford_circuit(n, gates, random.Random(seed))
            tableau = CliffordTableau.from_circuit(circuit)
            start = time.perf_counter()
            routed = synthesize(tableau, graph, config)
            wall_ms = (time.perf_counter() - start) * 1000.0
            fc = routed if is_complete else synthesize(tableau, complete, config)
            for result, target in ((routed, graph), (fc, complete)):
                if not check_roundtrip(tableau, result):
                    raise RuntimeError(
                        f"round-trip failed: arch={target.name} gates={gates} "
                        f"trial={trial} seed={seed}"
                    )
                bad = check_connectivity(result.circuit, target)
                if bad:
                    raise RuntimeError(
                        f"connectivity violated at gates {bad}: arch={target.name} "
                        f"gates={gates} trial={trial} seed={seed}"
                    )
            counts = routed.counts
            rows.append(
                ExperimentRow(
                    arch=spec.arch,
                    input_gates=gates,
                    trial=trial,
                    h=counts.h,
                    s=counts.s,
                    cx=counts.cx,
                    cx_fully_connected=fc.counts.cx,
                    wall_time_ms=wall_ms,
                )
            )
            done += 1
            if progress is not None:
                progress(done, total)
    rows.sort(key=lambda r: (r.arch, r.input_gates, r.trial))
    return rows


def write_rows_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULT_FIELDS)
        for r in rows:
            writer.writerow(
                (r.arch, r.input_gates, r.trial, r.h, r.s, r.cx,
                 r.cx_fully_connected, f"{r.wall_time_ms:.3f}")
            )


def read_rows_csv(path) -> list[ExperimentRow]:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != RESULT_FIELDS:
            raise ValueError(f"unexpected CSV header in {path}")
        for rec in reader:
            rows.append(
                ExperimentRow(
                    arch=rec["arch"],
                    input_gates=int(rec["input_gates"]),
                    trial=int(rec["trial"]),
                    h=int(rec["h"]),
                    s=int(rec["s"]),
                    cx=int(rec["cx"]),
                    cx_fully_connected=int(rec["cx_fc"]),
                    wall_time_ms=float(rec["wall_time_ms"]),
                )
            )
    return rows


def median_cx_series(rows) -> dict[tuple[str, int], float]:
    """Median synthesized CNOT count per (arch, input_gates) bucket."""
    buckets: dict[tuple[str, int], list[int]] = {}
    for r in rows:
        buckets.setdefault((r.arch, r.input_gates), []).append(r.cx)
    return {key: statistics.median(vals) for key, vals in sorted(buckets.items())}


def summarize(rows, placement: str = "lazy", thresholds=None) -> list[dict]:
    """Per-architecture converged medians, asymptotic ratios, and overheads.

    Converged rows are those at or above the architecture's convergence
    threshold (falling back to the top gate-count bucket when the
    architecture has no known threshold).  Ratios divide the
    complete-graph median by the n^2/log2(n) and n^2 reference curves.
    The two baseline columns are left empty; they are hooks for numbers
    produced by external toolchains.
    """
    thresholds = dict(CONVERGENCE_GATES) if thresholds is None else thresholds
    by_arch: dict[str, list[ExperimentRow]] = {}
    for r in rows:
        by_arch.setdefault(r.arch, []).append(r)
    out = []
    for arch in sorted(by_arch):
        arch_rows = by_arch[arch]
        n = load_graph(arch).num_qubits
        threshold = thresholds.get(arch)
        if threshold is None:
            threshold = max(r.input_gates for r in arch_rows)
        converged = [r for r in arch_rows if r.input_gates >= threshold]
        if not converged:
            threshold = max(r.input_gates for r in arch_rows)
            converged = [r for r in arch_rows if r.input_gates == threshold]
        med_cx = statistics.median(r.cx for r in converged)
        med_fc = statistics.median(r.cx_fully_connected for r in converged)
        bound_log = n * n / math.log2(n) if n > 1 else 1.0
        out.append(
            {
                "arch": arch,
                "n": n,
                "placement": placement,
                "converged_from": threshold,
                "rows_converged": len(converged),
                "median_cx": med_cx,
                "median_cx_fc": med_fc,
                "ratio_fc_n2_over_log2n": med_fc / bound_log,
                "ratio_fc_n2": med_fc / (n * n),
                "routing_portion": aggregate_routing_portion(converged),
                "baseline_qiskit": "",
                "baseline_stim": "",
            }
        )
    return out


def write_summary_csv(summaries, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_FIELDS)
        for s in summaries:
            writer.writerow(
                (
                    s["arch"],
                    s["n"],
                    s["placement"],
                    s["converged_from"],
                    s["rows_converged"],
                    f"{s['median_cx']:.1f}",
                    f"{s['median_cx_fc']:.1f}",
                    f"{s['ratio_fc_n2_over_log2n']:.6f}",
                    f"{s['ratio_fc_n2']:.6f}",
                    f"{s['routing_portion']:.6f}",
                    s["baseline_qiskit"],
                    s["baseline_stim"],
                )
            )


def default_sweep(arch: str) -> list[int]:
    """Gate counts spanning approach and plateau for a named architecture."""
    threshold = CONVERGENCE_GATES.get(arch)
    if threshold is None:
        n = load_graph(arch).num_qubits
        threshold = max(20, 12 * n)
    points = sorted({max(1, round(threshold * f)) for f in
                     (0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6)})
    return points
