"""Command-line interface: synth, verify, arch, and bench subcommands."""

from __future__ import annotations

import json
import sys
import time
from types import SimpleNamespace

import click

from .architecture import BUILTIN_ARCHITECTURES, load_graph
from .bench import (
    ExperimentSpec,
    default_sweep,
    run_experiment,
    summarize,
    write_rows_csv,
    write_summary_csv,
)
from .circuit import Circuit
from .synthesis import SynthesisConfig, synthesize
from .tableau import CliffordTableau
from .verify import check_connectivity, check_roundtrip

_IN_PATH = click.Path(exists=True, dir_okay=False)


@click.group()
def main():
    """Architecture-aware synthesis of Clifford tableaus."""


def _load_arch(source):
    try:
        return load_graph(source)
    except (ValueError, OSError) as exc:
        raise click.ClickException(str(exc))


def _read_input(in_path, tableau_path) -> CliffordTableau:
    if (in_path is None) == (tableau_path is None):
        raise click.UsageError("provide exactly one of --in or --tableau-in")
    path = tableau_path or in_path
    with open(path) as fh:
        text = fh.read()
    try:
        if tableau_path is not None:
            return CliffordTableau.from_text(text)
        head = next(
            (ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")),
            "",
        )
        if head.startswith("n="):
            return CliffordTableau.from_text(text)
        return CliffordTableau.from_circuit(Circuit.from_gatelist(text))
    except ValueError as exc:
        raise click.ClickException(f"{path}: {exc}")


@main.command()
@click.option("--arch", required=True, help="Architecture name or coupling-map JSON file.")
@click.option("--in", "in_path", type=_IN_PATH, default=None,
              help="Input gate list or tableau text (auto-detected).")
@click.option("--tableau-in", "tableau_path", type=_IN_PATH, default=None,
              help="Input tableau text file.")
@click.option("--placement", type=click.Choice(["lazy", "identity"]),
              default="lazy", show_default=True)
@click.option("--pivot-rule", type=click.Choice(["heuristic", "fixed-order"]),
              default="heuristic", show_default=True)
@click.option("--out", "out_path", default=None,
              help="Output gate list file (default: stdout).")
@click.option("--qasm-out", "qasm_path", default=None,
              help="Also export the result as OpenQASM 2.0.")
@click.option("--stats", "stats_path", default=None,
              help="Write counts, mapping, and wall time as JSON.")
def synth(arch, in_path, tableau_path, placement, pivot_rule, out_path,
          qasm_path, stats_path):
    """Synthesize a connectivity-respecting circuit for a tableau or circuit."""
    graph = _load_arch(arch)
    tableau = _read_input(in_path, tableau_path)
    config = SynthesisConfig(placement=placement, pivot_rule=pivot_rule)
    start = time.perf_counter()
    try:
        result = synthesize(tableau, graph, config)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    wall_ms = (time.perf_counter() - start) * 1000.0
    gatelist = result.circuit.to_gatelist()
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(gatelist)
    else:
        click.echo(gatelist, nl=False)
    if qasm_path:
        with open(qasm_path, "w") as fh:
            fh.write(result.circuit.to_qasm())
    if stats_path:
        stats = {
            "arch": graph.name,
            "placement": placement,
            "pivot_rule": pivot_rule,
            "counts": {
                "h": result.counts.h,
                "s": result.counts.s,
                "cx": result.counts.cx,
            },
            "mapping": {str(k): v for k, v in sorted(result.mapping.items())},
            "wall_time_ms": round(wall_ms, 3),
        }
        with open(stats_path, "w") as fh:
            json.dump(stats, fh, indent=2, sort_keys=True)
            fh.write("\n")


@main.command("verify")
@click.option("--arch", required=True, help="Architecture name or JSON file.")
@click.option("--tableau", "tableau_path", required=True, type=_IN_PATH,
              help="Expected tableau (text format).")
@click.option("--circuit", "circuit_path", required=True, type=_IN_PATH,
              help="Synthesized physical circuit (gate list).")
@click.option("--mapping", "mapping_path", type=_IN_PATH, default=None,
              help="JSON logical->physical mapping (identity if omitted).")
def verify_cmd(arch, tableau_path, circuit_path, mapping_path):
    """Check a synthesized circuit against a tableau and an architecture."""
    graph = _load_arch(arch)
    with open(tableau_path) as fh:
        try:
            tableau = CliffordTableau.from_text(fh.read())
        except ValueError as exc:
            raise click.ClickException(f"{tableau_path}: {exc}")
    with open(circuit_path) as fh:
        try:
            circuit = Circuit.from_gatelist(fh.read())
        except ValueError as exc:
            raise click.ClickException(f"{circuit_path}: {exc}")
    if mapping_path:
        with open(mapping_path) as fh:
            loaded = json.load(fh)
        if isinstance(loaded, dict) and "mapping" in loaded:
            loaded = loaded["mapping"]
        if isinstance(loaded, list):
            mapping = {i: v for i, v in enumerate(loaded)}
        else:
            mapping = {int(k): v for k, v in loaded.items()}
    else:
        mapping = {i: i for i in range(tableau.n)}
    failures = []
    bad = check_connectivity(circuit, graph)
    for idx in bad:
        failures.append(f"gate {idx} ({circuit.gates[idx]}) is not a coupling edge")
    try:
        ok = check_roundtrip(tableau, SimpleNamespace(circuit=circuit, mapping=mapping))
    except ValueError as exc:
        failures.append(str(exc))
        ok = False
    if not ok and not any("tableau" in f for f in failures):
        failures.append("circuit does not rebuild the expected tableau")
    if failures:
        for f in failures:
            click.echo(f"FAIL: {f}")
        sys.exit(1)
    click.echo(f"OK: circuit matches tableau on {graph.name}")


@main.group()
def arch():
    """Inspect bundled and file-based architectures."""


@arch.command("list")
def arch_list():
    """List the bundled architectures."""
    for name in BUILTIN_ARCHITECTURES:
        g = load_graph(name)
        click.echo(f"{name}: {g.num_qubits} qubits, {len(g.edges)} edges")
    click.echo("parametric: complete-N, line-N (any N >= 1)")


@arch.command("show")
@click.argument("name")
def arch_show(name):
    """Print vertices, edges, and diameter of one architecture."""
    g = _load_arch(name)
    click.echo(f"name: {g.name}")
    click.echo(f"qubits: {g.num_qubits}")
    click.echo(f"diameter: {g.diameter()}")
    click.echo(f"edges ({len(g.edges)}):")
    for u, v in g.edges:
        click.echo(f"  {u} - {v}")


def _parse_gates(text: str) -> list[int]:
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) != 3:
                raise ValueError
            start, stop, step = parts
            counts = list(range(start, stop + 1, step))
        elif "," in text:
            counts = [int(p) for p in text.split(",")]
        else:
            counts = [int(text)]
    except ValueError:
        raise click.UsageError(
            f"--gates must be START:STOP:STEP, a comma list, or an int: {text!r}"
        )
    if not counts:
        raise click.UsageError(f"--gates produced no gate counts: {text!r}")
    return counts


@main.command()
@click.option("--arch", "arch_name", default=None,
              help="Architecture name or JSON file to sweep.")
@click.option("--all-paper-archs", is_flag=True,
              help="Sweep all six bundled architectures to their plateaus.")
@click.option("--gates", "gates_text", default=None,
              help="Input gate counts as START:STOP:STEP or a comma list.")
@click.option("--trials", default=20, show_default=True,
              help="Random circuits per gate count.")
@click.option("--seed", default=42, show_default=True)
@click.option("--placement", type=click.Choice(["lazy", "identity"]),
              default="lazy", show_default=True)
@click.option("--out", "out_path", required=True, help="Results CSV path.")
@click.option("--summary", "summary_path", default=None,
              help="Per-architecture summary CSV path.")
@click.option("--plot-dir", "plot_dir", default=None,
              help="Also render figures (requires matplotlib).")
def bench(arch_name, all_paper_archs, gates_text, trials, seed, placement,
          out_path, summary_path, plot_dir):
    """Run randomized synthesis sweeps and write results as CSV."""
    if all_paper_archs == (arch_name is not None):
        raise click.UsageError("provide exactly one of --arch or --all-paper-archs")
    archs = list(BUILTIN_ARCHITECTURES) if all_paper_archs else [arch_name]
    rows = []
    for name in archs:
        counts = _parse_gates(gates_text) if gates_text else default_sweep(name)
        spec = ExperimentSpec(
            arch=name,
            gate_counts=counts,
            circuits_per_point=trials,
            rng_seed=seed,
            placement=placement,
        )
        click.echo(f"{name}: gate counts {counts}, {trials} trials each", err=True)

        def progress(done, total):
            if done % trials == 0 or done == total:
                click.echo(f"  {done}/{total} trials done", err=True)

        rows.extend(run_experiment(spec, progress=progress))
    write_rows_csv(rows, out_path)
    click.echo(f"wrote {len(rows)} rows to {out_path}", err=True)
    summaries = summarize(rows, placement=placement)
    if summary_path:
        write_summary_csv(summaries, summary_path)
        click.echo(f"wrote summary to {summary_path}", err=True)
    if plot_dir:
        try:
            from .plotting import render_figures
            written = render_figures(rows, summaries, plot_dir)
        except ImportError:
            raise click.ClickException(
                "matplotlib is required for --plot-dir; install the 'plot' extra"
            )
        for p in written:
            click.echo(f"wrote figure {p}", err=True)


if __name__ == "__main__":
    main()
