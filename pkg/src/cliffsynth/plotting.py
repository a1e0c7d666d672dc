"""Figure rendering for benchmark results.

matplotlib is imported lazily with the Agg backend so the rest of the
package works headless and without the plotting extra installed.
"""

from __future__ import annotations

from pathlib import Path

from .bench import median_cx_series


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_median_cx(rows, path) -> Path:
    """Median synthesized CNOTs versus input gate count, one curve per arch."""
    plt = _pyplot()
    series = median_cx_series(rows)
    by_arch: dict[str, list[tuple[int, float]]] = {}
    for (arch, gates), med in series.items():
        by_arch.setdefault(arch, []).append((gates, med))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for arch in sorted(by_arch):
        points = sorted(by_arch[arch])
        ax.plot([p[0] for p in points], [p[1] for p in points],
                marker="o", markersize=3, label=arch)
    ax.set_xlabel("input gates")
    ax.set_ylabel("median synthesized CNOTs")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_routing_portion(summaries, path) -> Path:
    """Aggregate routing portion per architecture as a bar chart."""
    plt = _pyplot()
    summaries = sorted(summaries, key=lambda s: (s["n"], s["arch"]))
    names = [s["arch"] for s in summaries]
    portions = [100.0 * s["routing_portion"] for s in summaries]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    bars = ax.bar(names, portions, color="#4878a8")
    ax.bar_label(bars, fmt="%.1f%%", fontsize=8)
    ax.set_ylabel("routing portion of CNOTs (%)")
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_figures(rows, summaries, out_dir) -> list[Path]:
    """Render both benchmark figures into ``out_dir``; returns the paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [plot_median_cx(rows, out_dir / "median_cx.png")]
    if summaries:
        written.append(plot_routing_portion(summaries, out_dir / "routing_portion.png"))
    return written
