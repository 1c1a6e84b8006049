"""Render benchmark timing figures from bench records.

One figure per (model, parameter): elapsed milliseconds against graph
size on a log scale, a median marker line per method, and vertical bars
spanning the min-max spread for each size.  Files are written next to the
delimited outputs so a bench run leaves CSV, plot data, and rendered
figures side by side.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import BenchRecord, aggregate_times

_METHOD_STYLES = {
    "milp": ("tab:blue", "o"),
    "exhaustive": ("tab:orange", "s"),
}
_MODEL_TITLES = {
    "erdos": "Erdos-Renyi undirected",
    "digraph": "random digraph",
    "kin": "k-in random digraph",
    "kout": "k-out random digraph",
}


def _param_tag(model: str, param: float | int) -> str:
    label = "p" if model in ("erdos", "digraph") else "k"
    return f"{label}{param}"


def render_figures(records: Iterable[BenchRecord], out_dir: str | Path) -> list[Path]:
    """Write one PNG per (model, param) group; returns the paths written."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    agg = aggregate_times(records)
    groups: dict[tuple[str, float | int], dict[str, dict[int, tuple[float, float, float]]]] = {}
    for (model, param, method), series in agg.items():
        groups.setdefault((model, param), {})[method] = series

    written: list[Path] = []
    for (model, param) in sorted(groups, key=lambda g: (g[0], str(g[1]))):
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        for method in sorted(groups[(model, param)]):
            series = groups[(model, param)][method]
            color, marker = _METHOD_STYLES.get(method, ("tab:gray", "x"))
            sizes = sorted(series)
            medians = [series[n][1] for n in sizes]
            ax.plot(sizes, medians, color=color, marker=marker, label=method)
            ax.vlines(
                sizes,
                [series[n][0] for n in sizes],
                [series[n][2] for n in sizes],
                color=color,
                alpha=0.55,
            )
        ax.set_yscale("log")
        ax.set_xlabel("number of nodes n")
        ax.set_ylabel("computation time (ms)")
        label = "p" if model in ("erdos", "digraph") else "k"
        ax.set_title(f"{_MODEL_TITLES.get(model, model)}, {label} = {param}")
        ax.legend()
        ax.grid(True, which="both", alpha=0.25)
        fig.tight_layout()
        path = out_dir / f"time_{model}_{_param_tag(model, param)}.png"
        fig.savefig(path, dpi=150)
        plt.close(fig)
        written.append(path)
    return written
