"""Figure rendering for diagrams and stability reports.

Figures are written straight to files (Agg backend) so the CLI can drop a
rendered view next to every delimited report it emits.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .diagrams import Diagram
from .experiments import StabilityRow

INF = math.inf


def plot_diagram(diag: Diagram, path: str | Path, title: str | None = None) -> None:
    """Birth/death scatter with the diagonal; infinite dots drawn as triangles
    on a dashed horizon above the largest finite value."""
    finite = [(b, d, m) for b, d, m in diag if d < INF]
    infinite = [(b, m) for b, d, m in diag if d == INF]
    top = max(
        [d for _, d, _ in finite] + [b for b, _ in infinite] + [1.0]
    )
    horizon = 1.15 * top if top > 0 else 1.0

    fig, ax = plt.subplots(figsize=(5, 5))
    lim = 1.25 * top if top > 0 else 1.0
    ax.plot([0, lim], [0, lim], color="gray", linewidth=0.8)
    if finite:
        sizes = [25 + 35 * (m - 1) for _, _, m in finite]
        ax.scatter(
            [b for b, _, _ in finite],
            [d for _, d, _ in finite],
            s=sizes,
            c=["tab:red" if m > 1 else "tab:blue" for _, _, m in finite],
            zorder=3,
        )
    if infinite:
        ax.axhline(horizon, color="gray", linestyle="--", linewidth=0.8)
        ax.scatter(
            [b for b, _ in infinite],
            [horizon] * len(infinite),
            marker="^",
            s=[25 + 35 * (m - 1) for _, m in infinite],
            c="tab:blue",
            zorder=3,
        )
    ax.set_xlabel("birth")
    ax.set_ylabel("death")
    ax.set_xlim(-0.05 * lim, lim)
    ax.set_ylim(-0.05 * lim, lim)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_stability(
    rows: Sequence[StabilityRow], avg_path: str | Path, max_path: str | Path
) -> None:
    """Average and maximum bottleneck distance against the noise bound, with
    the y = x stability guarantee for reference."""
    eps = [r.eps for r in rows]
    for values, label, path in (
        ([r.avg_bd for r in rows], "average bottleneck distance", avg_path),
        ([r.max_bd for r in rows], "maximum bottleneck distance", max_path),
    ):
        fig, ax = plt.subplots(figsize=(5.5, 4))
        ax.plot(eps, values, marker="o", color="tab:blue", label=label)
        ax.plot(eps, eps, color="gray", linestyle="--", linewidth=0.8, label="y = x bound")
        ax.set_xlabel("noise bound")
        ax.set_ylabel("bottleneck distance")
        ax.grid(True, linewidth=0.3)
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
