"""Matplotlib renderings of floorplans and annealing traces."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from .anneal import AnnealResult
from .fabric import Fabric
from .placer import Placement

KIND_COLOR = {"CLB": "#dde6f0", "BRAM": "#f2b266", "DSP": "#e07a6a"}


def floorplan_figure(placements: list[Placement], fabric: Fabric, title: str | None = None):
    fig, ax = plt.subplots(figsize=(max(4.0, fabric.grid_width / 6), max(3.0, fabric.grid_height / 6)))
    for x, kind in enumerate(fabric.columns):
        ax.add_patch(
            Rectangle((x, 0), 1, fabric.grid_height, facecolor=KIND_COLOR[kind], edgecolor="none")
        )
    for r in range(1, fabric.num_rows):
        ax.axhline(r * fabric.row_height, color="#888888", linewidth=0.6)
    for rect in fabric.reserved:
        ax.add_patch(
            Rectangle(
                (rect.x1, rect.y1),
                rect.width,
                rect.height,
                facecolor="#5a5a5a",
                edgecolor="none",
                alpha=0.8,
            )
        )
    for p in placements:
        r = p.rect
        ax.add_patch(
            Rectangle(
                (r.x1, r.y1),
                r.width,
                r.height,
                facecolor="#fff4bf",
                edgecolor="#333333",
                linewidth=1.2,
                alpha=0.85,
            )
        )
        ax.text(
            (r.x1 + r.x2 + 1) / 2,
            (r.y1 + r.y2 + 1) / 2,
            p.region,
            ha="center",
            va="center",
            fontsize=8,
        )
    ax.set_xlim(0, fabric.grid_width)
    ax.set_ylim(0, fabric.grid_height)
    ax.set_aspect("equal")
    ax.set_xlabel("column")
    ax.set_ylabel("CLB row")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def convergence_figure(history: list):
    fig, ax = plt.subplots(figsize=(6, 3.5))
    if history:
        moves = [h[0] for h in history]
        cur = [h[1] for h in history]
        best = [h[2] for h in history]
        ax.plot(moves, cur, color="#9db8d8", linewidth=0.8, label="current")
        ax.plot(moves, best, color="#c24d3a", linewidth=1.6, label="best")
        ax.legend(loc="upper right")
    ax.set_xlabel("move")
    ax.set_ylabel("total cost")
    fig.tight_layout()
    return fig


def save_floorplan_png(path: str, placements: list[Placement], fabric: Fabric) -> None:
    fig = floorplan_figure(placements, fabric)
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_figures(directory: str, result: AnnealResult, fabric: Fabric) -> None:
    """Write floorplan.png and convergence.png next to the report."""
    os.makedirs(directory, exist_ok=True)
    fig = floorplan_figure(
        list(result.best.placements), fabric, title=f"total cost {result.best.cost.total:.4g}"
    )
    fig.savefig(os.path.join(directory, "floorplan.png"), dpi=130)
    plt.close(fig)
    fig = convergence_figure(result.history)
    fig.savefig(os.path.join(directory, "convergence.png"), dpi=130)
    plt.close(fig)
