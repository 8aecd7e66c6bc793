"""Matplotlib renderings for the report path: exchange graphs and tilings.

Layouts are deterministic (circular by canonical vertex order for graphs,
the fan embedding for tilings); these files are presentation-only, nothing
downstream reads them back.
"""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .cyclic import bits_of, format_labels
from .collection import Tiling
from .graphs import LabeledGraph


def _circle_layout(order: int):
    return [
        (math.cos(2 * math.pi * t / order - math.pi / 2),
         math.sin(2 * math.pi * t / order - math.pi / 2))
        for t in range(order)
    ]


def draw_graph(graph: LabeledGraph, title: str = "", ax=None):
    own = ax is None
    if own:
        fig, ax = plt.subplots(figsize=(4.2, 4.2))
    pos = _circle_layout(graph.order)
    for i, j in sorted(graph.edges):
        ax.plot(
            [pos[i][0], pos[j][0]], [pos[i][1], pos[j][1]],
            color="#555555", linewidth=1.0, zorder=1,
        )
    ax.scatter(
        [p[0] for p in pos], [p[1] for p in pos],
        s=110, color="#d8e6f2", edgecolors="#203040", zorder=2,
    )
    for idx, (x, y) in enumerate(pos, start=1):
        ax.annotate(str(idx), (x, y), ha="center", va="center", fontsize=7)
    if title:
        ax.set_title(title, fontsize=10)
    ax.set_aspect("equal")
    ax.axis("off")
    return ax.figure if own else None


def save_graph_figure(graph: LabeledGraph, path: str, title: str = ""):
    fig = draw_graph(graph, title=title)
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_tiling_figure(tiling: Tiling, path: str, title: str = ""):
    fig, ax = plt.subplots(figsize=(5.2, 4.4))
    pos = tiling.positions
    for faces, color in ((tiling.white_faces, "#ffffff"), (tiling.black_faces, "#9f9f9f")):
        for _, clique in sorted(faces.items()):
            pts = [pos[m] for m in clique]
            cx = sum(p[0] for p in pts) / len(pts)
            cy = sum(p[1] for p in pts) / len(pts)
            ordered = sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
            ax.fill(
                [p[0] for p in ordered], [p[1] for p in ordered],
                facecolor=color, edgecolor="#303030", linewidth=0.8, zorder=1,
            )
    for mask in tiling.collection.sets:
        x, y = pos[mask]
        ax.plot([x], [y], "o", color="#202020", markersize=3, zorder=2)
        ax.annotate(
            format_labels(bits_of(mask)), (x, y),
            xytext=(3, 3), textcoords="offset points", fontsize=7,
        )
    if title:
        ax.set_title(title, fontsize=10)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_classification_figures(rows, graph_for_row, out_dir: str) -> list[str]:
    """One PNG per classified row, named by catalog name or canonical form."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for row in rows:
        stem = row.catalog_name or row.canonical.replace("(", "_").replace(")", "_")
        path = os.path.join(out_dir, f"{stem}.png")
        title = f"{row.catalog_name or row.canonical} (order {row.graph_order})"
        save_graph_figure(graph_for_row(row), path, title=title)
        written.append(path)
    return written
