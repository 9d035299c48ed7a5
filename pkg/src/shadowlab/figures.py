"""Matplotlib companions to the JSON reports.

Everything renders through the Agg backend straight to files; nothing
here opens a window. matplotlib is imported lazily so the library works
without it unless figures are actually requested.
"""

from __future__ import annotations

import collections

from .arrangement import OneComplex


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def save_complex_figure(path: str, panels: dict, title: str = "") -> str:
    """One subplot per labelled complex; edges, branch dots, isolated dots."""
    plt = _pyplot()
    n = max(len(panels), 1)
    fig, axes = plt.subplots(1, n, figsize=(3.2 * n, 3.2))
    if n == 1:
        axes = [axes]
    for ax, (label, cx) in zip(axes, sorted(panels.items())):
        for i, j in cx.edges:
            a, b = cx.vertices[i], cx.vertices[j]
            ax.plot([a[0], b[0]], [a[1], b[1]], color="#30506a", lw=2)
        deg = cx.degrees()
        branch = [p for k, p in enumerate(cx.vertices) if deg[k] >= 3]
        if branch:
            ax.plot([p[0] for p in branch], [p[1] for p in branch],
                    "o", color="#c03b2a", ms=7)
        if cx.isolated:
            ax.plot([p[0] for p in cx.isolated], [p[1] for p in cx.isolated],
                    ".", color="#30506a", ms=9)
        ax.set_title(str(label), fontsize=9)
        ax.set_aspect("equal")
        ax.margins(0.15)
    if title:
        fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_histogram_figure(path: str, histogram: dict, title: str = "") -> str:
    """Horizontal bars, one per shadow-classification key."""
    plt = _pyplot()
    items = sorted(histogram.items(), key=lambda kv: (-kv[1], kv[0]))
    labels = [k for k, _ in items] or ["(empty)"]
    counts = [v for _, v in items] or [0]
    fig, ax = plt.subplots(figsize=(6, 0.35 * len(labels) + 1.2))
    ax.barh(range(len(labels)), counts, color="#30506a")
    ax.set_yticks(range(len(labels)))
    ax.set_yticklabels(labels, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("instances")
    if title:
        ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_voxel_figure(path: str, cells, dim: int, title: str = "") -> str:
    """Pairwise coordinate scatters of a voxel set, any dimension >= 2."""
    plt = _pyplot()
    pairs = [(a, b) for a in range(dim) for b in range(a + 1, dim)]
    fig, axes = plt.subplots(1, len(pairs), figsize=(2.8 * len(pairs), 2.8))
    if len(pairs) == 1:
        axes = [axes]
    for ax, (a, b) in zip(axes, pairs):
        weight = collections.Counter((c[a], c[b]) for c in cells)
        xs = [k[0] for k in weight]
        ys = [k[1] for k in weight]
        ax.scatter(xs, ys, c=[weight[k] for k in weight],
                   cmap="Blues", marker="s", s=18)
        ax.set_xlabel(f"x{a + 1}", fontsize=8)
        ax.set_ylabel(f"x{b + 1}", fontsize=8)
        ax.set_aspect("equal")
    if title:
        fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_bitmap_figure(path: str, bitmaps, title: str = "") -> str:
    """Three shadow bitmaps side by side as filled pixel grids."""
    plt = _pyplot()
    fig, axes = plt.subplots(1, len(bitmaps), figsize=(2.8 * len(bitmaps), 2.8))
    if len(bitmaps) == 1:
        axes = [axes]
    for k, (ax, bm) in enumerate(zip(axes, bitmaps)):
        for (x, y) in bm.cells:
            ax.add_patch(plt.Rectangle((x, y), 1, 1, color="#30506a"))
        ax.set_xlim(0, bm.width)
        ax.set_ylim(0, bm.height)
        ax.set_xticks(range(bm.width + 1))
        ax.set_yticks(range(bm.height + 1))
        ax.grid(True, lw=0.3)
        ax.set_title(f"shadow {k + 1}", fontsize=9)
        ax.set_aspect("equal")
    if title:
        fig.suptitle(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
