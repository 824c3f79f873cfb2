"""Matplotlib rendering of distinguishing-tree reports to image files.

Layout is computed here (members on a circle, certificate edges between
them), so output bytes depend only on the result and the requested format.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .tree import TreeSetResult  # noqa: E402

_METADATA = {
    ".png": {"Software": "tangle-forge"},
    ".svg": {"Date": None},
    ".pdf": {"CreationDate": None},
}


def render_tree_figure(result: TreeSetResult, path: Union[str, Path]) -> None:
    """Draw members and their certificate separations, write to ``path``.

    Supported formats: png, svg, pdf.  Timestamps are stripped from the
    output metadata so repeat runs are byte-identical.
    """
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix not in _METADATA:
        raise ValueError(f"unsupported figure format {suffix!r}; use png, svg or pdf")
    n = len(result.family)
    pos = {}
    for i in range(n):
        angle = math.pi / 2 - 2 * math.pi * i / max(n, 1)
        pos[i] = (math.cos(angle), math.sin(angle))

    plt.rcParams["svg.hashsalt"] = "tangle-forge"
    fig, ax = plt.subplots(figsize=(6, 6), dpi=120)
    for i, j, s in sorted(result.certificates):
        (x0, y0), (x1, y1) = pos[i], pos[j]
        ax.plot([x0, x1], [y0, y1], color="0.6", linewidth=1.0, zorder=1)
        ax.text((x0 + x1) / 2, (y0 + y1) / 2, result.system.label(s),
                fontsize=7, color="0.25", ha="center", va="center", zorder=2)
    for i, (x, y) in pos.items():
        ax.scatter([x], [y], s=350, color="#d3e5f5", edgecolor="#3b6ea5", zorder=3)
        ax.text(x, y, f"P{i}", fontsize=9, ha="center", va="center", zorder=4)
    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.35, 1.35)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, metadata=_METADATA[suffix])
    plt.close(fig)
