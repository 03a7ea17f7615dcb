"""Batch-report figures rendered with matplotlib.

Charts are drawn on explicit ``Figure`` objects through the Agg canvas,
so no global backend or pyplot state is touched; the CLI writes them
next to the delimited report when a figures directory is given.
"""

from __future__ import annotations

import math

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

_INDEX_NAMES = ("accuracy", "f1", "kappa", "iou")
_INDEX_COLORS = ("#4878cf", "#6acc65", "#d65f5f", "#b47cc7")


def save_index_chart(names, reports, means, path) -> None:
    """Grouped per-image bars for the four indices, with mean lines."""
    fig = Figure(figsize=(max(6.0, 0.9 * len(names) + 2.0), 4.0))
    ax = fig.add_subplot(111)
    k = len(names)
    width = 0.2
    for j, idx_name in enumerate(_INDEX_NAMES):
        values = [getattr(r, idx_name) for r in reports]
        xs = [i + (j - 1.5) * width for i in range(k)]
        ax.bar(xs, values, width=width, label=idx_name, color=_INDEX_COLORS[j])
        mean = getattr(means, idx_name)
        if math.isfinite(mean):
            ax.axhline(mean, color=_INDEX_COLORS[j], ls="--", lw=0.8, alpha=0.7)
    ax.set_xticks(range(k))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    floor = min((r.kappa for r in reports if math.isfinite(r.kappa)), default=0.0)
    ax.set_ylim(min(0.0, floor), 1.05)
    ax.set_ylabel("index value")
    ax.set_title("Segmentation indices per image (dashed: batch means)")
    ax.legend(fontsize=8, ncol=4, loc="lower right")
    fig.tight_layout()
    FigureCanvasAgg(fig).print_png(str(path))


def save_count_chart(reports, path) -> None:
    """Predicted vs observed counts per image, with count accuracy."""
    names = [r.image_id for r in reports]
    k = len(names)
    fig = Figure(figsize=(max(6.0, 0.7 * k + 2.0), 4.0))
    ax = fig.add_subplot(111)
    ax.bar(
        [i - 0.2 for i in range(k)],
        [r.filtered_components for r in reports],
        width=0.4,
        label="counted",
        color="#4878cf",
    )
    have_observed = [r for r in reports if r.observed is not None]
    if have_observed:
        ax.bar(
            [i + 0.2 for i in range(k) if reports[i].observed is not None],
            [r.observed for r in have_observed],
            width=0.4,
            label="observed",
            color="#d65f5f",
        )
        acc = [r.count_accuracy for r in reports if r.count_accuracy is not None]
        if acc:
            ax2 = ax.twinx()
            ax2.plot(
                [i for i in range(k) if reports[i].count_accuracy is not None],
                acc,
                "ko-",
                ms=3,
                lw=0.8,
                label="count accuracy",
            )
            ax2.set_ylabel("count accuracy (%)")
            ax2.set_ylim(0, 105)
    ax.set_xticks(range(k))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("components")
    ax.set_title("Counting results per image")
    ax.legend(fontsize=8, loc="upper left")
    fig.tight_layout()
    FigureCanvasAgg(fig).print_png(str(path))
