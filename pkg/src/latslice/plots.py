"""File-output plotting helpers for scan results.

Everything renders through the Agg backend so the CLI can emit figures from
headless runs; nothing here ever opens a window.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

__all__ = ["save_loglog_plot"]


def save_loglog_plot(
    path: str,
    series: Iterable[tuple[str, Sequence[float], Sequence[float]]],
    *,
    xlabel: str = "rho",
    ylabel: str = "magnitude",
    title: str | None = None,
    guides: Iterable[tuple[float, float, str]] = (),
    dpi: int = 150,
) -> None:
    """Log-log line chart of (label, xs, ys) series, with optional guide lines.

    Guides are (slope, log_intercept, label) triples drawn as dashed power
    laws exp(log_intercept) * x**slope across the data range.  Points with
    nonpositive y are dropped rather than crashing the log axis.
    """
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    xmin = math.inf
    xmax = -math.inf
    for label, xs, ys in series:
        pts = [(x, y) for x, y in zip(xs, ys) if y > 0.0 and x > 0.0]
        if not pts:
            continue
        px, py = zip(*pts)
        xmin = min(xmin, min(px))
        xmax = max(xmax, max(px))
        ax.loglog(px, py, marker="o", markersize=3, linewidth=1.0, label=label)
    if xmin < xmax:
        for slope, log_intercept, label in guides:
            gy = [math.exp(log_intercept) * x**slope for x in (xmin, xmax)]
            ax.loglog((xmin, xmax), gy, linestyle="--", linewidth=1.0, label=label)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
