"""Figure rendering for CLI runs.

Curves written to the delimited output are grouped into two panel kinds:
complex-plane trajectories (boundary images, collision slices, arcs) and
scalar traces (Newton residuals), rendered side by side into one PNG.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_figure(rows, path, title=None):
    """Render curve rows (series, t, re, im) into a single figure file.

    Series whose name contains ``residual`` are drawn as semilog traces
    against t; everything else is drawn in the complex plane.  Returns the
    path, or None when there is nothing to draw.
    """
    by_series = {}
    for series, t, re, im in rows:
        by_series.setdefault(series, []).append((t, re, im))
    if not by_series:
        return None

    trace_names = [s for s in by_series if "residual" in s]
    plane_names = [s for s in by_series if s not in trace_names]

    n_panels = (1 if plane_names else 0) + (1 if trace_names else 0)
    fig, axes = plt.subplots(1, n_panels, figsize=(5.2 * n_panels, 4.6))
    if n_panels == 1:
        axes = [axes]
    panel = 0

    if plane_names:
        ax = axes[panel]
        panel += 1
        for name in plane_names:
            pts = by_series[name]
            xs = [p[1] for p in pts]
            ys = [p[2] for p in pts]
            if len(pts) > 24:
                ax.plot(xs, ys, lw=1.0, label=name)
            else:
                ax.plot(xs, ys, ".", ms=4, label=name)
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
        ax.set_aspect("equal", adjustable="datalim")
        ax.axhline(0, color="0.85", lw=0.6, zorder=0)
        ax.axvline(0, color="0.85", lw=0.6, zorder=0)
        if len(plane_names) <= 12:
            ax.legend(fontsize=7, loc="best")

    if trace_names:
        ax = axes[panel]
        for name in trace_names:
            pts = sorted(by_series[name])
            ts = [p[0] for p in pts]
            vals = [max(p[1], 1e-17) for p in pts]
            ax.semilogy(ts, vals, "o-", ms=4, label=name)
        ax.set_xlabel("iteration")
        ax.set_ylabel("residual")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend(fontsize=8, loc="best")

    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path
