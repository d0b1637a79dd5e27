"""Report figures written next to the CLI's delimited output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
}

HEURISTIC_COLORS = {"emja": "#1b9e77", "tca": "#d95f02", "ba": "#7570b3"}


def figsize(scale=1.0):
    golden = (5**0.5 - 1) / 2
    width = 6.0 * scale
    return width, width * golden


def plot_ratio_trajectory(trajectory, path):
    """Running ratio CM(S_k)/k against k, with the target as a dashed line."""
    ks = range(1, len(trajectory.ratios) + 1)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=figsize())
        ax.plot(ks, [float(r) for r in trajectory.ratios], lw=1.2, label=r"$CM(S_k)/k$")
        ax.axhline(float(trajectory.target_ratio), color="k", ls="--", lw=0.8, label=f"r = {trajectory.target_ratio}")
        powers = sorted(trajectory.power_indices.values())
        ax.plot(powers, [float(trajectory.ratios[i - 1]) for i in powers], "o", ms=3, color="C3", label="power of 2")
        ax.set_xlabel("k")
        ax.set_ylabel("ratio")
        ax.set_ylim(0, 1.05)
        ax.legend(frameon=False)
        return _save(fig, path)


def plot_bench(records, path):
    """Histogram of extra moves each heuristic needs over the optimum."""
    gaps = {alg: [] for alg in HEURISTIC_COLORS}
    for rec in records:
        if rec.cm is None:
            continue
        for alg, count in rec.heuristics.items():
            gaps[alg].append(count - rec.cm)
    top = max((max(g) for g in gaps.values() if g), default=0)
    bins = [b - 0.5 for b in range(top + 2)]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=figsize())
        ax.hist(
            [gaps[a] for a in gaps],
            bins=bins,
            color=[HEURISTIC_COLORS[a] for a in gaps],
            label=[a.upper() for a in gaps],
        )
        ax.set_xlabel("moves above optimum")
        ax.set_ylabel("instances")
        ax.set_xticks(range(top + 1))
        ax.legend(frameon=False)
        return _save(fig, path)


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
