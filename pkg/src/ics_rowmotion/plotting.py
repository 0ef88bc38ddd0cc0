"""Figures for orbit decompositions and homomesy reports, written straight to files."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .rowmotion import OrbitDecomposition  # noqa: E402
from .stats import HomomesyReport  # noqa: E402

plt.rcParams.update({
    "figure.figsize": (5.0, 3.0),
    "figure.dpi": 150,
    "savefig.bbox": "tight",
    "axes.spines.top": False,
    "axes.spines.right": False,
    "svg.hashsalt": "ics-rowmotion",  # stable svg ids between runs
})


def _save(fig, path: str) -> str:
    meta = {"Date": None} if path.lower().endswith((".svg", ".pdf")) else {}
    fig.savefig(path, metadata=meta)
    plt.close(fig)
    return path


def orbit_histogram(dec: OrbitDecomposition, path: str, title: str = "") -> str:
    """Bar chart of orbit size against the number of orbits of that size."""
    counts = dec.size_counts()
    fig, ax = plt.subplots()
    xs = [str(s) for s in counts]
    ax.bar(xs, list(counts.values()), color="#4D7DBF", edgecolor="black", linewidth=0.5)
    ax.set_xlabel("orbit size")
    ax.set_ylabel("number of orbits")
    ax.set_title(title or f"rowmotion orbits (order {dec.order}, {dec.total} sets)")
    return _save(fig, path)


def orbit_averages(report: HomomesyReport, path: str, title: str = "") -> str:
    """Per-orbit statistic averages with the global average as a reference line."""
    fig, ax = plt.subplots()
    xs = range(len(report.averages))
    ys = [float(a) for a in report.averages]
    ax.scatter(xs, ys, s=[12 + 4 * k for k in report.sizes], color="#B7352D",
               edgecolor="black", linewidth=0.5, zorder=3)
    ax.axhline(float(report.global_average), color="#6F6F6F", linestyle="--", linewidth=0.8,
               label=f"global average {report.global_average}")
    ax.set_xlabel("orbit (canonical order)")
    ax.set_ylabel(f"average of {report.stat}")
    verdict = "homomesic" if report.homomesic else "not homomesic"
    ax.set_title(title or f"{report.stat}: {verdict}")
    ax.legend(frameon=False, loc="best")
    return _save(fig, path)
