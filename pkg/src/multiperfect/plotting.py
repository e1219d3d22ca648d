"""Figure rendering for search reports.

Writes a PNG alongside the delimited hit table so a batch run leaves
both machine-readable and eyeball-able artifacts in the report directory.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .search import SearchReport, abundancy


def write_search_report(report: SearchReport, k: int, outdir: str | Path) -> dict:
    """Write hits.csv (n, sigma, abundancy) and abundancy.png under outdir;
    returns the paths written."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    csv_path = outdir / "hits.csv"
    rows = [(n, k * n, f"{k}/1") for n in report.hits]
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "sigma", "abundancy"])
        writer.writerows(rows)

    png_path = outdir / "abundancy.png"
    lo = report.ranges_scanned[0][0]
    hi = report.ranges_scanned[-1][1]
    # context points: abundancy of a thin sample of the scanned range
    sample = range(lo, hi + 1, max(1, (hi - lo) // 2000))
    xs = list(sample)
    ys = [float(abundancy(n)) for n in xs]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.scatter(xs, ys, s=4, color="0.7", label="sampled sigma(n)/n")
    ax.axhline(k, color="tab:red", lw=0.8, ls="--", label=f"abundancy {k}")
    if report.hits:
        ax.scatter(report.hits, [k] * len(report.hits), s=30, color="tab:blue",
                   zorder=3, label=f"{k}-perfect hits")
    ax.set_xlabel("n")
    ax.set_ylabel("sigma(n)/n")
    ax.set_title(f"k = {k} search over [{lo}, {hi}]")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)
    plt.close(fig)

    return {"csv": str(csv_path), "figure": str(png_path)}
