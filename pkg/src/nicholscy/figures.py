"""Figure rendering for the report path.

Writes a braiding heatmap, a graded-dimensions bar chart (when the profile
stage ran), and a dims.csv companion next to them.  Import stays inside
render_figures so the core pipeline never touches matplotlib.
"""

from __future__ import annotations

import csv
import os
from fractions import Fraction


def render_figures(report, outdir: str) -> list[str]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(outdir, exist_ok=True)
    written: list[str] = []

    table = report.input_document["braiding"]
    values = [[float(Fraction(v)) for v in row] for row in table]
    fig, ax = plt.subplots(figsize=(5, 4.5))
    im = ax.imshow(values, cmap="RdBu_r", interpolation="nearest")
    ax.set_title(f"braiding coefficients: {report.name}")
    ax.set_xlabel("output pair (m, n)")
    ax.set_ylabel("input pair (i, j)")
    fig.colorbar(im, ax=ax)
    path = os.path.join(outdir, "braiding.png")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    if report.dims_R is not None:
        degrees = list(range(len(report.dims_R)))
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.bar([d - 0.2 for d in degrees], report.dims_R, width=0.4, label="dim R_n")
        if report.dims_dual is not None:
            ax.bar(
                [d + 0.2 for d in degrees],
                report.dims_dual,
                width=0.4,
                label="dim (R!)_n",
            )
        ax.set_xticks(degrees)
        ax.set_xlabel("degree")
        ax.set_ylabel("dimension")
        ax.set_title(f"graded dimensions: {report.name} (cap {report.cap})")
        ax.legend()
        path = os.path.join(outdir, "dims.png")
        fig.savefig(path, dpi=120, bbox_inches="tight")
        plt.close(fig)
        written.append(path)

        path = os.path.join(outdir, "dims.csv")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["degree", "dim_R", "dim_dual"])
            for deg in degrees:
                dual = (
                    report.dims_dual[deg]
                    if report.dims_dual is not None and deg < len(report.dims_dual)
                    else ""
                )
                writer.writerow([deg, report.dims_R[deg], dual])
        written.append(path)

    return written
