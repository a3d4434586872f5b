"""Convergence report: smallest positive roots of path and cycle
polynomials, written as a CSV table plus a rendered figure.

The CSV keeps everything as exact p/q strings; floats appear only in the
plot, which is display-only.
"""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path

from .graphs import make_cycle, make_path
from .indpoly import univariate_polynomial
from .numerics import smallest_positive_root


def root_convergence_rows(
    max_n: int = 18, precision_bits: int = 30
) -> list[dict[str, object]]:
    rows: list[dict[str, object]] = []
    for family, start, build in (
        ("path", 1, make_path),
        ("cycle", 3, make_cycle),
    ):
        for n in range(start, max_n + 1):
            poly = univariate_polynomial(build(n))
            lo, hi = smallest_positive_root(poly, precision_bits)
            rows.append(
                {
                    "family": family,
                    "n": n,
                    "root_lo": lo,
                    "root_hi": hi,
                    "mu_lo": 1 / hi,
                    "mu_hi": 1 / lo if lo > 0 else Fraction(0),
                }
            )
    return rows


def write_report(
    out_dir: str | Path, max_n: int = 18, precision_bits: int = 30
) -> tuple[Path, Path]:
    """Write roots.csv and roots.png into ``out_dir``; returns both paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = root_convergence_rows(max_n, precision_bits)

    csv_path = out / "roots.csv"
    with csv_path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["family", "n", "root_lo", "root_hi", "mu_lo", "mu_hi"])
        for row in rows:
            writer.writerow(
                [
                    row["family"],
                    row["n"],
                    str(row["root_lo"]),
                    str(row["root_hi"]),
                    str(row["mu_lo"]),
                    str(row["mu_hi"]),
                ]
            )

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for family, marker in (("path", "o"), ("cycle", "s")):
        pts = [r for r in rows if r["family"] == family]
        ax.plot(
            [r["n"] for r in pts],
            [float(Fraction(r["root_lo"])) for r in pts],
            marker=marker,
            markersize=4,
            label=family,
        )
    ax.axhline(0.25, linestyle="--", linewidth=1, color="gray", label="1/4")
    ax.set_xlabel("vertices")
    ax.set_ylabel("smallest positive root")
    ax.set_title("Root convergence of path and cycle polynomials")
    ax.legend()
    fig.tight_layout()
    png_path = out / "roots.png"
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return csv_path, png_path
