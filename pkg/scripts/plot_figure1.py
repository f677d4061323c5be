#!/usr/bin/env python3
"""Render the three photon-efficiency comparison panels from the sweep CSVs.

Generates the CSVs first (via the CLI) when they are missing, then plots
upper bound, approximation, and the three modulation lower bounds against
the average power on a log axis.
"""

import argparse
import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from poissonpe import cli

CURVES = (
    ("upper", "Upper bound", "k-"),
    ("approx_log1c", "Approximation", "C0--"),
    ("ppm_simple", "Simple PPM", "C1-"),
    ("ppm_soft", "Soft-decision PPM", "C2-"),
    ("ook", "On-off keying", "C3:"),
)


def load_rows(path):
    with open(path, newline="") as handle:
        return list(csv.DictReader(handle))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", default="figure1_data")
    parser.add_argument("--out", default="figure1.png")
    args = parser.parse_args()

    expected = [os.path.join(args.data_dir, f"figure1_c{c:g}.csv") for c in (0.1, 1.0, 10.0)]
    if not all(os.path.exists(p) for p in expected):
        assert cli.main(["figure1", "--out-dir", args.data_dir]) == 0

    fig, axes = plt.subplots(3, 1, figsize=(6.0, 12.0), sharex=True)
    for ax, c, path in zip(axes, (0.1, 1.0, 10.0), expected):
        rows = load_rows(path)
        eps = [float(r["epsilon"]) for r in rows]
        for column, label, style in CURVES:
            values = [float(r[column]) if r[column] else float("nan") for r in rows]
            ax.plot(eps, values, style, label=label, linewidth=1.2)
        ax.set_xscale("log")
        ax.set_ylabel("Photon efficiency (nats/photon)")
        ax.set_title(f"c = {c:g}")
        ax.grid(True, which="both", alpha=0.25)
        if c == 0.1:
            ax.legend(loc="upper right", fontsize=8)
    axes[-1].set_xlabel("average power")
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
