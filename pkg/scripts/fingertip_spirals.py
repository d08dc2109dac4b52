#!/usr/bin/env python3
"""Sweep every digit through its flexion range and fit log spirals.

Writes one polyline CSV per digit next to this script (or into --out) and
prints the spiral coefficients. With --plot, also renders all five
trajectories to fingertip_trajectories.png.
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import numpy as np

from gesturehand.defaults import default_coupling, load_default_hand_spec
from gesturehand.hand_model import (
    DIGITS,
    fingertip_trajectory,
    flexion_plane_coords,
    log_spiral_fit,
)


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--samples", type=int, default=100)
    parser.add_argument("--out", type=Path, default=Path(__file__).parent / "out")
    parser.add_argument("--plot", action="store_true")
    args = parser.parse_args()

    spec = load_default_hand_spec()
    coupling = default_coupling(spec)
    args.out.mkdir(parents=True, exist_ok=True)

    curves = {}
    for digit in DIGITS:
        tips = fingertip_trajectory(spec, digit, coupling, args.samples)
        planar = flexion_plane_coords(tips)
        curves[digit] = planar
        fit = log_spiral_fit(planar)
        path = args.out / f"fingertip_{digit.key}.csv"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("sample,along_mm,curl_mm\n")
            for i, (u, v) in enumerate(planar):
                fh.write(f"{i},{u:.6g},{v:.6g}\n")
        print(
            f"{digit.display:<8} a={fit.a:8.3f}  b={fit.b:8.4f}  "
            f"r_squared={fit.r_squared:.4f}  ({path})"
        )

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 6))
        for digit, planar in curves.items():
            ax.plot(planar[:, 0], planar[:, 1], label=digit.display)
        ax.set_xlabel("along digit axis (mm)")
        ax.set_ylabel("curl direction (mm)")
        ax.set_aspect("equal")
        ax.legend()
        ax.set_title("Fingertip trajectories over the flexion sweep")
        out = args.out / "fingertip_trajectories.png"
        fig.savefig(out, dpi=150, bbox_inches="tight")
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
