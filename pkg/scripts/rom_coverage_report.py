#!/usr/bin/env python3
"""Print the ROM coverage analysis for the shipped hand description.

Reports the per-joint overlap ratios of the mechanism's envelopes against the
human and grasping envelopes, under all four aggregation schemes.
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from gesturehand.defaults import load_default_hand_spec
from gesturehand.hand_model import coverage_table, rom_coverage


def main() -> int:
    spec = load_default_hand_spec()
    for reference in ("human", "grasping"):
        print(f"ours vs {reference}:")
        for aggregation in ("per-joint-mean", "length-weighted"):
            for absent in ("exclude-absent", "include-absent-as-zero"):
                value = rom_coverage(spec, "ours", reference, aggregation, absent)
                print(f"  {aggregation:>16} / {absent:<22} {100 * value:6.2f}%")
        print()
    print(f"{'joint':<22}{'vs human':>10}{'vs grasping':>13}")
    human = coverage_table(spec, "ours", "human")
    grasping = coverage_table(spec, "ours", "grasping")
    for h, g in zip(human, grasping):
        hr = "absent" if h.ratio is None else f"{h.ratio:.3f}"
        gr = "absent" if g.ratio is None else f"{g.ratio:.3f}"
        print(f"{h.digit.display + '.' + h.role.display:<22}{hr:>10}{gr:>13}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
