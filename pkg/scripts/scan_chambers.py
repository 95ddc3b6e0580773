#!/usr/bin/env python3
"""Chamber scan experiment: label a plane of divisor classes by smallest q.

Scans the plane spanned by the anticanonical class H and the example class L
on the bundled 3-fold, prints a small text raster, and writes an SVG.

    python scripts/scan_chambers.py [resolution] [out.svg]
"""

import sys

from toricpos import chamber_scan, load_workspace, zero_divisor


def run(resolution: int = 3, out: str = "chambers.svg") -> None:
    ws = load_workspace("totaro-x")
    cmap = chamber_scan(
        zero_divisor(ws.fan), ws.divisors["H"], ws.divisors["L"], resolution=resolution
    )
    print(f"plane: i*H + j*L, i horizontal, j vertical, resolution {resolution}")
    print("label: smallest q with the class q-ample (3 = none below dim X);")
    print("starred cells are pseudoeffective\n")
    for j in range(resolution, -resolution - 1, -1):
        row = []
        for i in range(-resolution, resolution + 1):
            s = cmap.at(i, j)
            row.append(f"{s.smallest_q}{'*' if s.pseudoeffective else ' '}")
        print("  ".join(row))
    from toricpos.cli import _emit_svg

    _emit_svg(out, cmap)
    print(f"\nwrote {out}")


if __name__ == "__main__":
    resolution = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    out = sys.argv[2] if len(sys.argv) > 2 else "chambers.svg"
    run(resolution, out)
