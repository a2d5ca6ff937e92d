#!/usr/bin/env python3
"""Regenerate the bundled zeros table (data/zeros100.txt).

Ordinates of the first nontrivial zeros of the Riemann zeta function on the
critical line, computed with mpmath at 30 significant digits and written with
20 significant digits.  The library only ingests such tables; it never computes
zeros itself.
"""
import argparse
from pathlib import Path

import mpmath as mp


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--out", type=Path,
                    default=Path(__file__).resolve().parent.parent / "src/radsum/data/zeros100.txt")
    args = ap.parse_args()

    mp.mp.dps = 30
    lines = ["# Ordinates of the first %d nontrivial zeta zeros (Im rho), ascending." % args.count,
             "# Generated by scripts/gen_zeros_table.py; 20 significant digits."]
    for n in range(1, args.count + 1):
        g = mp.zetazero(n).imag
        lines.append(mp.nstr(g, 20, strip_zeros=False))
    args.out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {args.count} ordinates to {args.out}")


if __name__ == "__main__":
    main()
