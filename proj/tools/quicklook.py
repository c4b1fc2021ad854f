#!/usr/bin/env python3
"""Quick look at a continuation output directory: table plus slope fit."""
import argparse
import json
import math
import os
import sys


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="out",
                    help="directory holding records.json (default: out)")
    args = ap.parse_args()

    path = os.path.join(args.outdir, "records.json")
    try:
        with open(path) as f:
            records = json.load(f)
    except OSError as e:
        sys.exit(f"quicklook: {e}")
    if not records:
        sys.exit("quicklook: no records")

    print(f"{'eps':>8} {'W':>20} {'iters':>5} {'residual':>10} "
          f"{'min_kappa':>10} {'K':>14}")
    for r in records:
        k = "-" if r["K"] is None else f"{r['K']:.6g}"
        print(f"{r['eps']:8.4f} {r['W']:20.15f} {r['iterations']:5d} "
              f"{r['residual_sup']:10.2e} {r['min_curvature']:10.6f} {k:>14}")

    w0 = min(records, key=lambda r: abs(r["eps"]))["W"]
    pts = [(math.log(abs(r["eps"])), math.log(abs(r["W"] - w0)))
           for r in records if abs(r["eps"]) > 0 and abs(r["W"] - w0) > 1e-14]
    if len(pts) >= 2:
        n = len(pts)
        sx = sum(x for x, _ in pts)
        sy = sum(y for _, y in pts)
        sxx = sum(x * x for x, _ in pts)
        sxy = sum(x * y for x, y in pts)
        slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
        pref = math.exp((sy - slope * sx) / n)
        print(f"\nW(eps) - {w0:.12g} ~ {pref:.4g} * eps^{slope:.4f}")
    else:
        print("\nslope fit: not enough points")


if __name__ == "__main__":
    main()
