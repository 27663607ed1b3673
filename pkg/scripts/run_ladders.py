#!/usr/bin/env python3
"""Run the headline trend experiments and drop plot-ready CSVs in one place.

Four ladders:
  * gamma ratio Gamma(N)/(X^2/(1+log X)) across all N for a truncated prime
    range (the ratio settles near 1/2 plus a 1/log X correction);
  * psi_3 ratio against the same scale on a decade ladder of N;
  * the normalized major-arc deviation max|S - Theta|/X on a dyadic X ladder;
  * the S1/S2/van-der-Corput bound ledgers on the same ladder.

Sizes are configurable; defaults finish in a few minutes on a laptop.

    python scripts/run_ladders.py --outdir ladders
"""

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

from loglab import (
    build_floored_image,
    build_weight_series,
    gamma_all_fast,
    main_term,
    major_arc_deviation,
    psi_k,
    s1_sup,
    s2_sum,
    sieve,
    solve_ylogy,
    vdc_ratio,
)
from loglab.report import emit_plotdata


def gamma_ratio_ladder(outdir: Path, xmax: int) -> None:
    t0 = time.perf_counter()
    image = build_floored_image(sieve(xmax))
    # keep the prefix where the truncated range provably equals the global
    # count: every prime with floor(p log p) <= N - 2 is in the image
    reports = [r for r in gamma_all_fast(image) if r.N <= image.covered + 2]
    emit_plotdata(outdir / "gamma_ratio.csv", {
        "N": [r.N for r in reports],
        "R": [r.R for r in reports],
        "gamma": [r.gamma for r in reports],
        "ratio": [r.ratio for r in reports],
    })
    mid = reports[len(reports) // 2]
    print(f"gamma ladder (xmax={xmax}): ratio at N={mid.N} is {mid.ratio:.4f}"
          f"  [{time.perf_counter() - t0:.1f}s]")


def psi_ladder(outdir: Path, decades: list[int]) -> None:
    t0 = time.perf_counter()
    weights = build_weight_series(max(decades))
    rows = {"N": [], "psi3": [], "mainterm": [], "ratio": []}
    for n in decades:
        value = psi_k(weights, 3, n)
        mt = main_term(n)
        rows["N"].append(n)
        rows["psi3"].append(value)
        rows["mainterm"].append(mt)
        rows["ratio"].append(value / mt)
    emit_plotdata(outdir / "psi3_ratio.csv", rows)
    trail = ", ".join(f"{r:.4f}" for r in rows["ratio"])
    print(f"psi_3 ladder: ratios {trail}  (drifting toward 1/2)"
          f"  [{time.perf_counter() - t0:.1f}s]")


def deviation_ladder(outdir: Path, xs: list[int], samples: int) -> None:
    t0 = time.perf_counter()
    rows = {"X": [], "tau": [], "max_dev": [], "normalized": []}
    for x in xs:
        image = build_floored_image(sieve(x))
        weights = build_weight_series(int(x * math.log(x)))
        rep = major_arc_deviation(float(x), image, weights, samples)
        rows["X"].append(x)
        rows["tau"].append(rep.tau)
        rows["max_dev"].append(rep.max_dev)
        rows["normalized"].append(rep.normalized)
        print(f"  deviation X={x}: normalized {rep.normalized:.5f}")
    emit_plotdata(outdir / "major_dev.csv", rows)
    print(f"deviation ladder done  [{time.perf_counter() - t0:.1f}s]")


def bound_ledgers(outdir: Path, xs: list[int], gridpoints: int) -> None:
    t0 = time.perf_counter()
    rows = {"X": [], "s1_ratio": [], "s2_ratio": [], "vdc_ratio": []}
    for x in xs:
        h = float(x) ** (1.0 / 25.0)
        lnx = math.log(x)
        rows["X"].append(x)
        rows["s1_ratio"].append(s1_sup(x, h, gridpoints) / (x ** (24 / 25) * lnx**3))
        rows["s2_ratio"].append(s2_sum(x, h) / (x ** (24 / 25) * lnx**2))
        rows["vdc_ratio"].append(max(vdc_ratio(x, 2 * x, hh) for hh in range(1, 33)))
    emit_plotdata(outdir / "bound_ledgers.csv", rows)
    print(f"bound ledgers done  [{time.perf_counter() - t0:.1f}s]")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=Path("ladders"))
    parser.add_argument("--gamma-xmax", type=int, default=2000)
    parser.add_argument("--psi-max-decade", type=int, default=6,
                        help="largest N in the psi ladder is 10**this")
    parser.add_argument("--dev-xladder", default="4096,16384,65536",
                        help="comma-separated X values for the deviation ladder")
    parser.add_argument("--samples", type=int, default=1001)
    parser.add_argument("--gridpoints", type=int, default=1024)
    args = parser.parse_args(argv)

    args.outdir.mkdir(parents=True, exist_ok=True)
    xs = [int(v) for v in args.dev_xladder.split(",")]
    gamma_ratio_ladder(args.outdir, args.gamma_xmax)
    psi_ladder(args.outdir, [10**k for k in range(4, args.psi_max_decade + 1)])
    deviation_ladder(args.outdir, xs, args.samples)
    bound_ledgers(args.outdir, xs, args.gridpoints)
    print(f"plot data written under {args.outdir}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
