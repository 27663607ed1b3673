"""Command-line front door.

Each subcommand runs one experiment, writes ``report.csv`` or
``report.json`` plus ``meta.json`` into --outdir, and for the ladder
experiments also emits plot-data CSVs.  Reports are deterministic for a
fixed config and seed.  Exit codes: 0 ok, 2 usage, 3 i/o, 4 computation.

The image cache directory defaults to --outdir and is overridden by the
LOGLAB_CACHE_DIR environment variable.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .counting import binary_scan, gamma_all_fast, gamma_brute, main_term, psi_k
from .errors import LoglabError
from .expsums import (
    ArcPartition,
    SpectrumSample,
    buriev_expansion_residual,
    circle_integrals_all,
    major_arc_deviation,
    s1_sup,
    s2_sum,
    s_alpha,
    sum_vs_integral_residual,
    theta_alpha,
    vdc_ratio,
)
from .numeric import solve_ylogy
from .primes import chebyshev_theta, sieve
from .report import emit_plotdata, write_meta, write_report_csv, write_report_json
from .sequences import build_floored_image, build_weight_series, image_covering, save_cache

VDC_H_RANGE = range(1, 33)


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _image_for(args) -> "FlooredImage":
    if getattr(args, "xmax", None):
        return build_floored_image(sieve(args.xmax))
    return image_covering(max(args.n, 1))


# ------------------------------------------------------------- subcommands


def _cmd_sieve(args, rng):
    table = sieve(args.xmax)
    rows = [[args.xmax, len(table.primes), int(table.primes[-1]),
             chebyshev_theta(table, args.xmax)]]
    return ["xmax", "primecount", "largest", "theta"], rows, {}


def _cmd_image(args, rng):
    image = build_floored_image(sieve(args.xmax))
    if args.save:
        cache_dir = Path(os.environ.get("LOGLAB_CACHE_DIR", args.outdir))
        cache_dir.mkdir(parents=True, exist_ok=True)
        target = cache_dir / f"image_x{args.xmax}.lgl"
        save_cache(image, target)
        print(f"cache written: {target}", file=sys.stderr)
    rows = [[int(p), int(f), float(w)] for p, f, w in zip(image.p, image.f, image.w)]
    return ["p", "f", "w"], rows, {}


def _cmd_gamma(args, rng):
    if args.all:
        image = build_floored_image(sieve(args.xmax))
        reports = gamma_all_fast(image, check=not args.no_check, seed=args.seed)
        rows = [[r.N, r.R, r.gamma, r.mainterm, r.ratio] for r in reports]
        plots = {"gamma_ratio.csv": {"N": [r.N for r in reports],
                                     "ratio": [r.ratio for r in reports]}}
        return ["N", "R", "gamma", "mainterm", "ratio"], rows, plots
    image = _image_for(args)
    r = gamma_brute(args.n, image)
    return ["N", "R", "gamma", "mainterm", "ratio"], [[r.N, r.R, r.gamma, r.mainterm, r.ratio]], {}


def _cmd_psik(args, rng):
    weights = build_weight_series(max(args.n))
    rows = []
    for n in args.n:
        value = psi_k(weights, args.k, n)
        x = solve_ylogy(float(n)).y
        smooth = x ** (args.k - 1) / (1.0 + math.log(x))
        rows.append([args.k, n, value, smooth, value / smooth])
    return ["k", "N", "psi", "smoothmain", "ratio"], rows, {}


def _cmd_expsum(args, rng):
    image = build_floored_image(sieve(args.xmax))
    nmax = args.nmax or int(args.xmax * math.log(args.xmax))
    weights = build_weight_series(nmax)
    samples = [
        SpectrumSample(
            alpha=j / args.alpha_grid,
            svalue=s_alpha(j / args.alpha_grid, image),
            thetavalue=theta_alpha(j / args.alpha_grid, weights),
        )
        for j in range(args.alpha_grid)
    ]
    rows = [
        [s.alpha, s.svalue.real, s.svalue.imag, abs(s.svalue),
         s.thetavalue.real, s.thetavalue.imag, abs(s.thetavalue)]
        for s in samples
    ]
    return (["alpha", "s_re", "s_im", "s_abs", "theta_re", "theta_im", "theta_abs"],
            rows, {})


def _cmd_arcs(args, rng):
    if args.deviation:
        rows = []
        for x in args.xladder:
            nmax = int(x * math.log(x))
            image = build_floored_image(sieve(x))
            weights = build_weight_series(nmax)
            rep = major_arc_deviation(float(x), image, weights, args.samples)
            rows.append([x, nmax, rep.tau, rep.max_dev, rep.normalized, rep.alpha_at_max])
        plots = {"major_dev.csv": {"X": [r[0] for r in rows],
                                   "normalized": [r[4] for r in rows]}}
        return ["X", "N", "tau", "max_dev", "normalized", "alpha_at_max"], rows, plots
    image = build_floored_image(sieve(args.xmax))
    gridsize = args.gridsize or (3 * image.maxfreq + 1)
    partition = ArcPartition.from_scale(float(args.xmax), gridsize)
    nmax = 3 * image.maxfreq if args.all else args.n
    g1, g2 = circle_integrals_all(image, partition, nmax)
    ns = range(1, nmax + 1) if args.all else [args.n]
    rows = [[n, g1[n].real, g1[n].imag, g2[n].real, g2[n].imag,
             (g1[n] + g2[n]).real, (g1[n] + g2[n]).imag] for n in ns]
    return ["N", "g1_re", "g1_im", "g2_re", "g2_im", "gamma_re", "gamma_im"], rows, {}


def _cmd_lemmas(args, rng):
    rows = []
    s2_ratios = []
    for x in args.xladder:
        h = float(x) ** (1.0 / 25.0)
        lnx = math.log(x)
        v1 = s1_sup(x, h, args.alpha_grid)
        n1 = x ** (24.0 / 25.0) * lnx**3
        rows.append(["s1", x, h, v1, n1, v1 / n1])
        v2 = s2_sum(x, h)
        n2 = x ** (24.0 / 25.0) * lnx**2
        rows.append(["s2", x, h, v2, n2, v2 / n2])
        s2_ratios.append(v2 / n2)
        vworst = max(vdc_ratio(x, 2 * x, hh) for hh in VDC_H_RANGE)
        rows.append(["vdc", x, float(max(VDC_H_RANGE)), vworst, 1.0, vworst])
    for h in args.hladder:
        c = 0.0
        for _ in range(args.samples):
            xv = float(rng.uniform(0.0, 1.0))
            yv = float(rng.uniform(0.0, 1.0))
            resid = buriev_expansion_residual(xv, yv, h)
            dy = min(yv - math.floor(yv), 1.0 - (yv - math.floor(yv)))
            bound = min(1.0, 1.0 / (h * dy)) if dy > 0 else 1.0
            c = max(c, resid / bound)
        rows.append(["buriev", args.samples, float(h), c, 1.0, c])
    worst = 0.0
    for _ in range(args.samples):
        alpha = float(rng.uniform(-0.25, 0.25))
        ymax = float(rng.uniform(2.0, 1.0e4))
        worst = max(worst, sum_vs_integral_residual(alpha, ymax))
    rows.append(["sum_vs_integral", args.samples, 0.25, worst, 1.0, worst])
    plots = {"s2_norm.csv": {"X": list(args.xladder), "ratio": s2_ratios}}
    return ["lemma", "scale", "param", "value", "normalizer", "ratio"], rows, plots


def _cmd_scan_binary(args, rng):
    image = image_covering(max(args.nmax - 1, 1))
    misses = binary_scan(image, args.nmax)
    return ["N"], [[n] for n in misses], {}


# ------------------------------------------------------------------ driver


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loglab",
        description="Numerical experiments around floored p*log(p) prime sums.",
    )
    parser.add_argument("--outdir", default=".", help="directory for report files")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--seed", type=int, default=42)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="prime table summary")
    p.add_argument("--xmax", type=int, required=True)
    p.set_defaults(func=_cmd_sieve)

    p = sub.add_parser("image", help="floored prime image; optionally cache it")
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--save", action="store_true")
    p.set_defaults(func=_cmd_image)

    p = sub.add_parser("gamma", help="ternary representation counts")
    p.add_argument("--xmax", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--all", action="store_true")
    p.add_argument("--no-check", action="store_true")
    p.set_defaults(func=_cmd_gamma)

    p = sub.add_parser("psik", help="k-fold smooth-weight convolution at N")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, action="append", required=True)
    p.set_defaults(func=_cmd_psik)

    p = sub.add_parser("expsum", help="sample S and Theta on a uniform grid")
    p.add_argument("--xmax", type=int, required=True)
    p.add_argument("--nmax", type=int)
    p.add_argument("--alpha-grid", type=int, required=True)
    p.set_defaults(func=_cmd_expsum)

    p = sub.add_parser("arcs", help="major/minor split, or the deviation ladder")
    p.add_argument("--xmax", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--all", action="store_true")
    p.add_argument("--gridsize", type=int)
    p.add_argument("--deviation", action="store_true")
    p.add_argument("--xladder", type=_int_list, default=[4096, 16384, 65536, 262144])
    p.add_argument("--samples", type=int, default=1001)
    p.set_defaults(func=_cmd_arcs)

    p = sub.add_parser("lemmas", help="empirical bound ledgers")
    p.add_argument("--xladder", type=_int_list, default=[4096, 16384, 65536])
    p.add_argument("--hladder", type=_int_list, default=[8, 64, 512])
    p.add_argument("--samples", type=int, default=1000, help="Monte-Carlo pair count")
    p.add_argument("--alpha-grid", type=int, default=1024, help="grid points for the sup scan")
    p.set_defaults(func=_cmd_lemmas)

    p = sub.add_parser("scan-binary", help="N with no two-term representation")
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=_cmd_scan_binary)

    return parser


def _validate(args, parser):
    if args.command == "gamma":
        if args.all and not args.xmax:
            parser.error("gamma --all requires --xmax")
        if not args.all and args.n is None:
            parser.error("gamma requires --n or --all")
    if args.command == "arcs" and not args.deviation:
        if not args.xmax:
            parser.error("arcs requires --xmax (or --deviation)")
        if not args.all and args.n is None:
            parser.error("arcs requires --n or --all (or --deviation)")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    rng = np.random.default_rng(args.seed)
    outdir = Path(args.outdir)
    started = time.perf_counter()
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        columns, rows, plots = args.func(args, rng)
        if args.format == "csv":
            write_report_csv(outdir / "report.csv", columns, rows)
        else:
            write_report_json(outdir / "report.json", args.command, columns, rows)
        for name, series in plots.items():
            emit_plotdata(outdir / name, series)
        config = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
        config["outdir"] = str(config["outdir"])
        write_meta(
            outdir / "meta.json",
            version=__version__,
            command=args.command,
            config=config,
            seed=args.seed,
            wall_time_s=time.perf_counter() - started,
            cache_dir=os.environ.get("LOGLAB_CACHE_DIR", str(outdir)),
        )
    except OSError as exc:
        print(f"loglab: i/o error: {exc}", file=sys.stderr)
        return 3
    except (LoglabError, ValueError, ZeroDivisionError, OverflowError) as exc:
        print(f"loglab: computation error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
