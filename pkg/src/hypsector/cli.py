"""Command-line entry point: ``hypsector <subcommand> [options]``."""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, ExperimentConfig, GroupConfig, load_config
from .core import GroupElement, cartan_decompose
from .experiment import (EXIT_CONFIG, EXIT_NUMERIC, NumericAbort, run_experiment,
                         write_csv, write_json)
from .measure import (build_measure, estimate_delta_countfit, estimate_delta_poincare,
                      export_csv, fourier_coefficient)
from .orbit import CongruenceContext, NonFreeGroupError, count_growth
from .orbit_io import cache_path, cached_ball, save_ball
from .sectors import AffineQuery, affine_window_count, sector_sum, vector_window_count
from .specfun.verify import run_suite

log = logging.getLogger("hypsector")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="TOML experiment config")
    p.add_argument("--cache-dir", help="directory for orbit-ball cache files")
    p.add_argument("--threads", type=int, default=None,
                   help="accepted for compatibility; computation is vectorized in one process")
    p.add_argument("--out", help="output file or directory")


def _group_args(p: argparse.ArgumentParser):
    p.add_argument("--c", type=int, default=None, help="use Gamma_c (default 4 or from config)")
    p.add_argument("-T", "--T", type=float, default=None, help="ball radius (default from config)")


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    if getattr(args, "c", None) is not None:
        cfg.group = GroupConfig(label=f"gamma{args.c}", c=args.c)
    if getattr(args, "T", None) is not None:
        cfg.orbit.T_max = args.T
        cfg.orbit.T_grid = None
        top = math.log10(args.T)
        cfg.orbit.grid_decades = (max(top - 2, 0.2), top)
    return cfg


def _ball(args, cfg):
    return cached_ball(cfg.group.presentation(), float(cfg.orbit.T_max), args.cache_dir)


def _emit(args, default_name: str, header, rows):
    if args.out:
        path = Path(args.out)
        if path.is_dir() or not path.suffix:
            path.mkdir(parents=True, exist_ok=True)
            path = path / default_name
        write_csv(path, header, rows)
        print(path)
    else:
        print(",".join(header))
        for r in rows:
            print(",".join(repr(float(v)) if isinstance(v, float) else str(v) for v in r))


def cmd_enumerate(args) -> int:
    cfg = _load(args)
    ball = _ball(args, cfg)
    info = {"group": ball.group.label, "T": ball.T, "count": len(ball), "complete": bool(ball.complete)}
    if args.cache_dir:
        info["cache_file"] = str(cache_path(args.cache_dir, ball.group, ball.T))
    if args.save:
        save_ball(ball, args.save)
        info["saved"] = args.save
    grid = [T for T in cfg.orbit.grid() if T <= ball.T]
    if grid:
        info["growth"] = count_growth(ball, grid)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        write_json(Path(args.out), info)
    print(json.dumps(info))
    return 0


def cmd_decompose(args) -> int:
    g = GroupElement(*args.entries)
    c = cartan_decompose(g)
    print(json.dumps({"theta1": c.theta1, "t": c.t, "theta2": c.theta2, "r": c.r,
                      "degenerate": c.degenerate, "norm_sq": sum(x * x for x in g.entries)}))
    return 0


def cmd_ps(args) -> int:
    cfg = _load(args)
    ball = _ball(args, cfg)
    counts = count_growth(ball, cfg.orbit.grid())
    cf = estimate_delta_countfit(counts)
    pc = estimate_delta_poincare(ball)
    m = build_measure(ball, delta_hat=cf.delta_hat)
    ns = np.arange(-args.nmax, args.nmax + 1)
    mu = fourier_coefficient(m, ns)
    if args.measure_csv:
        export_csv(m, args.measure_csv)
    print(json.dumps({"delta_countfit": cf.delta_hat, "delta_poincare": pc.delta_hat,
                      "s_used": m.s_used, "atoms": len(m)}))
    _emit(args, "mu.csv", ["n", "re", "im"], [[int(n), v.real, v.imag] for n, v in zip(ns, mu)])
    return 0


def cmd_sectors(args) -> int:
    cfg = _load(args)
    ball = _ball(args, cfg)
    harm = [tuple(h) for h in (args.harmonic or cfg.sectors.harmonics)]
    rows = []
    for n, k in [(0, 0)] + harm:
        r = sector_sum(ball, n, k)
        rows.append([r.n, r.k, r.T, r.value.real, r.value.imag, r.raw_count])
    _emit(args, "sectors.csv", ["n", "k", "T", "re", "im", "raw_count"], rows)
    return 0


def cmd_affine(args) -> int:
    cfg = _load(args)
    ball = _ball(args, cfg)
    T = ball.T
    rows = []
    for q in args.q:
        ctx = CongruenceContext(ball.group, q) if q > 1 else None
        for K in args.K:
            if args.mode == "lower-bound":
                Q = AffineQuery(tuple(args.v), args.N or 4 * T, K, T, "lower-bound",
                                w=tuple(args.w), n_target=args.n_target or int(2 * T))
                cnt = affine_window_count(ball, Q)
            else:
                Q = AffineQuery(tuple(args.v), args.N or 2 * T, K, T, "vector-window",
                                y=tuple(args.y), q=q)
                cnt = vector_window_count(ball, Q, ctx)
            rows.append([args.mode, list(Q.v), list(Q.w), Q.n_target, list(Q.y), Q.N, K, q, cnt])
    _emit(args, "affine.csv", ["mode", "v", "w", "n_target", "y", "N", "K", "q", "count"], rows)
    return 0


def cmd_verify(args) -> int:
    suite = run_suite(quick=args.quick)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        write_json(Path(args.out), suite)
    for c in suite["checks"]:
        print(f"{'PASS' if c['passed'] else 'FAIL'} {c['identity']}: {c['max_residual']:.3e} < {c['threshold']:.1e}")
    return 0 if suite["passed"] else 1


def cmd_report(args) -> int:
    cfg = _load(args)
    bundle = run_experiment(cfg, out_dir=args.out, cache_dir=args.cache_dir, threads=args.threads)
    for a in bundle.assertions:
        print(f"{'PASS' if a.passed else 'FAIL'} {a.name}: value={a.value} threshold={a.threshold}")
    print(f"report written to {bundle.out_dir} (exit {bundle.exit_code})")
    return bundle.exit_code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypsector", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate an orbit ball")
    _common(p), _group_args(p)
    p.add_argument("--save", help="write the ball to this cache file")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("decompose", help="Cartan coordinates of an integer matrix")
    p.add_argument("entries", type=int, nargs=4, metavar=("A", "B", "C", "D"))
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("ps", help="critical exponent and boundary-measure Fourier data")
    _common(p), _group_args(p)
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--measure-csv", help="also export the atoms")
    p.set_defaults(func=cmd_ps)

    p = sub.add_parser("sectors", help="harmonic sector sums")
    _common(p), _group_args(p)
    p.add_argument("--harmonic", type=int, nargs=2, action="append", metavar=("N", "K"))
    p.set_defaults(func=cmd_sectors)

    p = sub.add_parser("affine", help="affine-form and vector window counts")
    _common(p), _group_args(p)
    p.add_argument("--mode", choices=["lower-bound", "vector-window"], default="lower-bound")
    p.add_argument("--v", type=int, nargs=2, default=[1, 0])
    p.add_argument("--w", type=int, nargs=2, default=[0, 3])
    p.add_argument("--y", type=int, nargs=2, default=[0, 0])
    p.add_argument("--n-target", type=int, default=None)
    p.add_argument("--N", type=float, default=None)
    p.add_argument("--K", type=float, nargs="+", default=[10, 20, 40])
    p.add_argument("--q", type=int, nargs="+", default=[1])
    p.set_defaults(func=cmd_affine)

    p = sub.add_parser("verify-specfun", help="special-function identity suite")
    _common(p)
    p.add_argument("--quick", action="store_true", help="smaller (n, k) grid")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("report", help="run a full experiment from a config")
    _common(p), _group_args(p)
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericAbort, NonFreeGroupError, OverflowError) as exc:
        print(f"numeric abort: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
