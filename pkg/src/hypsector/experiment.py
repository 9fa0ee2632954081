"""One configuration in, one deterministic directory of CSV/JSON artifacts out.

Exit codes: 0 all assertions pass, 1 an assertion failed, 2 configuration
error, 3 numeric abort (incomplete enumeration).
"""
from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .config import AffineBlock, ExperimentConfig
from .fitting import fit_power_law, fit_window
from .measure import (build_measure, default_s, estimate_delta_countfit,
                      estimate_delta_poincare, forbidden_mass, fourier_coefficient)
from .orbit import CongruenceContext, coset_counts, count_growth, reduce_mod_q, mul_mod
from .orbit_io import cached_ball
from .sectors import (AffineQuery, affine_window_count, sector_sum, vector_window_count)
from .specfun.gamma import log_gamma_ratio
from .specfun.verify import run_suite

SCHEMA_VERSION = 1
EXIT_OK, EXIT_ASSERT, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


class NumericAbort(RuntimeError):
    pass


@dataclass
class Assertion:
    name: str
    passed: bool
    value: float | None
    threshold: float | None
    note: str = ""


@dataclass
class ReportBundle:
    out_dir: Path
    exit_code: int
    summary: dict
    assertions: list = field(default_factory=list)


# ---------------------------------------------------------------- output helpers

def _num(x):
    if isinstance(x, (complex, np.complexfloating)):
        return [_num(x.real), _num(x.imag)]
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, dict):
        return {str(k): _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    return x


def write_json(path: Path, data) -> None:
    path.write_text(json.dumps(_num(data), indent=2, sort_keys=True) + "\n")


def write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(header)
        for row in rows:
            wr.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])


# ---------------------------------------------------------------- comparisons

def main_term_constant(delta: float) -> float:
    """pi^{1/2} Gamma(delta - 1/2) / Gamma(delta + 1)."""
    lv, sg = log_gamma_ratio([delta - 0.5], [delta + 1])
    return sg * math.sqrt(math.pi) * math.exp(lv)


def compare_ratios(sector_table: dict, mu_table: dict, delta: float) -> list[dict]:
    """Empirical value(n,k)/value(0,0) against mu^(2n) mu^(2k) / mu^(0)^2.

    ``sector_table`` maps (n, k) -> SectorSumRecord and must contain (0, 0);
    ``mu_table`` maps n -> mu^(2n). The absolute-constant column is
    informational: it depends on how the measure is normalized.
    """
    base = sector_table[(0, 0)].value
    mu0 = mu_table[0]
    rows = []
    for (n, k), rec in sorted(sector_table.items()):
        emp = rec.value / base
        pred = mu_table[n] * mu_table[k] / mu0**2
        rows.append({"n": n, "k": k, "empirical": emp, "predicted": pred,
                     "abs_error": abs(emp - pred),
                     "absolute_constant_info": main_term_constant(delta) * mu_table[n] * mu_table[k]})
    return rows


def default_row_target(ball, T: float):
    """First row (a, b) of the first element in enumeration order with 0.4T <= |(a,b)| <= 0.6T."""
    e = ball.entries.astype(float)
    r = np.hypot(e[:, 0], e[:, 1])
    idx = np.nonzero((r >= 0.4 * T) & (r <= 0.6 * T))[0]
    if len(idx) == 0:
        raise NumericAbort("no element with a row of size about T/2")
    i = int(idx[0])
    return int(ball.entries[i, 0]), int(ball.entries[i, 1])


def affine_block(ball, blk: AffineBlock, delta: float):
    """Rows for the (K, q) grid of one block plus the block's assertion."""
    T = ball.T
    rows = []
    if blk.mode == "lower-bound":
        N = blk.N if blk.N is not None else 4 * T
        n_t = blk.n_target if blk.n_target is not None else int(2 * T)
        counts = {}
        for K in blk.K:
            q = AffineQuery(tuple(blk.v), N, K, T, "lower-bound", w=tuple(blk.w), n_target=n_t)
            counts[K] = affine_window_count(ball, q)
        K0 = blk.K[0]
        dev = 0.0
        for K in blk.K:
            rel = counts[K] * K / (counts[K0] * K0) if counts[K0] else math.inf
            dev = max(dev, abs(rel - 1))
            rows.append([blk.mode, K, 1, counts[K], counts[K] * K / T ** (2 * delta), rel])
        a = Assertion(f"window_1_over_K[{blk.v},{blk.w},n={n_t}]", dev < blk.scaling_tol,
                      dev, blk.scaling_tol)
        return rows, a
    N = blk.N if blk.N is not None else 2 * T
    y = tuple(blk.y) if blk.y is not None else default_row_target(ball, T)
    stat = {}
    for q in blk.q:
        ctx = CongruenceContext(ball.group, int(q)) if q > 1 else None
        for K in blk.K:
            Q = AffineQuery(tuple(blk.v), N, K, T, "vector-window", y=y, q=int(q))
            c = vector_window_count(ball, Q, ctx)
            stat[(K, q)] = c * K ** (1 + delta) * q**2 / T ** (2 * delta)
            rows.append([blk.mode, K, q, c, stat[(K, q)], math.nan])
    K0 = blk.K[0]
    ref = stat[(K0, 1)] if (K0, 1) in stat else max(stat.values())
    worst = max(v / ref for v in stat.values()) if ref > 0 else math.inf
    a = Assertion(f"vector_window_bound[{blk.v},y={y}]", worst <= blk.bound_factor,
                  worst, blk.bound_factor, "max normalized statistic / value at (K0, q=1)")
    return rows, a


def homomorphism_check(ball, q: int, rng, pairs: int = 1000) -> bool:
    idx = rng.integers(0, len(ball), size=(pairs, 2))
    for i, j in idx:
        g, h = ball.element(int(i)), ball.element(int(j))
        if reduce_mod_q(g @ h, q) != mul_mod(reduce_mod_q(g, q), reduce_mod_q(h, q), q):
            return False
    return True


# ---------------------------------------------------------------- driver

def run_experiment(cfg: ExperimentConfig, out_dir=None, cache_dir=None,
                   threads: int | None = None) -> ReportBundle:
    out = Path(out_dir if out_dir is not None else cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    asserts: list[Assertion] = []
    sections: dict = {}
    rng = np.random.default_rng(cfg.seed)

    group = cfg.group.presentation()
    T_max = float(cfg.orbit.T_max)
    ball = cached_ball(group, T_max, cache_dir)
    if not ball.complete:
        raise NumericAbort(f"enumeration of {group.label} at T={T_max} is not certified complete")

    # orbit growth and exponents
    grid = cfg.orbit.grid()
    counts = count_growth(ball, grid)
    write_csv(out / "orbit_stats.csv", ["T", "count"], counts)
    cf = estimate_delta_countfit(counts)
    pc = estimate_delta_poincare(ball)
    top = count_growth(ball, np.logspace(math.log10(T_max) - 1, math.log10(T_max), 6))
    top_fit = fit_power_law(top)
    delta = cf.delta_hat
    exps = {"count_fit": asdict(cf), "poincare": asdict(pc), "top_decade_fit": asdict(top_fit)}
    lo_dec, hi_dec = math.log10(grid[0]), math.log10(grid[-1])
    if hi_dec - lo_dec >= 2 - 1e-9:
        mid = 10 ** (hi_dec - 1)
        try:
            f1 = fit_window(counts, 10 ** (hi_dec - 2), mid).exponent / 2
            f2 = fit_window(counts, mid, 10 ** hi_dec).exponent / 2
            exps["window_stability"] = {"delta_lower": f1, "delta_upper": f2,
                                        "flagged": abs(f1 - f2) >= 0.03}
        except ValueError:
            pass
    write_json(out / "exponents.json", exps)
    asserts.append(Assertion("delta_estimators_agree", abs(cf.delta_hat - pc.delta_hat) < cfg.checks.delta_agreement,
                             abs(cf.delta_hat - pc.delta_hat), cfg.checks.delta_agreement))
    asserts.append(Assertion("delta_above_half", min(cf.delta_hat, pc.delta_hat) > 0.5,
                             min(cf.delta_hat, pc.delta_hat), 0.5))
    asserts.append(Assertion("top_decade_r_squared", top_fit.r_squared > cfg.checks.r_squared_min,
                             top_fit.r_squared, cfg.checks.r_squared_min))

    # boundary measure
    s = default_s(delta, T_max) if cfg.ps.s_offset == "auto" else delta + float(cfg.ps.s_offset)
    meas = build_measure(ball, s, delta_hat=delta)
    M = int(cfg.ps.fourier_max)
    ns = list(range(-M, M + 1))
    mu = dict(zip(ns, fourier_coefficient(meas, np.array(ns)).tolist()))
    write_csv(out / "mu.csv", ["n", "re", "im"], [[n, mu[n].real, mu[n].imag] for n in ns])
    ps_info = {"s_used": s, "atoms": len(meas), "forbidden_mass": forbidden_mass(meas, group)}
    if cfg.ps.stability_T:
        small = build_measure(ball.restrict(float(cfg.ps.stability_T)), delta_hat=delta)
        diff = float(np.max(np.abs(fourier_coefficient(small, np.array(ns)) - np.array([mu[n] for n in ns]))))
        ps_info["stability_max_abs_diff"] = diff
        asserts.append(Assertion("mu_stability", diff < cfg.checks.mu_stability_tol, diff,
                                 cfg.checks.mu_stability_tol))
    sections["ps"] = ps_info

    # sector sums and ratio comparison
    harm = {(0, 0)}
    for n, k in cfg.sectors.harmonics:
        harm |= {(int(n), int(k)), (-int(n), -int(k))}
    if any(abs(n) > M or abs(k) > M for n, k in harm):
        raise NumericAbort("harmonics exceed ps.fourier_max")
    table = {nk: sector_sum(ball, *nk) for nk in sorted(harm)}
    write_csv(out / "sectors.csv", ["n", "k", "T", "re", "im", "raw_count"],
              [[r.n, r.k, r.T, r.value.real, r.value.imag, r.raw_count] for r in table.values()])
    if delta > 0.5:
        comp = compare_ratios(table, mu, delta)
        write_csv(out / "ratios.csv",
                  ["n", "k", "empirical_re", "empirical_im", "predicted_re", "predicted_im",
                   "abs_error", "absolute_constant_info_re", "absolute_constant_info_im"],
                  [[c["n"], c["k"], c["empirical"].real, c["empirical"].imag, c["predicted"].real,
                    c["predicted"].imag, c["abs_error"], c["absolute_constant_info"].real,
                    c["absolute_constant_info"].imag] for c in comp])
        worst = max(c["abs_error"] for c in comp)
        asserts.append(Assertion("sector_ratio", worst < cfg.sectors.ratio_tol, worst, cfg.sectors.ratio_tol))
        sections["ratios"] = "done"
    else:
        sections["ratios"] = "aborted: critical exponent estimate <= 1/2, main-term asymptotics need delta > 1/2"

    # affine windows
    if cfg.affine:
        rows = []
        for blk in cfg.affine:
            r, a = affine_block(ball, blk, delta)
            rows += r
            asserts.append(a)
        write_csv(out / "affine.csv", ["mode", "K", "q", "count", "normalized", "ratio_to_first_K"], rows)
        sections["affine"] = "done"
    else:
        sections["affine"] = "skipped"

    # congruence cosets
    moduli = [int(q) for q in cfg.congruence.moduli if int(q) > 1]
    if moduli:
        cT = float(cfg.congruence.coset_T or T_max)
        sub = ball.restrict(cT) if cT < T_max else ball
        rows = []
        for q in moduli:
            ctx = CongruenceContext(group, q, cfg.congruence.ramification)
            cnt = coset_counts(sub, ctx)
            N = len(sub)
            dev = np.abs(cnt - N / ctx.index)
            rows += [[q, i, int(c), N / ctx.index, float(d / math.sqrt(N))] for i, (c, d) in enumerate(zip(cnt, dev))]
            thr = cfg.congruence.sigma_factor
            asserts.append(Assertion(f"coset_uniformity[q={q}]", float(dev.max()) < thr * math.sqrt(N),
                                     float(dev.max() / math.sqrt(N)), thr, "deviation in units of sqrt(N)"))
            asserts.append(Assertion(f"reduction_homomorphism[q={q}]", homomorphism_check(sub, q, rng),
                                     None, None))
        write_csv(out / "congruence.csv", ["q", "coset", "count", "expected", "deviation_over_sqrtN"], rows)
        sections["congruence"] = "done"
    else:
        sections["congruence"] = "skipped"

    # special-function identities
    if cfg.specfun.enabled:
        suite = run_suite(quick=cfg.specfun.quick)
        write_json(out / "specfun.json", suite)
        for c in suite["checks"]:
            asserts.append(Assertion(f"specfun:{c['identity']}", c["passed"], c["max_residual"], c["threshold"]))
        sections["specfun"] = "done"
    else:
        sections["specfun"] = "skipped"

    code = EXIT_OK if all(a.passed for a in asserts) else EXIT_ASSERT
    summary = {
        "schema_version": SCHEMA_VERSION,
        "group": {"label": group.label, "generators": [list(g.entries) for g in group.generators]},
        "T_max": T_max,
        "ball_size": len(ball),
        "complete": bool(ball.complete),
        "delta_hat": {"count_fit": cf.delta_hat, "poincare": pc.delta_hat},
        "seed": cfg.seed,
        "threads_requested": threads,
        "sections": sections,
        "assertions": [asdict(a) for a in asserts],
        "exit_code": code,
    }
    write_json(out / "summary.json", summary)
    return ReportBundle(out, code, summary, asserts)
