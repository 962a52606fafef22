"""Invariant and oracle suites, one per module, reported as OracleReports."""

from __future__ import annotations

import math

import numpy as np

from . import asymptotics as asy
from . import dist
from .market import (
    REGIMES, CapacitatedGeneral, CapacitatedUnit, MarketConfig, Regime, Uncapacitated,
    average_utilities, run_capacitated_trial, run_uncapacitated_trial, simulate_batch,
    simulate_fixed_instance,
)
from .oracles import (
    OracleReport, brute_force_capacitated, crosscheck_sampling_modes, quad_max_moment,
)
from .sweep import SweepSpec, rows_to_csv, run_sweep
from .welfare import analytic_welfare, mean_and_stderr

SUITES = ("dist", "market", "welfare", "asymptotics", "oracles", "expcli")

_SPECS = (dist.make_pareto(1, 2), dist.make_exponential(1, 1), dist.make_uniform(0, 1))


def _z_report(name, reference, values, limit=3.0):
    mean, se = mean_and_stderr(values)
    z = 0.0 if se == 0 else (mean - reference) / se
    return OracleReport.compare(name, 0.0, abs(z), limit)


def check_dist() -> list:
    out = []
    for spec in _SPECS:
        lab = dist.label(spec)
        for m in (1, 2, 10, 100, 1000):
            exact = dist.exact_max_moment(spec, m)
            quad = quad_max_moment(spec, m, 1e-9)
            out.append(OracleReport.compare(f"{lab} max-of-{m} exact vs quadrature (relative)",
                                            0.0, abs(exact / quad - 1.0), 1e-6))
        out.append(OracleReport.compare(f"{lab} max-of-1 equals mean", spec.mean(),
                                        dist.exact_max_moment(spec, 1), 1e-12 * spec.mean()))
        grows = np.diff(dist.exact_max_moment(spec, np.arange(1, 200)))
        out.append(OracleReport.compare(f"{lab} max moment increasing in m", 0.0,
                                        float(np.sum(grows <= 0)), 0.0))
        stream = dist.RandomStream.from_seed(11)
        for m in (2, 10, 100):
            draws = dist.sample(spec, stream.spawn(m), 100_000 * m).reshape(100_000, m)
            out.append(_z_report(f"{lab} monte carlo max-of-{m}",
                                 dist.exact_max_moment(spec, m), draws.max(axis=1)))
    ratio = dist.exact_max_moment(dist.make_pareto(1, 2), 10**6) / asy.pareto_max_asymptote(1, 2, 10**6)
    out.append(OracleReport.compare("pareto max vs asymptote at n=1e6", 1.0, ratio, 0.01))
    return out


def check_market() -> list:
    p2, e1 = dist.make_pareto(1, 2), dist.make_exponential(1, 1)
    out = [
        crosscheck_sampling_modes(MarketConfig(8, 0.5, CapacitatedUnit(), p2, p2, base_seed=3), 10_000),
        crosscheck_sampling_modes(MarketConfig(64, 1.0, CapacitatedUnit(), e1, e1, base_seed=3), 10_000),
    ]
    configs = [
        MarketConfig(15, 0.4, Uncapacitated(), p2, p2, base_seed=5),
        MarketConfig(9, 0.4, CapacitatedUnit(), p2, e1, base_seed=5),
        MarketConfig(9, 0.7, CapacitatedGeneral((4, 2, 3)), e1, p2, base_seed=5,
                     sampling_mode="deferred"),
    ]
    for cfg in configs:
        batch = simulate_batch(cfg, range(25))
        worst = 0.0
        for t in range(25):
            if cfg.capacitated:
                ref = {r: o.average_utility for r, o in run_capacitated_trial(cfg, t).items()}
            else:
                ref = run_uncapacitated_trial(cfg, t)
            for r in REGIMES:
                worst = max(worst, abs(ref[r] - batch.average_utility(r)[0, t]))
        out.append(OracleReport.compare(
            f"batch kernel vs per-trial route ({cfg.supply.kind}, {cfg.sampling_mode.value})",
            0.0, worst, 1e-12))
    cfg = MarketConfig(30, 0.0, CapacitatedUnit(), p2, p2, base_seed=2)
    b = simulate_batch(cfg, range(200))
    out.append(OracleReport.compare("rho=0 quality and full pick the same items", 0.0,
                                    float(np.sum(b.quality_item != b.full_item[0])), 0.0))
    decreasing = np.diff(b.quality_q, axis=1) <= 0
    out.append(OracleReport.compare("only-quality picks nonincreasing q", 0.0,
                                    float(np.sum(~decreasing)), 0.0))
    again = simulate_batch(cfg, range(200))
    out.append(OracleReport.compare("repeat run bit-identical", 0.0,
                                    float(np.sum(again.full_phi != b.full_phi)), 0.0))
    return out


def check_welfare() -> list:
    out = []
    p2 = dist.make_pareto(1, 2)
    e1 = dist.make_exponential(1, 1)
    for supply, n in ((Uncapacitated(), 20), (CapacitatedUnit(), 20)):
        for spec in (p2, e1):
            cfg = MarketConfig(n, 0.5, supply, spec, spec, base_seed=8)
            util = average_utilities(cfg, np.arange(20_000))
            for r in (Regime.NO_INFORMATION, Regime.ONLY_QUALITY):
                exact = analytic_welfare(supply.kind, r, cfg)
                out.append(_z_report(f"{supply.kind} {spec.family} {r.value} welfare vs closed form",
                                     exact, util[r][0]))
            d_nq = util[Regime.ONLY_QUALITY][0] - util[Regime.NO_INFORMATION][0]
            d_qu = util[Regime.FULL_INFORMATION][0] - util[Regime.ONLY_QUALITY][0]
            d_nu = util[Regime.FULL_INFORMATION][0] - util[Regime.NO_INFORMATION][0]
            out.append(OracleReport.compare(f"{supply.kind} {spec.family} gap additivity", 0.0,
                                            float(np.max(np.abs(d_nq + d_qu - d_nu))), 1e-9))
            for name, d in (("none<=quality", d_nq), ("quality<=full", d_qu)):
                mean, se = mean_and_stderr(d)
                out.append(OracleReport.compare(f"{supply.kind} {spec.family} {name}", 0.0,
                                                max(0.0, -mean / se if se else -mean), 3.0))
    return out


def check_asymptotics() -> list:
    out = []
    p2 = dist.make_pareto(1, 2)
    for rho in (0.0, 0.3, 0.7, 1.0):
        b = asy.capacitated_gap_bounds(p2, p2, rho, 100)
        out.append(OracleReport.compare(f"bound width equals (1-rho) mu_q at rho={rho}",
                                        (1 - rho) * p2.mean(), b.upper - b.lower, 1e-12))
    for spec in _SPECS:
        pred = asy.predict_gap("cap", "none", "quality", spec, spec, 0.4, 100)
        out.append(OracleReport.compare(f"capacitated ranking gain {spec.family} is zero",
                                        0.0, pred.predicted_gap, 0.0))
    worst = 0.0
    for alpha in (1.5, 2.0, 5.0, 50.0):
        for rho in np.linspace(0, 1, 21):
            pred = asy.predict_gap("uncap", "quality", "full", dist.make_pareto(1, alpha),
                                   dist.make_pareto(1, alpha), rho, 1000)
            worst = max(worst, abs(pred.leading_value - asy.g_function(rho, alpha)))
    out.append(OracleReport.compare("equal-tail leading value matches g", 0.0, worst, 1e-12))
    gaps = [max(asy.g_function(r, 2) - asy.g_function(r, 5), asy.g_function(r, 5)
                - asy.g_function(r, 64)) for r in np.linspace(0.01, 0.99, 50)]
    out.append(OracleReport.compare("g nonincreasing in alpha", 0.0,
                                    float(sum(g < -1e-15 for g in gaps)), 0.0))
    ratio = asy.pareto_max_finite_n(1, 2, 10**6) / asy.pareto_max_asymptote(1, 2, 10**6)
    out.append(OracleReport.compare("finite-n over asymptotic normalizer at 1e6", 1.0, ratio, 0.01))
    b = asy.capacitated_gap_bounds(p2, p2, 1.0, 10_000)
    norm = asy.predict_gap("cap", "quality", "full", p2, p2, 1.0, 10_000).normalizer
    out.append(OracleReport.compare("capacitated upper bound over normalizer at 1e4", 1.0,
                                    b.upper / norm, 0.02))
    return out


def check_oracles() -> list:
    out = []
    g = np.random.default_rng(17)
    worst_z = 0.0
    for i in range(10):
        m = int(g.integers(2, 7))
        q = g.integers(0, 3, size=m).astype(float)
        phi = g.integers(0, 3, size=(m, m)).astype(float)
        sim = simulate_fixed_instance(q, phi, 0.5, 4000, base_seed=i)
        for r in REGIMES:
            exact = brute_force_capacitated(q, phi, 0.5, r)
            mean, se = mean_and_stderr(sim[r])
            z = abs(mean - exact) / se if se else abs(mean - exact) * 1e12
            worst_z = max(worst_z, z)
    out.append(OracleReport.compare("brute force vs simulated regime randomness (max |z|)",
                                    0.0, worst_z, 3.0))
    q = g.random(5)
    phi = g.random((5, 5))
    perm = g.permutation(5)
    for r in REGIMES:
        a = brute_force_capacitated(q, phi, 0.6, r)
        b = brute_force_capacitated(q[perm], phi[:, perm], 0.6, r)
        out.append(OracleReport.compare(f"brute force relabeling symmetry ({r.value})", a, b, 1e-12))
    return out


def check_expcli() -> list:
    spec = SweepSpec("cap", dist.make_pareto(1, 2), dist.make_exponential(1, 1),
                     rho_grid=(0.0, 0.5, 1.0), n_grid=(6, 12), trials=2500, base_seed=4)
    one = rows_to_csv(run_sweep(spec, workers=1))
    two = rows_to_csv(run_sweep(spec, workers=2))
    rows = run_sweep(spec)
    out = [
        OracleReport.compare("sweep output identical for 1 and 2 workers", 0.0,
                             float(one != two), 0.0),
        OracleReport.compare("sweep row count", 3 * 2 * 2, len(rows), 0.0),
    ]
    worst = max(abs(r["normalized"] * r["normalizer"] - r["delta"]) /
                max(abs(r["delta"]), 1e-300) for r in rows)
    out.append(OracleReport.compare("normalized times normalizer recovers delta", 0.0,
                                    worst, 4 * np.finfo(float).eps))
    return out


_CHECKS = {
    "dist": check_dist, "market": check_market, "welfare": check_welfare,
    "asymptotics": check_asymptotics, "oracles": check_oracles, "expcli": check_expcli,
}


def validate(suite: str = "all") -> tuple:
    """Run one suite (or all); returns (exit status, reports).  Status 2 on any failure."""
    names = SUITES if suite == "all" else (suite,)
    reports = []
    for name in names:
        if name not in _CHECKS:
            raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
        reports.extend(_CHECKS[name]())
    ok = all(r.passed and not math.isnan(r.abs_error) for r in reports)
    return (0 if ok else 2), reports
