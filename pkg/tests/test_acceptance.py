"""Acceptance criteria, one test each, at the stated tolerances.

Each test records a single ``AC<k> PASS|FAIL`` line (shown in the pytest
terminal summary) before asserting.  Run directly with
``python tests/test_acceptance.py`` to get just the lines.
"""

import time
from dataclasses import replace
from functools import lru_cache

import numpy as np
import pytest

from infomarket import asymptotics as asy
from infomarket import dist
from infomarket import reference_data as ref
from infomarket.market import CapacitatedUnit, MarketConfig, REGIMES, simulate_fixed_instance
from infomarket.oracles import brute_force_capacitated, crosscheck_sampling_modes, quad_max_moment
from infomarket.presets import get_preset
from infomarket.rng import RandomStream
from infomarket.sweep import DEFAULT_RHO_GRID, SweepSpec, rows_to_csv, run_sweep
from infomarket.welfare import mean_and_stderr

P2 = dist.make_pareto(1, 2)
E1 = dist.make_exponential(1, 1)
U01 = dist.make_uniform(0, 1)
FAMILIES = (P2, E1, U01)
MOMENT_ORDERS = (1, 2, 10, 100, 1000)


def _by_rho(rows, gap):
    return {r["rho"]: r for r in rows if r["gap"] == gap}


@lru_cache(maxsize=None)
def _timed_preset_sweep(preset_id, n):
    """Rows of one preset at one n (both gaps), with wall time."""
    preset = get_preset(preset_id)
    spec = replace(preset.sweep, n_grid=(n,), trials=preset.trials_for(n),
                   gaps=("none:quality", "quality:full"))
    t0 = time.perf_counter()
    rows = run_sweep(spec)
    return rows, time.perf_counter() - t0


def _line(k, ok, text):
    return f"AC{k} {'PASS' if ok else 'FAIL'}: {text}"


def criterion_1():
    rows, secs = _timed_preset_sweep("cap-pareto-a", 100)
    rank = _by_rho(rows, "none:quality")
    worst_rho = max(rank, key=lambda r: abs(rank[r]["delta"]))
    worst = abs(rank[worst_rho]["delta"])
    ok = worst <= 0.03 and secs <= 60
    return ok, (f"capacitated pareto ranking gain, max |delta| {worst:.4f} at rho={worst_rho} "
                f"(tol 0.03, stderr there {rank[worst_rho]['stderr']:.4f}); sweep {secs:.1f}s (limit 60s)")


def criterion_2():
    rows, _ = _timed_preset_sweep("cap-pareto-b", 100)
    pers = _by_rho(rows, "quality:full")
    dev_theory = max(abs(r["normalized"] - rho) for rho, r in pers.items())
    at_half, at_one = pers[0.5]["normalized"], pers[1.0]["normalized"]
    ok = dev_theory <= 0.03 and abs(at_half - 0.4968) <= 0.03 and abs(at_one - 1.0093) <= 0.03
    return ok, (f"capacitated pareto personalization, gamma-ratio normalized: max |value - rho| "
                f"{dev_theory:.4f}; rho=0.5 {at_half:.4f} vs 0.4968; rho=1 {at_one:.4f} vs 1.0093 "
                f"(tol 0.03); finite-n excess normalized rho=1 {pers[1.0]['normalized_excess']:.4f}")


def criterion_3():
    rows, _ = _timed_preset_sweep("cap-exp-b", 100)
    pers = _by_rho(rows, "quality:full")
    rank = _by_rho(rows, "none:quality")
    at_half, at_one = pers[0.5]["normalized"], pers[1.0]["normalized"]
    worst_rank = max(abs(r["delta"]) for r in rank.values())
    ok = abs(at_half - 0.4727) <= 0.03 and abs(at_one - 1.0083) <= 0.03 and worst_rank <= 0.03
    return ok, (f"capacitated exponential, delta/ln n: rho=0.5 {at_half:.4f} vs 0.4727, rho=1 "
                f"{at_one:.4f} vs 1.0083 (tol 0.03); max |ranking delta| {worst_rank:.4f} (tol 0.03)")


def criterion_4():
    rows, _ = _timed_preset_sweep("uncap-exp-a", 100)
    rank = _by_rho(rows, "none:quality")
    pers = _by_rho(rows, "quality:full")
    dev_rank = max(abs(r["normalized"] - (1 - rho)) for rho, r in rank.items())
    at_q, at_3q = pers[0.25]["normalized"], pers[0.75]["normalized"]
    curve = np.array([pers[rho]["normalized"] for rho in DEFAULT_RHO_GRID])
    slack = 3 * np.array([pers[rho]["normalized_stderr"] for rho in DEFAULT_RHO_GRID])
    # Phase-transition shape: flat-then-rising, i.e. nondecreasing and convex across the kink.
    monotone = bool(np.all(np.diff(curve) >= -(slack[1:] + slack[:-1])))
    kinked = (curve[-1] - curve[10]) > (curve[10] - curve[0])
    ok = dev_rank <= 0.03 and abs(at_q - 0.0110) <= 0.02 and abs(at_3q - 0.5102) <= 0.03 \
        and monotone and kinked
    return ok, (f"uncapacitated exponential, delta/ln n: ranking max |value-(1-rho)| {dev_rank:.4f} "
                f"(tol 0.03, rho=0.5 {rank[0.5]['normalized']:.4f}); personalization rho=0.25 "
                f"{at_q:.4f} vs 0.0110 (tol 0.02), rho=0.75 {at_3q:.4f} vs 0.5102 (tol 0.03); "
                f"monotone={monotone} kinked={kinked}")


def _mad_from_g(rows, alpha):
    pers = _by_rho(rows, "quality:full")
    return float(np.mean([abs(r["normalized"] - asy.g_function(rho, alpha)) for rho, r in pers.items()]))


def criterion_5():
    rows100, _ = _timed_preset_sweep("uncap-pareto-b-alpha2", 100)
    rows1000, _ = _timed_preset_sweep("uncap-pareto-b-alpha2", 1000)
    at_one = _by_rho(rows1000, "quality:full")[1.0]["normalized"]
    mad100, mad1000 = _mad_from_g(rows100, 2), _mad_from_g(rows1000, 2)
    ok = abs(at_one - 1.0004) <= 0.05 and mad1000 < mad100
    return ok, (f"uncapacitated pareto alpha=2: n=1000 rho=1 {at_one:.4f} vs 1.0004 (tol 0.05); "
                f"mean |value - g| n=100 {mad100:.4f} -> n=1000 {mad1000:.4f}")


def criterion_6():
    t0 = time.perf_counter()
    mads = {}
    rows = {}
    for n in (1000, 10_000, 100_000):
        rows[n], _ = _timed_preset_sweep("uncap-pareto-b-alpha5", n)
        mads[n] = _mad_from_g(rows[n], 5)
    secs = time.perf_counter() - t0
    at_one = _by_rho(rows[100_000], "quality:full")[1.0]["normalized"]
    seq = [mads[n] for n in (1000, 10_000, 100_000)]
    ok = seq[0] >= seq[1] >= seq[2] and abs(at_one - 0.9143) <= 0.05 and secs <= 300
    return ok, (f"uncapacitated pareto alpha=5: mean |value - g| " +
                " -> ".join(f"{m:.4f}" for m in seq) +
                f" over n=1e3,1e4,1e5; n=1e5 rho=1 {at_one:.4f} vs 0.9143 (tol 0.05); {secs:.0f}s (limit 300s)")


def criterion_7():
    rows, _ = _timed_preset_sweep("bounded-b", 100)
    pers = _by_rho(rows, "quality:full")
    rank = _by_rho(rows, "none:quality")
    at_one = pers[1.0]["delta"]
    outside = []
    for rho, r in pers.items():
        b = asy.capacitated_gap_bounds(U01, U01, rho, 100)
        if not (b.lower - 3 * r["stderr"] <= r["delta"] <= b.upper + 3 * r["stderr"]):
            outside.append(rho)
    worst_rank = max(abs(r["delta"]) for r in rank.values())
    ok = abs(at_one - 0.4857) <= 0.02 and not outside and worst_rank <= 0.03
    b1 = asy.capacitated_gap_bounds(U01, U01, 1.0, 100)
    return ok, (f"uniform capacitated: rho=1 delta {at_one:.4f} vs 0.4857 (tol 0.02; bracket at rho=1 "
                f"[{b1.lower:.4f}, {b1.upper:.4f}]); grid points outside bracket +-3se: {outside or 'none'}; "
                f"max |ranking delta| {worst_rank:.4f} (tol 0.03)")


def criterion_8():
    worst_rel, worst_z = 0.0, 0.0
    stream = RandomStream.from_seed(2026)
    samples = 100_000
    for spec in FAMILIES:
        for m in MOMENT_ORDERS:
            exact = float(dist.exact_max_moment(spec, m))
            worst_rel = max(worst_rel, abs(exact / quad_max_moment(spec, m, 1e-9) - 1))
            child = stream.spawn(m)
            chunk = max(1, 2_000_000 // m)
            maxima = np.concatenate([
                dist.sample(spec, child, min(chunk, samples - s) * m).reshape(-1, m).max(axis=1)
                for s in range(0, samples, chunk)
            ])
            mean, se = mean_and_stderr(maxima)
            worst_z = max(worst_z, abs(mean - exact) / se)
    ok = worst_rel < 1e-6 and worst_z < 3
    return ok, (f"max moments: worst relative error vs quadrature {worst_rel:.2e} (tol 1e-6); "
                f"worst |z| vs Monte Carlo (1e5 samples) {worst_z:.2f} (tol 3) over 3 families x m in {MOMENT_ORDERS}")


def criterion_9():
    reps = [
        crosscheck_sampling_modes(MarketConfig(8, 0.5, CapacitatedUnit(), P2, P2), 10_000),
        crosscheck_sampling_modes(MarketConfig(64, 1.0, CapacitatedUnit(), E1, E1), 10_000),
    ]
    ok = all(r.tested_value < 3 for r in reps)
    return ok, "upfront vs deferred full-information welfare: " + ", ".join(
        f"{r.name} |z|={r.tested_value:.2f}" for r in reps) + " (tol 3)"


def criterion_10():
    gen = np.random.default_rng(5)
    worst, worst_case = 0.0, None
    for i in range(50):
        m = int(gen.integers(1, 7))
        q = gen.integers(0, 3, size=m).astype(float)
        phi = gen.integers(0, 3, size=(m, m)).astype(float)
        rho = float(gen.choice([0.0, 0.25, 0.5, 0.75, 1.0]))
        sim = simulate_fixed_instance(q, phi, rho, 10_000, base_seed=i)
        for regime in REGIMES:
            exact = brute_force_capacitated(q, phi, rho, regime)
            mean, se = mean_and_stderr(sim[regime])
            z = abs(mean - exact) / se if se > 0 else (0.0 if abs(mean - exact) < 1e-12 else np.inf)
            if z > worst:
                worst, worst_case = z, (i, regime.value)
    ok = worst < 3
    return ok, (f"brute force vs simulator on 50 tied instances (n<=6, 3 regimes): worst |z| "
                f"{worst:.2f} at instance/regime {worst_case} (tol 3)")


def criterion_11():
    specs = [
        SweepSpec("cap", P2, E1, rho_grid=(0.0, 0.5, 1.0), n_grid=(7, 12), trials=4500, base_seed=11),
        SweepSpec("cap", E1, P2, rho_grid=(0.2, 0.9), n_grid=(9,), trials=2100, base_seed=12,
                  sampling_mode="deferred"),
        SweepSpec("uncap", P2, P2, rho_grid=(0.0, 1.0), n_grid=(50,), trials=5000, base_seed=13),
    ]
    mismatched = []
    for k, spec in enumerate(specs):
        outputs = {rows_to_csv(run_sweep(spec, workers=w)) for w in (1, 2, 4)}
        outputs.add(rows_to_csv(run_sweep(spec, workers=1)))
        if len(outputs) != 1:
            mismatched.append(k)
    ok = not mismatched
    return ok, f"sweep reruns with workers 1, 2, 4 byte-identical: {'yes' if ok else mismatched}"


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 12)}
IDS = [
    "AC1-cap-pareto-ranking-zero", "AC2-cap-pareto-personalization", "AC3-cap-exponential",
    "AC4-uncap-exponential", "AC5-uncap-pareto-alpha2", "AC6-uncap-pareto-alpha5-convergence",
    "AC7-uniform-bracket", "AC8-max-moment-oracles", "AC9-deferred-sampling",
    "AC10-brute-force", "AC11-determinism",
]


@pytest.mark.parametrize("k", sorted(CRITERIA), ids=IDS)
def test_acceptance_criterion(k, acceptance):
    ok, text = CRITERIA[k]()
    acceptance(_line(k, ok, text))
    assert ok, text


@pytest.mark.parametrize("points, rho, target", [
    (ref.CAP_PARETO_B_100, 0.5, 0.4968), (ref.CAP_PARETO_B_100, 1.0, 1.0093),
    (ref.CAP_EXP_B_100, 0.5, 0.4727), (ref.CAP_EXP_B_100, 1.0, 1.0083),
    (ref.UNCAP_EXP_A_100, 0.5, 0.5013), (ref.UNCAP_EXP_B_100, 0.25, 0.0110),
    (ref.UNCAP_EXP_B_100, 0.75, 0.5102), (ref.UNCAP_PARETO_B2_1000, 1.0, 1.0004),
    (ref.UNCAP_PARETO_B5_100000, 1.0, 0.9143), (ref.BOUNDED_B_100, 1.0, 0.4857),
])
def test_targets_are_rounded_figure_points(points, rho, target):
    assert round(dict(points)[rho], 4) == target


if __name__ == "__main__":
    for k, fn in CRITERIA.items():
        print(_line(k, *fn()), flush=True)
