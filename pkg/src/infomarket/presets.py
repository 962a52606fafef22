"""Figure-reproduction presets: sweeps plus the published plotted points."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from . import reference_data as ref
from .asymptotics import g_function
from .dist import make_exponential, make_pareto, make_uniform
from .errors import DomainError
from .market import Regime
from .sweep import DEFAULT_RHO_GRID, SweepSpec, run_sweep

RANK = (Regime.NO_INFORMATION, Regime.ONLY_QUALITY)
PERSONAL = (Regime.ONLY_QUALITY, Regime.FULL_INFORMATION)


@dataclass
class FigurePreset:
    id: str
    description: str
    sweep: Optional[SweepSpec]
    # n -> ((rho, value), ...) as plotted in the published figure.
    reference_points: dict = field(default_factory=dict)
    # n -> trial budget; falls back to sweep.trials.
    trials_by_n: dict = field(default_factory=dict)
    # Analytic curves only (no simulation): name -> rho -> value.
    curves: dict = field(default_factory=dict)

    def trials_for(self, n: int) -> int:
        return self.trials_by_n.get(n, self.sweep.trials)


def _sweep(setting, q, phi, gap, n_grid, trials):
    return SweepSpec(setting=setting, dist_q=q, dist_phi=phi, rho_grid=DEFAULT_RHO_GRID,
                     n_grid=tuple(n_grid), trials=trials, gaps=(gap,))


def _build() -> dict:
    p2, p5 = make_pareto(1, 2), make_pareto(1, 5)
    e1, u01 = make_exponential(1, 1), make_uniform(0, 1)
    presets = [
        FigurePreset("uncap-pareto-a", "single agent, pareto(1,2) both, ranking gain",
                     _sweep("uncap", p2, p2, RANK, [100], 100_000),
                     {100: ref.UNCAP_PARETO_A_100}),
        FigurePreset("uncap-pareto-g", "limit constant g(rho; alpha) for alpha in 2, 5, 10, inf",
                     None,
                     curves={
                         "alpha=2": lambda r: g_function(r, 2),
                         "alpha=5": lambda r: g_function(r, 5),
                         "alpha=10": lambda r: g_function(r, 10),
                         "alpha=inf": lambda r: max(2 * r - 1, 0.0),
                     }),
        FigurePreset("uncap-pareto-b-alpha2", "single agent, pareto(1,2) both, personalization gain",
                     _sweep("uncap", p2, p2, PERSONAL, [100, 1000], 100_000),
                     {100: ref.UNCAP_PARETO_B2_100, 1000: ref.UNCAP_PARETO_B2_1000}),
        FigurePreset("uncap-pareto-b-alpha5", "single agent, pareto(1,5) both, personalization gain",
                     _sweep("uncap", p5, p5, PERSONAL, [1000, 10_000, 100_000], 100_000),
                     {1000: ref.UNCAP_PARETO_B5_1000, 10_000: ref.UNCAP_PARETO_B5_10000,
                      100_000: ref.UNCAP_PARETO_B5_100000},
                     trials_by_n={10_000: 20_000, 100_000: 4_000}),
        FigurePreset("uncap-exp-a", "single agent, exponential(1) both, ranking gain",
                     _sweep("uncap", e1, e1, RANK, [100], 100_000),
                     {100: ref.UNCAP_EXP_A_100}),
        FigurePreset("uncap-exp-b", "single agent, exponential(1) both, personalization gain",
                     _sweep("uncap", e1, e1, PERSONAL, [100], 100_000),
                     {100: ref.UNCAP_EXP_B_100}),
        FigurePreset("cap-pareto-a", "unit capacities, pareto(1,2) both, ranking gain",
                     _sweep("cap", p2, p2, RANK, [100], 2000), {100: ref.CAP_PARETO_A_100}),
        FigurePreset("cap-pareto-b", "unit capacities, pareto(1,2) both, personalization gain",
                     _sweep("cap", p2, p2, PERSONAL, [100], 2000), {100: ref.CAP_PARETO_B_100}),
        FigurePreset("cap-exp-a", "unit capacities, exponential(1) both, ranking gain",
                     _sweep("cap", e1, e1, RANK, [100], 2000), {100: ref.CAP_EXP_A_100}),
        FigurePreset("cap-exp-b", "unit capacities, exponential(1) both, personalization gain",
                     _sweep("cap", e1, e1, PERSONAL, [100], 2000), {100: ref.CAP_EXP_B_100}),
        FigurePreset("bounded-a", "unit capacities, uniform[0,1] both, ranking gain",
                     _sweep("cap", u01, u01, RANK, [100], 2000), {100: ref.BOUNDED_A_100}),
        FigurePreset("bounded-b", "unit capacities, uniform[0,1] both, personalization gain",
                     _sweep("cap", u01, u01, PERSONAL, [100], 2000), {100: ref.BOUNDED_B_100}),
    ]
    return {p.id: p for p in presets}


FIGURE_PRESETS = _build()


def get_preset(preset_id: str) -> FigurePreset:
    try:
        return FIGURE_PRESETS[preset_id]
    except KeyError:
        known = ", ".join(FIGURE_PRESETS)
        raise DomainError(f"unknown preset {preset_id!r}; known presets: {known}") from None


def _curve_rows(preset: FigurePreset) -> list:
    return [
        {"curve": name, "rho": rho, "value": fn(rho)}
        for name, fn in preset.curves.items() for rho in DEFAULT_RHO_GRID
    ]


def reproduce_figure(preset_id: str, trials_override: Optional[int] = None, workers: int = 1,
                     n_grid=None, seed: Optional[int] = None):
    """Run a preset and compare with its plotted points.

    Returns ``(rows, report)``.  ``report`` holds one entry per plotted point
    (simulated normalized value, its stderr, the published value, the limit
    curve) and the maximum absolute deviation per series.
    """
    preset = get_preset(preset_id)
    if preset.sweep is None:
        return _curve_rows(preset), {"preset": preset_id, "series": {}, "points": []}
    rows = []
    for n in (n_grid or preset.sweep.n_grid):
        trials = trials_override or preset.trials_for(n)
        spec = replace(preset.sweep, n_grid=(n,), trials=trials,
                       base_seed=preset.sweep.base_seed if seed is None else seed)
        rows.extend(run_sweep(spec, workers))
    points, series = [], {}
    for n, pts in preset.reference_points.items():
        by_rho = {r["rho"]: r for r in rows if r["n"] == n}
        if not by_rho:
            continue
        devs = []
        for rho, value in pts:
            row = by_rho.get(rho)
            if row is None or row["status"] != "ok":
                continue
            dev = row["normalized"] - value
            devs.append(abs(dev))
            points.append({
                "n": n, "rho": rho, "simulated": row["normalized"],
                "stderr": row["normalized_stderr"], "reference": value,
                "theory": row["leading_value"], "deviation": dev,
                "simulated_excess": row["normalized_excess"],
            })
        series[n] = {"max_abs_deviation": max(devs) if devs else math.nan, "points": len(devs)}
    return rows, {"preset": preset_id, "series": series, "points": points}
