"""Parameter sweeps over (n, rho) grids with one output row per gap.

Rows come out in (n, rho, gap) order whatever the worker count, and a cell
that fails still yields its rows, marked in the ``status`` column.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import asymptotics, dist
from .errors import InfomarketError
from .market import MarketConfig, Regime, SamplingMode, parse_supply
from .parallel import trial_utilities
from .welfare import gap_from_utilities

DEFAULT_RHO_GRID = tuple(round(0.05 * i, 2) for i in range(21))

ROW_COLUMNS = (
    "setting", "gap", "n", "rho", "dist_q", "dist_phi", "mode", "seed", "trials",
    "delta", "stderr", "paired", "stderr_reliable",
    "theorem_id", "leading_value", "normalizer", "normalized", "normalized_stderr",
    "predicted_gap", "extrapolated", "excess_normalizer", "normalized_excess", "status",
)


def parse_gap(text) -> tuple:
    if isinstance(text, (tuple, list)):
        a, b = text
    else:
        a, _, b = str(text).partition(":")
        if not b:
            a, _, b = str(text).partition("->")
    return Regime.parse(a), Regime.parse(b)


def gap_label(gap) -> str:
    a, b = gap
    return f"{a.value}:{b.value}"


@dataclass
class SweepSpec:
    setting: str
    dist_q: dist.DistSpec
    dist_phi: dist.DistSpec
    rho_grid: tuple = DEFAULT_RHO_GRID
    n_grid: tuple = (100,)
    trials: int = 2000
    gaps: tuple = ((Regime.NO_INFORMATION, Regime.ONLY_QUALITY),
                   (Regime.ONLY_QUALITY, Regime.FULL_INFORMATION))
    normalizer: str = "theorem"
    sampling_mode: SamplingMode = SamplingMode.UPFRONT
    base_seed: int = 0
    capacities: Optional[tuple] = None
    matrix_cap: int = 4096
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.rho_grid or not self.n_grid or not self.gaps:
            raise InfomarketError("rho_grid, n_grid and gaps must be nonempty")
        self.rho_grid = tuple(float(r) for r in self.rho_grid)
        self.n_grid = tuple(int(n) for n in self.n_grid)
        self.gaps = tuple(parse_gap(g) for g in self.gaps)
        self.sampling_mode = SamplingMode(self.sampling_mode)
        if self.normalizer not in ("theorem", "none"):
            raise InfomarketError("normalizer must be 'theorem' or 'none'")

    def config(self, n: int, rho: float = 0.0) -> MarketConfig:
        return MarketConfig(
            n=n, rho=rho, supply=parse_supply(self.setting, self.capacities),
            dist_q=self.dist_q, dist_phi=self.dist_phi, sampling_mode=self.sampling_mode,
            base_seed=self.base_seed, matrix_cap=self.matrix_cap,
        )

    def to_dict(self) -> dict:
        return {
            "setting": self.setting,
            "dist_q": dist.label(self.dist_q),
            "dist_phi": dist.label(self.dist_phi),
            "rho_grid": list(self.rho_grid),
            "n_grid": list(self.n_grid),
            "trials": self.trials,
            "gaps": [gap_label(g) for g in self.gaps],
            "normalizer": self.normalizer,
            "mode": self.sampling_mode.value,
            "seed": self.base_seed,
            "capacities": list(self.capacities) if self.capacities else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepSpec":
        def spec(v):
            return dist.from_dict(v) if isinstance(v, dict) else dist.parse(v)

        kw = dict(
            setting=d.get("setting", "uncap"),
            dist_q=spec(d["dist_q"]),
            dist_phi=spec(d["dist_phi"]),
        )
        for src, dst in (("rho_grid", "rho_grid"), ("n_grid", "n_grid"), ("trials", "trials"),
                         ("gaps", "gaps"), ("normalizer", "normalizer"),
                         ("mode", "sampling_mode"), ("seed", "base_seed"),
                         ("capacities", "capacities"), ("matrix_cap", "matrix_cap")):
            if d.get(src) is not None:
                kw[dst] = d[src]
        return cls(**kw)


def _prediction(spec: SweepSpec, gap, rho, n):
    try:
        return asymptotics.predict_gap(spec.setting, gap[0], gap[1], spec.dist_q,
                                       spec.dist_phi, rho, n)
    except InfomarketError:
        return None


def _excess(spec: SweepSpec, gap, n):
    try:
        return asymptotics.excess_normalizer(spec.setting, gap[0], gap[1], spec.dist_q,
                                             spec.dist_phi, n)
    except InfomarketError:
        return None


def _base_row(spec, gap, n, rho):
    return {
        "setting": spec.setting, "gap": gap_label(gap), "n": n, "rho": rho,
        "dist_q": dist.label(spec.dist_q), "dist_phi": dist.label(spec.dist_phi),
        "mode": spec.sampling_mode.value, "seed": spec.base_seed, "trials": spec.trials,
    }


def _cell_rows(spec: SweepSpec, n: int, workers: int) -> list:
    config = spec.config(n, spec.rho_grid[0])
    util = trial_utilities(config, spec.trials, spec.rho_grid, workers)
    rows = []
    for i, rho in enumerate(spec.rho_grid):
        for gap in spec.gaps:
            est = gap_from_utilities(config, util, gap[0], gap[1], rho_index=i)
            row = _base_row(spec, gap, n, rho)
            row.update(delta=est.delta, stderr=est.stderr, paired=est.paired,
                       stderr_reliable=est.stderr_reliable)
            pred = _prediction(spec, gap, rho, n) if spec.normalizer == "theorem" else None
            if pred is not None:
                row.update(theorem_id=pred.theorem_id, leading_value=pred.leading_value,
                           normalizer=pred.normalizer, normalized=est.delta / pred.normalizer,
                           normalized_stderr=est.stderr / pred.normalizer,
                           predicted_gap=pred.predicted_gap, extrapolated=pred.extrapolated)
            else:
                row.update(theorem_id="none", normalizer=1.0, normalized=est.delta,
                           normalized_stderr=est.stderr)
            ex = _excess(spec, gap, n) if spec.normalizer == "theorem" else None
            if ex:
                row.update(excess_normalizer=ex, normalized_excess=est.delta / ex)
            row["status"] = "ok"
            rows.append(row)
    return rows


def run_sweep(spec: SweepSpec, workers: int = 1) -> list:
    """One row per (n, rho, gap); failed cells keep their rows with an error status."""
    rows = []
    for n in spec.n_grid:
        try:
            rows.extend(_cell_rows(spec, n, workers))
        except Exception as exc:  # noqa: BLE001 - failures become data rows
            status = f"error: {type(exc).__name__}: {exc}"
            for rho in spec.rho_grid:
                for gap in spec.gaps:
                    row = _base_row(spec, gap, n, rho)
                    row["status"] = status
                    rows.append(row)
    return [{c: r.get(c) for c in ROW_COLUMNS} for r in rows]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return "nan" if math.isnan(v) else repr(v)
    return str(v)


def rows_to_csv(rows: list, columns=ROW_COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def rows_to_json(rows: list, meta: Optional[dict] = None) -> str:
    def clean(v):
        if isinstance(v, np.bool_):
            return bool(v)
        if isinstance(v, (float, np.floating)):
            return None if math.isnan(float(v)) else float(v)
        if isinstance(v, np.integer):
            return int(v)
        return v

    body = {"meta": meta or {}, "rows": [{k: clean(v) for k, v in r.items()} for r in rows]}
    return json.dumps(body, indent=2, sort_keys=True) + "\n"
