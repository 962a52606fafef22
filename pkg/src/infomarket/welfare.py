"""Welfare and welfare-gap estimates from simulated trials.

Aggregation uses ``math.fsum`` over trial-ordered values, so the mean does
not depend on how trials were chunked or distributed.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import dist as _dist
from .errors import PreconditionError
from .market import REGIMES, MarketConfig, Regime, SamplingMode
from .parallel import trial_utilities


@dataclass(frozen=True)
class WelfareEstimate:
    setting: str
    regime: Regime
    mean: float
    stderr: float
    trials: int
    # False when a heavy tail (Pareto alpha <= 2) makes the stderr untrustworthy.
    stderr_reliable: bool = True

    def to_dict(self) -> dict:
        d = asdict(self)
        d["regime"] = self.regime.value
        return d


@dataclass(frozen=True)
class GapEstimate:
    from_regime: Regime
    to_regime: Regime
    delta: float
    stderr: float
    trials: int
    paired: bool
    stderr_reliable: bool = True

    @property
    def label(self) -> str:
        return f"{self.from_regime.symbol}->{self.to_regime.symbol}"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["from_regime"] = self.from_regime.value
        d["to_regime"] = self.to_regime.value
        return d


def mean_and_stderr(values) -> tuple:
    """Compensated mean and standard error (sample std / sqrt(N)) of a 1-d sample."""
    x = np.asarray(values, dtype=float).ravel()
    n = x.size
    if n < 2:
        raise PreconditionError("need at least two trials for a standard error")
    m = math.fsum(x) / n
    var = math.fsum((x - m) ** 2) / (n - 1)
    return m, math.sqrt(var / n)


def stderr_reliable(config: MarketConfig) -> bool:
    return not (config.dist_q.heavy_variance or config.dist_phi.heavy_variance)


def _setting(config: MarketConfig) -> str:
    return "cap" if config.capacitated else "uncap"


def _check_trials(trials: int) -> None:
    if trials < 2:
        raise PreconditionError("trials must be >= 2")


def welfare_from_utilities(config, utilities: dict, rho_index: int = 0) -> dict:
    ok = stderr_reliable(config)
    out = {}
    for regime in REGIMES:
        row = utilities[regime][rho_index]
        m, se = mean_and_stderr(row)
        out[regime] = WelfareEstimate(_setting(config), regime, m, se, row.size, ok)
    return out


def gap_from_utilities(config, utilities: dict, from_regime, to_regime, rho_index: int = 0):
    """Gap estimate for one rho; paired unless sampling is deferred."""
    a = utilities[Regime.parse(from_regime)][rho_index]
    b = utilities[Regime.parse(to_regime)][rho_index]
    paired = config.sampling_mode is SamplingMode.UPFRONT
    delta, se = mean_and_stderr(b - a)
    if not paired:
        se = math.hypot(mean_and_stderr(a)[1], mean_and_stderr(b)[1])
    return GapEstimate(
        Regime.parse(from_regime), Regime.parse(to_regime), delta, se, a.size, paired,
        stderr_reliable(config),
    )


def estimate_welfare(config: MarketConfig, trials: int, workers: int = 1) -> dict:
    """Regime -> WelfareEstimate of average agent utility at ``config.rho``."""
    _check_trials(trials)
    return welfare_from_utilities(config, trial_utilities(config, trials, workers=workers))


def estimate_gap(config: MarketConfig, trials: int, from_regime, to_regime,
                 workers: int = 1) -> GapEstimate:
    _check_trials(trials)
    if Regime.parse(from_regime) is Regime.parse(to_regime):
        raise PreconditionError("from and to regimes must differ")
    util = trial_utilities(config, trials, workers=workers)
    return gap_from_utilities(config, util, from_regime, to_regime)


def analytic_welfare(setting, regime, config: MarketConfig) -> Optional[float]:
    """Exact welfare where a closed form exists, else ``None``.

    No information: (1-rho) mu_q + rho mu_phi in both settings, since the
    chosen item is independent of its values.  Only quality: the same in the
    capacitated setting (every item is taken once, so the common terms sum to
    the total), and (1-rho) E[max of n q] + rho mu_phi for a single agent.
    """
    setting = setting or _setting(config)
    regime = Regime.parse(regime)
    rho = config.rho
    base = (1.0 - rho) * _dist.mean(config.dist_q) + rho * _dist.mean(config.dist_phi)
    if regime is Regime.NO_INFORMATION:
        return base
    if regime is Regime.ONLY_QUALITY:
        if setting.startswith("cap"):
            return base
        top = _dist.exact_max_moment(config.dist_q, config.n_items)
        return (1.0 - rho) * top + rho * _dist.mean(config.dist_phi)
    return None
