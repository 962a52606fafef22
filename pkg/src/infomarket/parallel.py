"""Deterministic fan-out of trial blocks over worker processes.

Trials are cut into fixed-size blocks that do not depend on the worker count,
and block results are reassembled in block order, so the output is
bit-identical for any number of workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .market import REGIMES, MarketConfig, average_utilities

BLOCK_TRIALS = 2048


def _block(args):
    config, start, stop, rhos = args
    return average_utilities(config, np.arange(start, stop), rhos)


def trial_utilities(config: MarketConfig, trials: int, rhos=None, workers: int = 1) -> dict:
    """Regime -> (rhos, trials) per-trial average utilities for trials 0..trials-1."""
    rhos = np.atleast_1d(np.asarray(config.rho if rhos is None else rhos, dtype=float))
    tasks = [
        (config, s, min(s + BLOCK_TRIALS, trials), rhos) for s in range(0, trials, BLOCK_TRIALS)
    ]
    if workers <= 1 or len(tasks) == 1:
        results = [_block(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_block, tasks))
    return {r: np.concatenate([res[r] for res in results], axis=1) for r in REGIMES}
