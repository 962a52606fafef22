"""Market instances and the three information regimes.

An uncapacitated market is a single agent facing ``n`` items; a capacitated
market is a serial dictatorship of ``n`` agents over items with finite
capacities.  Both run through one vectorized kernel (``simulate_batch``) that
processes a batch of trials at once.  ``run_uncapacitated_trial`` and
``run_capacitated_trial`` are deliberately written as a separate scalar route
over ``draw_instance`` so the kernel can be checked against them.

Random layout per trial key ``t`` (see :mod:`infomarket.rng`):

* ``q[j]``            -> stream ``child(t, Q_STREAM)``, counter ``j``
* ``phi[k, j]``       -> stream ``child(t, PHI_STREAM)``, counter ``k*m + j``
  (deferred mode: counter ``k*m + r`` where ``r`` is the rank of ``j`` among
  the items still available at agent ``k``'s turn)
* tie key of item j for agent k -> ``child(t, TIE_STREAM)``, counter ``k*m + j``
* no-information pick of agent k -> ``child(t, NOINFO_STREAM)``, counter ``k``

``m`` is the number of distinct items.  Only-quality and full-information
share tie keys, so at ``rho = 0`` they make identical choices.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Sequence, Union

import numpy as np

from . import dist as _dist
from . import rng
from .errors import DomainError, PreconditionError, ResourceLimitError

DEFAULT_MATRIX_CAP = 4096
# Upper bound on float entries held per kernel chunk.
CHUNK_ENTRIES = 1 << 21


class Regime(str, Enum):
    NO_INFORMATION = "none"
    ONLY_QUALITY = "quality"
    FULL_INFORMATION = "full"

    @classmethod
    def parse(cls, text: Union[str, "Regime"]) -> "Regime":
        if isinstance(text, Regime):
            return text
        key = str(text).strip().lower()
        aliases = {
            "none": cls.NO_INFORMATION, "no": cls.NO_INFORMATION, "empty": cls.NO_INFORMATION,
            "0": cls.NO_INFORMATION, "∅": cls.NO_INFORMATION,
            "noinformation": cls.NO_INFORMATION, "no_information": cls.NO_INFORMATION,
            "quality": cls.ONLY_QUALITY, "q": cls.ONLY_QUALITY,
            "onlyquality": cls.ONLY_QUALITY, "only_quality": cls.ONLY_QUALITY,
            "full": cls.FULL_INFORMATION, "u": cls.FULL_INFORMATION,
            "fullinformation": cls.FULL_INFORMATION, "full_information": cls.FULL_INFORMATION,
        }
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown regime {text!r}") from None

    @property
    def symbol(self) -> str:
        return {"none": "0", "quality": "q", "full": "u"}[self.value]


REGIMES = (Regime.NO_INFORMATION, Regime.ONLY_QUALITY, Regime.FULL_INFORMATION)


class SamplingMode(str, Enum):
    UPFRONT = "upfront"
    DEFERRED = "deferred"


@dataclass(frozen=True)
class Uncapacitated:
    kind = "uncap"


@dataclass(frozen=True)
class CapacitatedUnit:
    kind = "cap"


@dataclass(frozen=True)
class CapacitatedGeneral:
    capacities: tuple
    kind = "cap-general"

    def __post_init__(self):
        caps = tuple(int(c) for c in self.capacities)
        if not caps or min(caps) < 1:
            raise DomainError("capacities must be a nonempty list of positive integers")
        object.__setattr__(self, "capacities", caps)


Supply = Union[Uncapacitated, CapacitatedUnit, CapacitatedGeneral]


def parse_supply(kind: str, capacities: Sequence[int] | None = None) -> Supply:
    if kind in ("uncap", "uncapacitated"):
        return Uncapacitated()
    if kind in ("cap", "capacitated", "cap-general"):
        return CapacitatedGeneral(tuple(capacities)) if capacities else CapacitatedUnit()
    raise DomainError(f"unknown supply setting {kind!r}")


@dataclass(frozen=True)
class MarketConfig:
    """One market: ``n`` agents (capacitated) or ``n`` items (uncapacitated)."""

    n: int
    rho: float
    supply: Supply
    dist_q: _dist.DistSpec
    dist_phi: _dist.DistSpec
    sampling_mode: SamplingMode = SamplingMode.UPFRONT
    base_seed: int = 0
    matrix_cap: int = DEFAULT_MATRIX_CAP

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n}")
        if not 0.0 <= self.rho <= 1.0:
            raise DomainError(f"rho must lie in [0, 1], got {self.rho}")
        object.__setattr__(self, "sampling_mode", SamplingMode(self.sampling_mode))
        if isinstance(self.supply, CapacitatedGeneral) and sum(self.supply.capacities) != self.n:
            raise DomainError(
                f"capacities sum to {sum(self.supply.capacities)}, expected n = {self.n}"
            )

    @property
    def capacitated(self) -> bool:
        return not isinstance(self.supply, Uncapacitated)

    @property
    def n_agents(self) -> int:
        return self.n if self.capacitated else 1

    @property
    def capacities(self) -> np.ndarray:
        if isinstance(self.supply, CapacitatedGeneral):
            return np.asarray(self.supply.capacities, dtype=np.int64)
        return np.ones(self.n, dtype=np.int64)

    @property
    def n_items(self) -> int:
        return len(self.capacities)

    def with_(self, **changes) -> "MarketConfig":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        d = {
            "n": self.n,
            "rho": self.rho,
            "supply": self.supply.kind,
            "dist_q": _dist.to_dict(self.dist_q),
            "dist_phi": _dist.to_dict(self.dist_phi),
            "sampling_mode": self.sampling_mode.value,
            "base_seed": self.base_seed,
            "matrix_cap": self.matrix_cap,
        }
        if isinstance(self.supply, CapacitatedGeneral):
            d["capacities"] = list(self.supply.capacities)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MarketConfig":
        return cls(
            n=int(d["n"]),
            rho=float(d["rho"]),
            supply=parse_supply(d.get("supply", "uncap"), d.get("capacities")),
            dist_q=_dist.from_dict(d["dist_q"]),
            dist_phi=_dist.from_dict(d["dist_phi"]),
            sampling_mode=SamplingMode(d.get("sampling_mode", "upfront")),
            base_seed=int(d.get("base_seed", 0)),
            matrix_cap=int(d.get("matrix_cap", DEFAULT_MATRIX_CAP)),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "MarketConfig":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class AllocationOutcome:
    assignment: np.ndarray
    utility: np.ndarray
    q_component: np.ndarray
    phi_component: np.ndarray
    regime: Regime

    @property
    def average_utility(self) -> float:
        return float(np.mean(self.utility))

    def rows(self, trial: int) -> list:
        return [
            (trial, self.regime.value, k, int(self.assignment[k]), float(self.utility[k]),
             float(self.q_component[k]), float(self.phi_component[k]))
            for k in range(len(self.assignment))
        ]

    def to_csv(self, trial: int, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(OUTCOME_COLUMNS)
        w.writerows(self.rows(trial))
        return buf.getvalue()


OUTCOME_COLUMNS = ("trial", "regime", "agent", "item", "utility", "q_component", "phi_component")


def _trial_streams(config: MarketConfig, trials) -> dict:
    keys = rng.trial_keys(config.base_seed, config.n, trials)
    return {
        "q": rng.child_keys(keys, rng.Q_STREAM),
        "phi": rng.child_keys(keys, rng.PHI_STREAM),
        "tie": rng.child_keys(keys, rng.TIE_STREAM),
        "noinfo": rng.child_keys(keys, rng.NOINFO_STREAM),
    }


def _check_matrix_cap(config: MarketConfig) -> None:
    if config.sampling_mode is SamplingMode.UPFRONT:
        entries = config.n_agents * config.n_items
        if entries > config.matrix_cap ** 2:
            raise ResourceLimitError(
                f"upfront idiosyncratic matrix needs {entries} entries, above the cap "
                f"{config.matrix_cap}^2; use deferred sampling"
            )


class PhiSource:
    """Idiosyncratic values for one trial.

    Upfront mode materializes the (agents x items) matrix; deferred mode
    draws agent ``k``'s values only for the items still available.
    """

    def __init__(self, config: MarketConfig, key):
        self.dist = config.dist_phi
        self.n_items = config.n_items
        self.n_agents = config.n_agents
        self.deferred = config.sampling_mode is SamplingMode.DEFERRED
        self.key = np.uint64(int(key))
        self.matrix = None
        if not self.deferred:
            ctr = np.arange(self.n_agents * self.n_items, dtype=np.uint64)
            u = rng.uniforms(self.key, ctr).reshape(self.n_agents, self.n_items)
            self.matrix = self.dist.from_uniform(u)

    def values(self, agent: int, remaining: Sequence[int]) -> np.ndarray:
        """phi[agent, j] for each j in ``remaining`` (ascending item indices)."""
        remaining = np.asarray(remaining, dtype=np.int64)
        if self.matrix is not None:
            return self.matrix[agent, remaining]
        ctr = agent * self.n_items + np.arange(len(remaining), dtype=np.uint64)
        return self.dist.from_uniform(rng.uniforms(self.key, ctr.astype(np.uint64)))

    def row(self, agent: int) -> np.ndarray:
        return self.values(agent, np.arange(self.n_items))


def draw_instance(config: MarketConfig, trial: int):
    """Common terms and idiosyncratic-value provider for one trial."""
    _check_matrix_cap(config)
    s = _trial_streams(config, [trial])
    q = _dist.sample(config.dist_q, rng.RandomStream(s["q"][0]), config.n_items)
    return q, PhiSource(config, s["phi"][0])


def _pick_among_ties(candidates: np.ndarray, keys: np.ndarray) -> int:
    return int(candidates[np.argmin(keys[candidates])])


def choose_uncapacitated(regime, rho: float, q, phi_row, tie_stream: rng.RandomStream):
    """One agent's choice under ``regime``; returns (item, realized utility).

    Only-quality and full-information draw one tie key per item from
    ``tie_stream`` and take the smallest key among maximizers; no-information
    draws a single uniform index.
    """
    regime = Regime.parse(regime)
    q = np.asarray(q, dtype=float)
    phi_row = np.asarray(phi_row, dtype=float)
    if q.shape != phi_row.shape or q.ndim != 1 or len(q) == 0:
        raise PreconditionError("q and phi_row must be equal-length nonempty sequences")
    u = (1.0 - rho) * q + rho * phi_row
    if regime is Regime.NO_INFORMATION:
        j = tie_stream.integer(len(q))
    else:
        score = q if regime is Regime.ONLY_QUALITY else u
        best = np.flatnonzero(score == score.max())
        j = int(best[0]) if len(best) == 1 else _pick_among_ties(best, tie_stream.uniform(len(q)))
    return j, float(u[j])


def run_uncapacitated_trial(config: MarketConfig, trial: int) -> dict:
    """Utility of the single agent under every regime on one shared draw."""
    if config.capacitated:
        raise PreconditionError("run_uncapacitated_trial needs an uncapacitated config")
    q, phi = draw_instance(config, trial)
    s = _trial_streams(config, [trial])
    row = phi.row(0)
    out = {}
    for regime in REGIMES:
        stream_key = s["noinfo"][0] if regime is Regime.NO_INFORMATION else s["tie"][0]
        _, util = choose_uncapacitated(regime, config.rho, q, row, rng.RandomStream(stream_key))
        out[regime] = util
    return out


def run_capacitated_trial(config: MarketConfig, trial: int) -> dict:
    """Serial dictatorship under every regime on one shared draw of q.

    Agents choose in index order; capacities are item multiplicities.
    """
    if not config.capacitated:
        raise PreconditionError("run_capacitated_trial needs a capacitated config")
    q, phi = draw_instance(config, trial)
    s = _trial_streams(config, [trial])
    tie_key, noinfo_key = s["tie"][0], s["noinfo"][0]
    m, rho = config.n_items, config.rho
    out = {}
    for regime in REGIMES:
        left = config.capacities.copy()
        items, qs, phis = [], [], []
        for k in range(config.n_agents):
            remaining = np.flatnonzero(left > 0)
            phi_rem = phi.values(k, remaining)
            if regime is Regime.NO_INFORMATION:
                u = float(rng.uniforms(noinfo_key, np.uint64(k)))
                r = min(int(u * len(remaining)), len(remaining) - 1)
            else:
                score = q[remaining]
                if regime is Regime.FULL_INFORMATION:
                    score = (1.0 - rho) * score + rho * phi_rem
                best = np.flatnonzero(score == score.max())
                if len(best) == 1:
                    r = int(best[0])
                else:
                    keys = rng.uniforms(tie_key, (k * m + remaining).astype(np.uint64))
                    r = _pick_among_ties(best, keys)
            j = int(remaining[r])
            left[j] -= 1
            items.append(j)
            qs.append(q[j])
            phis.append(phi_rem[r])
        qc = (1.0 - rho) * np.asarray(qs)
        pc = rho * np.asarray(phis)
        out[regime] = AllocationOutcome(np.asarray(items), qc + pc, qc, pc, regime)
    return out


@dataclass
class TrialBatch:
    """Per-agent choices for a batch of trials.

    ``*_item``, ``*_q``, ``*_phi`` are (trials, agents) for the two
    rho-independent regimes and (rhos, trials, agents) for full information.
    Raw q and phi values are stored; utilities are formed on request.
    """

    rhos: np.ndarray
    none_item: np.ndarray
    none_q: np.ndarray
    none_phi: np.ndarray
    quality_item: np.ndarray
    quality_q: np.ndarray
    quality_phi: np.ndarray
    full_item: np.ndarray
    full_q: np.ndarray
    full_phi: np.ndarray
    extras: dict = field(default_factory=dict)

    @property
    def trials(self) -> int:
        return self.none_item.shape[0]

    def average_utility(self, regime) -> np.ndarray:
        """(rhos, trials) array of per-trial average realized utility."""
        regime = Regime.parse(regime)
        r = self.rhos[:, None]
        if regime is Regime.FULL_INFORMATION:
            return (1.0 - r) * self.full_q.mean(axis=2) + r * self.full_phi.mean(axis=2)
        qv, pv = (self.none_q, self.none_phi) if regime is Regime.NO_INFORMATION else (
            self.quality_q, self.quality_phi)
        return (1.0 - r) * qv.mean(axis=1)[None, :] + r * pv.mean(axis=1)[None, :]

    @staticmethod
    def concat(parts: Sequence["TrialBatch"]) -> "TrialBatch":
        first = parts[0]
        if len(parts) == 1:
            return first
        kw = {"rhos": first.rhos}
        for name in ("none_item", "none_q", "none_phi", "quality_item", "quality_q", "quality_phi"):
            kw[name] = np.concatenate([getattr(p, name) for p in parts], axis=0)
        for name in ("full_item", "full_q", "full_phi"):
            kw[name] = np.concatenate([getattr(p, name) for p in parts], axis=1)
        return TrialBatch(**kw)


def _first_available_rank(avail_pos: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Index of the r-th True entry in each row of ``avail_pos``."""
    cum = np.cumsum(avail_pos, axis=-1)
    return np.argmax(cum > r[..., None], axis=-1)


def _greedy_pick(score, tie_key, counter_base):
    """Row-wise argmax of a (trials, items) score; ties go to the smallest tie key."""
    m = score.shape[-1]
    j = np.argmax(score, axis=-1)
    is_best = score == np.take_along_axis(score, j[:, None], axis=-1)
    tied = is_best.sum(axis=-1) > 1
    if tied.any():
        idx = np.flatnonzero(tied)
        ctr = counter_base + np.arange(m, dtype=np.uint64)
        keys = rng.uniforms(tie_key[idx][:, None], ctr[None, :])
        j[idx] = np.argmin(np.where(is_best[idx], keys, np.inf), axis=-1)
    return j


def _drawn_phi(dist_phi, phikey):
    def phi_at(counters, key):
        return dist_phi.from_uniform(rng.uniforms(key, counters.astype(np.uint64)))
    return phi_at


def _fixed_phi(phi):
    flat = np.asarray(phi, dtype=float).ravel()

    def phi_at(counters, key):
        shape = np.broadcast_shapes(np.shape(counters), np.shape(key))
        return np.broadcast_to(flat[np.asarray(counters, dtype=np.int64)], shape)
    return phi_at


def _chunk(dist_q, dist_phi, n_agents, caps, rhos, streams, deferred) -> TrialBatch:
    m = len(caps)
    item_ctr = np.arange(m, dtype=np.uint64)
    q = dist_q.from_uniform(rng.uniforms(streams["q"][:, None], item_ctr[None, :]))
    return _allocate(q, _drawn_phi(dist_phi, streams["phi"]), n_agents, caps, rhos, streams,
                     deferred)


def _allocate(q, phi_at, n_agents, caps, rhos, streams, deferred) -> TrialBatch:
    """Run the three regimes on common terms ``q`` (trials x items).

    ``phi_at(counters, keys)`` returns idiosyncratic values at the given
    per-trial stream positions.
    """
    B, m = q.shape
    R = len(rhos)
    A = n_agents
    item_ctr = np.arange(m, dtype=np.uint64)
    phikey = streams["phi"]
    rows = np.arange(B)

    res = {}
    # No information and only quality do not depend on rho.
    for regime in (Regime.NO_INFORMATION, Regime.ONLY_QUALITY):
        left = np.broadcast_to(caps, (B, m)).copy() if A > 1 else None
        items = np.empty((B, A), dtype=np.int64)
        qv = np.empty((B, A))
        pv = np.empty((B, A))
        for k in range(A):
            base = np.uint64(k * m)
            avail = left > 0 if left is not None else None
            if regime is Regime.NO_INFORMATION:
                u = rng.uniforms(streams["noinfo"], np.uint64(k))
                count = avail.sum(axis=1) if avail is not None else np.full(B, m)
                r = np.minimum((u * count).astype(np.int64), count - 1)
                j = _first_available_rank(avail, r) if avail is not None else r
            else:
                score = q if avail is None or k == 0 else np.where(avail, q, -np.inf)
                j = _greedy_pick(score, streams["tie"], base)
                if deferred:
                    r = (np.cumsum(avail, axis=1)[rows, j] - 1) if avail is not None else j
            if deferred:
                pv[:, k] = phi_at(base + r.astype(np.uint64), phikey)
            else:
                pv[:, k] = phi_at(base + j.astype(np.uint64), phikey)
            items[:, k] = j
            qv[:, k] = q[rows, j]
            if left is not None:
                left[rows, j] -= 1
        res[regime] = (items, qv, pv)

    items = np.empty((R, B, A), dtype=np.int64)
    qv = np.empty((R, B, A))
    pv = np.empty((R, B, A))
    left = np.broadcast_to(caps, (R, B, m)).copy() if A > 1 else None
    rr = np.arange(R)[:, None]
    for k in range(A):
        base = np.uint64(k * m)
        avail = left > 0 if left is not None else None
        if deferred and avail is not None:
            rank = np.cumsum(avail, axis=-1) - 1
            phi = phi_at(base + np.maximum(rank, 0).astype(np.uint64), phikey[None, :, None])
        else:
            phi = phi_at(base + item_ctr[None, :], phikey[:, None])[None, :, :]
        for i, rho in enumerate(rhos):
            ph = phi[i if phi.shape[0] > 1 else 0]
            score = (1.0 - rho) * q + rho * ph
            if avail is not None and k > 0:
                score = np.where(avail[i], score, -np.inf)
            j = _greedy_pick(score, streams["tie"], base)
            items[i, :, k] = j
            qv[i, :, k] = q[rows, j]
            pv[i, :, k] = ph[rows, j]
        if left is not None:
            left[rr, rows[None, :], items[:, :, k]] -= 1
    res[Regime.FULL_INFORMATION] = (items, qv, pv)

    n_, q_ = res[Regime.NO_INFORMATION], res[Regime.ONLY_QUALITY]
    f_ = res[Regime.FULL_INFORMATION]
    return TrialBatch(np.asarray(rhos, dtype=float), *n_, *q_, *f_)


def iter_batches(config: MarketConfig, trials, rhos=None):
    """Yield :class:`TrialBatch` chunks covering ``trials`` in order.

    The draws for a trial depend only on ``(base_seed, n, trial)``, so every
    rho value sees the same realized market (common random numbers) and the
    result for any trial is independent of how trials are chunked.
    """
    _check_matrix_cap(config)
    trials = np.asarray(trials, dtype=np.int64)
    if trials.size == 0:
        raise DomainError("need at least one trial")
    rhos = np.atleast_1d(np.asarray(config.rho if rhos is None else rhos, dtype=float))
    if np.any((rhos < 0) | (rhos > 1)):
        raise DomainError("rho values must lie in [0, 1]")
    caps = config.capacities
    deferred = config.sampling_mode is SamplingMode.DEFERRED
    width = config.n_items * len(rhos) * (2 if deferred else 1)
    size = max(1, CHUNK_ENTRIES // width)
    for start in range(0, len(trials), size):
        streams = _trial_streams(config, trials[start:start + size])
        yield _chunk(config.dist_q, config.dist_phi, config.n_agents, caps, rhos, streams, deferred)


def simulate_batch(config: MarketConfig, trials, rhos=None) -> TrialBatch:
    """Every regime for the given trial indices and rho values, in one batch."""
    return TrialBatch.concat(list(iter_batches(config, trials, rhos)))


def average_utilities(config: MarketConfig, trials, rhos=None) -> dict:
    """Regime -> (rhos, trials) array of per-trial average realized utility."""
    parts = {r: [] for r in REGIMES}
    for batch in iter_batches(config, trials, rhos):
        for r in REGIMES:
            parts[r].append(batch.average_utility(r))
    return {r: np.concatenate(v, axis=1) for r, v in parts.items()}


def simulate_fixed_instance(q, phi, rho: float, trials: int, capacities=None,
                            base_seed: int = 0) -> dict:
    """Regime -> per-trial average utility on one fixed instance.

    Only the regimes' own randomness (no-information picks and tie breaks)
    varies across trials; ``phi`` is the (agents x items) matrix.
    """
    q = np.asarray(q, dtype=float)
    caps = np.asarray(capacities if capacities is not None else np.ones(len(q)), dtype=np.int64)
    n_agents = int(caps.sum())
    phi = np.asarray(phi, dtype=float).reshape(n_agents, len(q))
    keys = rng.derive_key(base_seed, n_agents, np.arange(trials, dtype=np.int64))
    streams = {
        "phi": rng.child_keys(keys, rng.PHI_STREAM),
        "tie": rng.child_keys(keys, rng.TIE_STREAM),
        "noinfo": rng.child_keys(keys, rng.NOINFO_STREAM),
    }
    qb = np.broadcast_to(q, (trials, len(q)))
    batch = _allocate(qb, _fixed_phi(phi), n_agents, caps, np.array([float(rho)]), streams, False)
    return {r: batch.average_utility(r)[0] for r in REGIMES}
