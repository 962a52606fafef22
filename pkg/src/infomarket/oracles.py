"""Independent ground truth for the closed forms and the simulator.

Nothing here calls the closed-form order-statistic moments: the quadrature
integrates survival functions directly, and the brute-force evaluator walks
the serial dictatorship exhaustively.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .dist import ExponentialExact, ParetoExact, UniformBounded
from .errors import BudgetError, ConvergenceError, PreconditionError
from .market import MarketConfig, Regime, SamplingMode, average_utilities
from .welfare import mean_and_stderr

FAR_TAIL = 1e-12
MAX_SUBDIVISIONS = 200
BRUTE_FORCE_MAX_N = 8


@dataclass(frozen=True)
class OracleReport:
    name: str
    reference_value: float
    tested_value: float
    abs_error: float
    tolerance: float
    passed: bool

    @classmethod
    def compare(cls, name, reference, tested, tolerance) -> "OracleReport":
        err = abs(float(tested) - float(reference))
        return cls(name, float(reference), float(tested), err, float(tolerance), bool(err <= tolerance))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def _inverse_survival(spec, s):
    """x with P(X > x) = s."""
    if isinstance(spec, ParetoExact):
        return spec.c * s ** (-1.0 / spec.alpha)
    if isinstance(spec, ExponentialExact):
        return (math.log(spec.c) - math.log(s)) / spec.lam
    return spec.b - s * (spec.b - spec.a)


def _dx_ds(spec, s):
    """|dx/ds| along the inverse survival map."""
    if isinstance(spec, ParetoExact):
        return spec.c / spec.alpha * s ** (-1.0 / spec.alpha - 1.0)
    if isinstance(spec, ExponentialExact):
        return 1.0 / (spec.lam * s)
    return spec.b - spec.a


def _quad(f, a, b, tol, points=None):
    kw = {"points": points} if points else {}
    val, err, *_ = integrate.quad(
        f, a, b, epsabs=tol, epsrel=0.0, limit=MAX_SUBDIVISIONS, full_output=1, **kw
    )
    return val, err


def quad_max_moment(spec, m: int, tol: float = 1e-9) -> float:
    """E[max of m draws] as the integral of P(max > x) over [0, inf).

    Below the support the integrand is 1.  The body [lower, x*] with
    P(X > x*) = 1e-12 is integrated in x with breakpoints where the survival
    crosses 10/m, 1/m, 0.1/m and each power of ten; the far tail is integrated in s = P(X > x).
    """
    if tol <= 0:
        raise PreconditionError("tol must be > 0")
    if m < 1:
        raise PreconditionError("m must be >= 1")
    lower = spec.lower

    def body(x):
        s = float(spec.tail_prob(x))
        return -math.expm1(m * math.log1p(-s)) if s < 1.0 else 1.0

    def far(s):
        return -math.expm1(m * math.log1p(-s)) * _dx_ds(spec, s) if s > 0 else 0.0

    if isinstance(spec, UniformBounded):
        x_star, far_part = spec.b, (0.0, 0.0)
    else:
        x_star = _inverse_survival(spec, FAR_TAIL)
        far_part = _quad(far, 0.0, FAR_TAIL, tol / 2)
    # Panels where the survival crosses 10/m, 1/m, 0.1/m and every decade,
    # so slowly decaying tails never span many orders of magnitude in one panel.
    levels = {10.0 / m, 1.0 / m, 0.1 / m} | {10.0 ** -k for k in range(1, 12)}
    cuts = (_inverse_survival(spec, s) for s in levels if FAR_TAIL < s < 1.0)
    pts = sorted(x for x in cuts if lower < x < x_star)
    total, err = 0.0, far_part[1]
    edges = [lower, *pts, x_star]
    for a, b in zip(edges[:-1], edges[1:]):
        v, e = _quad(body, a, b, tol / (2 * len(edges)))
        total += v
        err += e
    if err > tol:
        raise ConvergenceError(
            f"quadrature error estimate {err:.3g} exceeds tol {tol:.3g} for {spec} with m={m}"
        )
    return lower + total + far_part[0]


def brute_force_capacitated(q, phi, rho: float, regime, capacities=None) -> float:
    """Exact expected average welfare of a fixed instance.

    The expectation is over the regime's own randomness only: the uniform
    pick under no information, and uniform tie breaking otherwise.  It is
    evaluated by recursion over the vector of remaining capacities.
    """
    regime = Regime.parse(regime)
    q = np.asarray(q, dtype=float)
    phi = np.atleast_2d(np.asarray(phi, dtype=float))
    caps = tuple(int(c) for c in (capacities if capacities is not None else [1] * len(q)))
    n_agents = sum(caps)
    if n_agents > BRUTE_FORCE_MAX_N or len(q) > BRUTE_FORCE_MAX_N:
        raise BudgetError(f"brute force is limited to n <= {BRUTE_FORCE_MAX_N}")
    if phi.shape != (n_agents, len(q)):
        raise PreconditionError(f"phi must be {n_agents} x {len(q)}, got {phi.shape}")
    util = (1.0 - rho) * q[None, :] + rho * phi

    @lru_cache(maxsize=None)
    def value(left: tuple) -> float:
        k = n_agents - sum(left)
        if k == n_agents:
            return 0.0
        avail = [j for j, c in enumerate(left) if c > 0]
        if regime is Regime.NO_INFORMATION:
            options = avail
        else:
            score = q if regime is Regime.ONLY_QUALITY else util[k]
            best = max(score[j] for j in avail)
            options = [j for j in avail if score[j] == best]
        total = 0.0
        for j in options:
            nxt = list(left)
            nxt[j] -= 1
            total += util[k, j] + value(tuple(nxt))
        return total / len(options)

    return value(caps) / n_agents


def crosscheck_sampling_modes(config: MarketConfig, trials: int) -> OracleReport:
    """|z| of upfront minus deferred full-information welfare over shared trial keys."""
    if not config.capacitated:
        raise PreconditionError("sampling-mode crosscheck needs a capacitated config")
    if trials < 1000:
        raise PreconditionError("need at least 1000 trials")
    idx = np.arange(trials)
    up = average_utilities(config.with_(sampling_mode=SamplingMode.UPFRONT), idx)
    de = average_utilities(config.with_(sampling_mode=SamplingMode.DEFERRED), idx)
    diff = up[Regime.FULL_INFORMATION][0] - de[Regime.FULL_INFORMATION][0]
    mean, se = mean_and_stderr(diff)
    z = 0.0 if se == 0.0 else mean / se
    name = f"sampling-modes n={config.n} {config.dist_phi.family} rho={config.rho:g}"
    return OracleReport.compare(name, 0.0, abs(z), 3.0)


def pareto_to_exponential_limit_check(lam: float, n_grid, tolerance: float = 0.1) -> list:
    """Capacitated Pareto normalizer with alpha = c*lam = ln n, relative to ln(n)/lam.

    The tested value is the ratio (alpha/(alpha+1)) c Gamma(1-1/alpha)
    Gamma(n+1)/Gamma(n+1-1/alpha) / (ln n / lam), reported against 1.
    """
    from .asymptotics import pareto_max_finite_n

    grid = list(n_grid)
    if grid != sorted(grid):
        raise PreconditionError("n_grid must be ascending")
    out = []
    for n in grid:
        a = math.log(n)
        target = a / lam
        norm = a / (a + 1.0) * pareto_max_finite_n(target, a, n)
        out.append(OracleReport.compare(f"pareto-to-exponential n={n:g} lam={lam:g}",
                                        1.0, norm / target, tolerance))
    return out
