"""Leading-order welfare gaps, normalizers and capacitated bounds.

Every gap prediction is ``leading_value * normalizer``: the limit of the
normalized gap times the scale the gap grows at, evaluated at finite ``n``.
Prediction ids have the form ``{setting}:{family}:{gap}[:{branch}]``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import dist as _dist
from .dist import ExponentialExact, ParetoExact, UniformBounded
from .errors import DomainError, UnsupportedCombinationError
from .market import Regime


@dataclass(frozen=True)
class Prediction:
    theorem_id: str
    leading_value: float
    normalizer: float
    predicted_gap: float
    # Set when rho sits outside the open interval the limit is proved on.
    extrapolated: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class GapBounds:
    lower: float
    upper: float
    phi_n: float


def _check_pareto(c, alpha, n):
    if not (c > 0 and alpha > 1 and n >= 1):
        raise DomainError(f"need c > 0, alpha > 1, n >= 1; got c={c}, alpha={alpha}, n={n}")


def pareto_max_asymptote(c: float, alpha: float, n: float) -> float:
    """c Gamma(1 - 1/alpha) n**(1/alpha)."""
    _check_pareto(c, alpha, n)
    return c * float(_dist._gamma(1.0 - 1.0 / alpha)) * n ** (1.0 / alpha)


def pareto_max_finite_n(c: float, alpha: float, n: float) -> float:
    """c Gamma(1 - 1/alpha) Gamma(n+1) / Gamma(n+1-1/alpha), the exact Pareto max mean."""
    _check_pareto(c, alpha, n)
    inv = 1.0 / alpha
    ratio = math.exp(_dist.log_gamma_ratio(float(n) + 1.0, inv))
    return c * float(_dist._gamma(1.0 - inv)) * ratio


def exp_max_asymptote(lam: float, n: float) -> float:
    """ln(n)/lambda; ``n`` may be real."""
    if not (lam > 0 and n >= 2):
        raise DomainError(f"need lambda > 0 and n >= 2; got lambda={lam}, n={n}")
    return math.log(n) / lam


def combine_pareto_tails(rho, cX, alphaX, cY, alphaY) -> tuple:
    """Tail parameters of (1-rho) X + rho Y for independent Pareto-tailed X, Y."""
    if not 0.0 < rho < 1.0:
        raise DomainError(f"rho must lie strictly inside (0, 1), got {rho}")
    for c, a in ((cX, alphaX), (cY, alphaY)):
        if not (c > 0 and a > 1):
            raise DomainError(f"invalid Pareto tail (c={c}, alpha={a})")
    if alphaX < alphaY:
        return (1.0 - rho) * cX, alphaX
    if alphaX > alphaY:
        return rho * cY, alphaY
    a = alphaX
    return (((1.0 - rho) * cX) ** a + (rho * cY) ** a) ** (1.0 / a), a


def g_function(rho: float, alpha: float) -> float:
    """((1-rho)**alpha + rho**alpha)**(1/alpha) - (1-rho)."""
    return ((1.0 - rho) ** alpha + rho ** alpha) ** (1.0 / alpha) - (1.0 - rho)


def phi_n(dist_phi, n: int) -> float:
    """Average over k = 1..n of E[max of k idiosyncratic draws]."""
    if n < 1:
        raise DomainError("n must be >= 1")
    moments = _dist.exact_max_moment(dist_phi, np.arange(1, n + 1))
    return math.fsum(np.atleast_1d(moments)) / n


def capacitated_gap_bounds(dist_q, dist_phi, rho: float, n: int) -> GapBounds:
    """Bracket on the capacitated personalization gain at finite ``n``.

    Full information gives each agent at least rho times the best remaining
    idiosyncratic term plus a nonnegative common part, and at most that plus
    the common part every allocation shares; subtracting the only-quality
    welfare gives the two ends.
    """
    if not 0.0 <= rho <= 1.0:
        raise DomainError(f"rho must lie in [0, 1], got {rho}")
    p = phi_n(dist_phi, n)
    mu_q, mu_phi = _dist.mean(dist_q), _dist.mean(dist_phi)
    lower = rho * p - ((1.0 - rho) * mu_q + rho * mu_phi)
    upper = rho * p - rho * mu_phi
    return GapBounds(lower, upper, p)


def _gap_key(from_regime, to_regime) -> str:
    a, b = Regime.parse(from_regime), Regime.parse(to_regime)
    if (a, b) == (Regime.NO_INFORMATION, Regime.ONLY_QUALITY):
        return "rank"
    if (a, b) == (Regime.ONLY_QUALITY, Regime.FULL_INFORMATION):
        return "personal"
    raise UnsupportedCombinationError(
        f"no limit result for the gap {a.value}->{b.value}; covered gaps are "
        "none->quality and quality->full"
    )


def _setting_key(setting) -> str:
    s = str(getattr(setting, "kind", setting))
    if s in ("uncap", "uncapacitated"):
        return "uncap"
    if s.startswith("cap"):
        return "cap"
    raise DomainError(f"unknown setting {setting!r}")


def _predict_uncap(gap, q, phi, rho, n):
    if q.family != phi.family:
        raise UnsupportedCombinationError(
            f"uncapacitated prediction needs matching tail families, got {q.family} and "
            f"{phi.family}; nearest covered results are the pareto/pareto and "
            "exponential/exponential uncapacitated limits"
        )
    if isinstance(q, UniformBounded):
        raise UnsupportedCombinationError(
            "bounded distributions are only covered in the capacitated setting "
            "(nearest: cap:uniform limits)"
        )
    if isinstance(q, ParetoExact):
        if gap == "rank":
            return "uncap:pareto:rank", 1.0 - rho, pareto_max_asymptote(q.c, q.alpha, n), False
        if q.alpha < phi.alpha:
            return ("uncap:pareto:personal:heavier-q", 0.0,
                    pareto_max_asymptote(q.c, q.alpha, n), False)
        if q.alpha > phi.alpha:
            return ("uncap:pareto:personal:heavier-phi", rho,
                    pareto_max_asymptote(phi.c, phi.alpha, n), False)
        a = q.alpha
        lead = (((1 - rho) * q.c) ** a + (rho * phi.c) ** a) ** (1 / a) - (1 - rho) * q.c
        return "uncap:pareto:personal:equal-tail", lead, pareto_max_asymptote(1.0, a, n), False
    # Exponential: the limits are proved for rho strictly inside (0, 1).
    edge = rho in (0.0, 1.0)
    if gap == "rank":
        return "uncap:exponential:rank", 1.0 - rho, exp_max_asymptote(q.lam, n), edge
    if q.lam == phi.lam:
        return ("uncap:exponential:personal:equal-rate", max(2 * rho - 1, 0.0),
                exp_max_asymptote(q.lam, n), edge)
    lead = max((1 - rho) / q.lam, rho / phi.lam) - (1 - rho) / q.lam
    return "uncap:exponential:personal", lead, math.log(n), edge


def _predict_cap(gap, q, phi, rho, n):
    # The capacitated results put no tail assumption on the common term.
    fam = phi.family
    if gap == "rank":
        return f"cap:{fam}:rank", 0.0, 1.0, False
    if isinstance(phi, ParetoExact):
        scale = phi.alpha / (phi.alpha + 1.0) * pareto_max_finite_n(phi.c, phi.alpha, n)
        return "cap:pareto:personal", rho, scale, False
    if isinstance(phi, ExponentialExact):
        return "cap:exponential:personal", rho, exp_max_asymptote(phi.lam, n), False
    return "cap:uniform:personal", rho * (phi.b - phi.mean()), 1.0, False


def predict_gap(setting, from_regime, to_regime, dist_q, dist_phi, rho: float, n: int) -> Prediction:
    """Leading-order prediction of a welfare gap at finite ``n``."""
    if not 0.0 <= rho <= 1.0:
        raise DomainError(f"rho must lie in [0, 1], got {rho}")
    if n < 1:
        raise DomainError("n must be >= 1")
    gap = _gap_key(from_regime, to_regime)
    fn = _predict_uncap if _setting_key(setting) == "uncap" else _predict_cap
    tid, lead, norm, extrap = fn(gap, dist_q, dist_phi, float(rho), n)
    return Prediction(tid, float(lead), float(norm), float(lead) * float(norm), extrap)


def excess_normalizer(setting, from_regime, to_regime, dist_q, dist_phi, n: int) -> float:
    """Finite-n scale E[best draw] - mean that the gap actually grows with.

    Diagnostic companion to :func:`predict_gap`: for a single agent this is the
    expected maximum of ``n`` draws minus the mean (of q for the ranking gap,
    of phi for the personalization gap); for the capacitated personalization
    gap it is ``phi_n - mu_phi``.  It tends to the theorem normalizer up to a
    lower-order term, and that term is sizable at n = 100 for exponential
    tails.
    """
    gap = _gap_key(from_regime, to_regime)
    if _setting_key(setting) == "uncap":
        spec = dist_q if gap == "rank" else dist_phi
        return float(_dist.exact_max_moment(spec, n)) - _dist.mean(spec)
    if gap == "rank":
        return 1.0
    return phi_n(dist_phi, n) - _dist.mean(dist_phi)
