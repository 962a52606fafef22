"""Distribution families for the common and idiosyncratic utility terms.

Three exact families realize the tail classes the welfare theorems are stated
for.  Their tails hold with equality past a finite threshold, so every
asymptotic constant is attainable and the expected maximum of ``m`` draws has a
closed form that the quadrature oracle can check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import special

from .errors import DomainError
from .rng import RandomStream

# Module-level handles so the validation suite can inject faults.
_gamma = special.gamma
_gammaln = special.gammaln
_digamma = special.digamma


@dataclass(frozen=True)
class ParetoExact:
    """P(X > x) = (c/x)**alpha on [c, inf)."""

    c: float
    alpha: float
    family = "pareto"

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c > 0):
            raise DomainError(f"pareto scale c must be > 0, got {self.c}")
        if not (math.isfinite(self.alpha) and self.alpha > 1):
            raise DomainError(
                f"pareto exponent alpha must be > 1 (finite mean), got {self.alpha}"
            )

    @property
    def params(self) -> dict:
        return {"c": self.c, "alpha": self.alpha}

    @property
    def lower(self) -> float:
        return self.c

    @property
    def upper(self) -> float:
        return math.inf

    def mean(self) -> float:
        return self.c * self.alpha / (self.alpha - 1.0)

    def tail_prob(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            s = np.where(x < self.c, 1.0, (self.c / np.maximum(x, self.c)) ** self.alpha)
        return _scalarize(np.clip(s, 0.0, 1.0))

    def from_uniform(self, u):
        return self.c * (1.0 - np.asarray(u, dtype=float)) ** (-1.0 / self.alpha)

    def exact_max_moment(self, m):
        m = np.asarray(m, dtype=float)
        inv = 1.0 / self.alpha
        log_ratio = log_gamma_ratio(m + 1.0, inv)
        return _scalarize(self.c * float(_gamma(1.0 - inv)) * np.exp(log_ratio))

    @property
    def heavy_variance(self) -> bool:
        return self.alpha <= 2.0


@dataclass(frozen=True)
class ExponentialExact:
    """X = (ln c + E)/lam with E ~ Exp(1); P(X > x) = c exp(-lam x) past ln(c)/lam."""

    c: float
    lam: float
    family = "exponential"

    def __post_init__(self):
        if not (math.isfinite(self.c) and self.c >= 1):
            raise DomainError(f"exponential coefficient c must be >= 1, got {self.c}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"exponential rate lambda must be > 0, got {self.lam}")

    @property
    def params(self) -> dict:
        return {"c": self.c, "lambda": self.lam}

    @property
    def lower(self) -> float:
        return math.log(self.c) / self.lam

    @property
    def upper(self) -> float:
        return math.inf

    def mean(self) -> float:
        return (math.log(self.c) + 1.0) / self.lam

    def tail_prob(self, x):
        x = np.asarray(x, dtype=float)
        s = np.where(x < self.lower, 1.0, self.c * np.exp(-self.lam * x))
        return _scalarize(np.clip(s, 0.0, 1.0))

    def from_uniform(self, u):
        u = np.asarray(u, dtype=float)
        return (math.log(self.c) - np.log1p(-u)) / self.lam

    def exact_max_moment(self, m):
        m = np.asarray(m, dtype=float)
        harmonic = _digamma(m + 1.0) + np.euler_gamma
        return _scalarize((math.log(self.c) + harmonic) / self.lam)

    @property
    def heavy_variance(self) -> bool:
        return False


@dataclass(frozen=True)
class UniformBounded:
    a: float
    b: float
    family = "uniform"

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("uniform bounds must be finite")
        if self.a < 0:
            raise DomainError(f"uniform lower bound must be >= 0, got {self.a}")
        if not self.b > self.a:
            raise DomainError(f"uniform needs b > a, got [{self.a}, {self.b}]")

    @property
    def params(self) -> dict:
        return {"a": self.a, "b": self.b}

    @property
    def lower(self) -> float:
        return self.a

    @property
    def upper(self) -> float:
        return self.b

    def mean(self) -> float:
        return 0.5 * (self.a + self.b)

    def tail_prob(self, x):
        x = np.asarray(x, dtype=float)
        s = (self.b - x) / (self.b - self.a)
        return _scalarize(np.clip(s, 0.0, 1.0))

    def from_uniform(self, u):
        return self.a + (self.b - self.a) * np.asarray(u, dtype=float)

    def exact_max_moment(self, m):
        m = np.asarray(m, dtype=float)
        return _scalarize(self.a + (self.b - self.a) * m / (m + 1.0))

    @property
    def heavy_variance(self) -> bool:
        return False


_STIRLING_MIN = 50.0


def _stirling_tail(z):
    # Series part of ln Gamma(z) beyond (z - 1/2) ln z - z + ln(2 pi)/2.
    zi = 1.0 / z
    z2 = zi * zi
    return zi * (1 / 12 - z2 * (1 / 360 - z2 * (1 / 1260 - z2 / 1680)))


def log_gamma_ratio(z, eps):
    """ln(Gamma(z) / Gamma(z - eps)) for 0 <= eps < 1, accurate for huge z.

    A plain difference of log-Gamma values loses all precision once
    ln Gamma(z) is large (about z = 1e9), so past a threshold the Stirling
    expansions are subtracted term by term, with the cancelling logarithms
    folded into ``log1p``.
    """
    shape = np.shape(z)
    z = np.atleast_1d(np.asarray(z, dtype=float))
    big = z - eps >= _STIRLING_MIN
    out = np.empty(z.shape)
    if np.any(~big):
        zs = z[~big]
        out[~big] = _gammaln(zs) - _gammaln(zs - eps)
    if np.any(big):
        zb = z[big]
        wb = zb - eps
        out[big] = (
            eps * np.log(zb)
            - (wb - 0.5) * np.log1p(-eps / zb)
            - eps
            + _stirling_tail(zb)
            - _stirling_tail(wb)
        )
    return _scalarize(out.reshape(shape))


DistSpec = Union[ParetoExact, ExponentialExact, UniformBounded]


def _scalarize(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def make_pareto(c: float, alpha: float) -> ParetoExact:
    return ParetoExact(float(c), float(alpha))


def make_exponential(c: float, lam: float) -> ExponentialExact:
    return ExponentialExact(float(c), float(lam))


def make_uniform(a: float, b: float) -> UniformBounded:
    return UniformBounded(float(a), float(b))


def sample(spec: DistSpec, stream: RandomStream, count: int) -> np.ndarray:
    """``count`` i.i.d. draws by inverse-CDF transform of the stream's uniforms."""
    return np.asarray(spec.from_uniform(stream.uniform(count)), dtype=float)


def mean(spec: DistSpec) -> float:
    return spec.mean()


def tail_prob(spec: DistSpec, x):
    return spec.tail_prob(x)


def exact_max_moment(spec: DistSpec, m):
    """E[max of m i.i.d. draws]; ``m`` may be an integer array."""
    if np.any(np.asarray(m) < 1):
        raise DomainError("m must be >= 1")
    return spec.exact_max_moment(m)


_FAMILIES = {
    "pareto": (ParetoExact, ("c", "alpha")),
    "exponential": (ExponentialExact, ("c", "lambda")),
    "uniform": (UniformBounded, ("a", "b")),
}


def to_dict(spec: DistSpec) -> dict:
    return {"family": spec.family, "params": dict(spec.params)}


def from_dict(obj: dict) -> DistSpec:
    try:
        cls, names = _FAMILIES[obj["family"]]
    except KeyError:
        raise DomainError(f"unknown distribution family in {obj!r}") from None
    params = obj.get("params", {})
    missing = [k for k in names if k not in params]
    if missing:
        raise DomainError(f"{obj['family']} needs params {names}, missing {missing}")
    return cls(*(float(params[k]) for k in names))


def parse(text: str) -> DistSpec:
    """Parse ``family:params`` such as ``pareto:1,2`` or ``exponential:c=1,lambda=2``.

    Missing exponential coefficient defaults to 1 (``exponential:lambda=2``).
    """
    family, _, rest = text.partition(":")
    family = {"exp": "exponential", "unif": "uniform"}.get(family.strip(), family.strip())
    if family not in _FAMILIES:
        raise DomainError(f"unknown distribution family {family!r}")
    _, names = _FAMILIES[family]
    values: dict = {}
    positional = []
    for tok in filter(None, (t.strip() for t in rest.split(","))):
        if "=" in tok:
            k, v = tok.split("=", 1)
            k = {"lam": "lambda"}.get(k.strip(), k.strip())
            values[k] = float(v)
        else:
            positional.append(float(tok))
    for k, v in zip(names, positional):
        values.setdefault(k, v)
    if family == "exponential":
        values.setdefault("c", 1.0)
    return from_dict({"family": family, "params": values})


def label(spec: DistSpec) -> str:
    """Compact ``family:v1,v2`` form (round-trips through :func:`parse`)."""
    vals = ",".join(_fmt(v) for v in spec.params.values())
    return f"{spec.family}:{vals}"


def _fmt(v: float) -> str:
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s
