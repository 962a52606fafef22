"""Information regimes in matching markets: simulation and asymptotics."""

from .dist import ExponentialExact, ParetoExact, UniformBounded, make_exponential, make_pareto, make_uniform
from .market import (
    CapacitatedGeneral,
    CapacitatedUnit,
    MarketConfig,
    Regime,
    SamplingMode,
    Uncapacitated,
)

__all__ = [
    "ExponentialExact", "ParetoExact", "UniformBounded",
    "make_exponential", "make_pareto", "make_uniform",
    "CapacitatedGeneral", "CapacitatedUnit", "MarketConfig", "Regime", "SamplingMode", "Uncapacitated",
]
__version__ = "0.1.0"
