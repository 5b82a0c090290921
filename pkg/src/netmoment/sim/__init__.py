"""Simulation harness: graphon library, samplers, oracles and experiments."""

from .graphons import (
    BUILTIN_GRAPHON_NAMES,
    Graphon,
    SampledNetwork,
    builtin_graphon,
    sample_network,
)
from .oracle import (
    MomentEstimate,
    population_scaled_moment,
    population_scaled_moment_exact,
)
from .bootstrap import BootstrapResult, bootstrap_distribution

__all__ = [
    "BUILTIN_GRAPHON_NAMES",
    "Graphon",
    "SampledNetwork",
    "builtin_graphon",
    "sample_network",
    "MomentEstimate",
    "population_scaled_moment",
    "population_scaled_moment_exact",
    "BootstrapResult",
    "bootstrap_distribution",
]
