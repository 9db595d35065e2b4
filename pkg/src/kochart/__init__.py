"""Chart calculus for the connective real K-theory of the mod-2
Eilenberg-MacLane space in degree two.

The package builds every chart family in the computation (the M building
blocks, the V/I/L/K summand blocks, pre-edges and edges by pairing
simulation and by closed formula, the A and B summands, and their
cohomological counterparts), assembles the graded answer through a chosen
bound, and cross-verifies the independent descriptions against each other
and against transcribed reference charts.
"""
from .chart import (Chart, ChartClass, PairingError, StructureError, cup_d1,
                    direct_sum, dual, group_at, groups, phi, strict_equiv,
                    suspend, weak_equiv)
from .numeric import J, PoincareSeries, alpha, f_b, h_k, lg, nu

__all__ = [
    "Chart", "ChartClass", "PairingError", "StructureError", "cup_d1",
    "direct_sum", "dual", "group_at", "groups", "phi", "strict_equiv",
    "suspend", "weak_equiv", "J", "PoincareSeries", "alpha", "f_b", "h_k",
    "lg", "nu",
]
