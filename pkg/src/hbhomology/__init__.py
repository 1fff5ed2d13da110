"""Triply-graded colored HOMFLYPT homology of links in handlebodies."""

from .braid import BraidWord, Coloring, parse_braid
from .complexes import BudgetExceeded, braid_complex, core_closure
from .hochschild import TracedComplex, hh
from .invariant import NormalizationShift, NotDivisible, TriGradedSeries, hhh, hhh_euler, reduced_series
from .oracle import handlebody_homfly_decat, homfly_skein

__all__ = [
    "BraidWord",
    "BudgetExceeded",
    "Coloring",
    "NormalizationShift",
    "NotDivisible",
    "TracedComplex",
    "TriGradedSeries",
    "braid_complex",
    "core_closure",
    "handlebody_homfly_decat",
    "hh",
    "hhh",
    "hhh_euler",
    "homfly_skein",
    "parse_braid",
    "reduced_series",
]
