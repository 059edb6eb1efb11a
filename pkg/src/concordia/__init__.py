"""Exact concordance-invariant calculus over local coefficient systems.

The pipeline: Laurent-type coefficient rings over F2 -> base changes into
valued series rings -> homology of small chain complexes over the induced
valuation ring -> a principal fractional ideal znat whose ord is the
concordance invariant f_sigma, with a parallel Groebner route at the ring
level.  Everything is exact; there is no floating point anywhere.
"""

from .basechange import BaseChange, builtin, custom
from .errors import ConcordiaError
from .homalg import ChainComplex, ChainMap, DistinguishedCycle
from .ideals import FractionalIdeal, ValuationIdeal
from .invariants import (
    KnotModel,
    connected_sum,
    f_plus,
    f_profile,
    f_sigma,
    invariant_report,
    unknotting_bound,
    znat_bn,
    znat_valuation,
)
from .laurent import LaurentElement, LaurentFraction, Ring
from .valuation import MonomialWeight, Order

__all__ = [
    "BaseChange",
    "ChainComplex",
    "ChainMap",
    "ConcordiaError",
    "DistinguishedCycle",
    "FractionalIdeal",
    "KnotModel",
    "LaurentElement",
    "LaurentFraction",
    "MonomialWeight",
    "Order",
    "Ring",
    "ValuationIdeal",
    "builtin",
    "connected_sum",
    "custom",
    "f_plus",
    "f_profile",
    "f_sigma",
    "invariant_report",
    "unknotting_bound",
    "znat_bn",
    "znat_valuation",
]
