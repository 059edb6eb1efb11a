"""Base changes: substituting power-series values for the marking variables.

A base change sigma sends each of T0..T3 to a rational function in the
series/parameter variables (q1, q2, q3, x, y, u) and carries a monomial
weight on those variables.  The induced data downstream is entirely
captured by pi = ord sigma(P) and lambda = ord sigma(V), computed in the
weight's value group.

Builtins (parameter variables q1..q3 always have weight 0):

    A       T1,T2,T3 -> 1 + q_i x, T0 = T1-image;     ord x = 1/4
    B(r)    T0=T1 -> 1 + q1 u, T2=T3 -> 1 + q2 x;     ord u = r/4, ord x = 1/4
    C       T0=T1 -> 1 + y, T2=T3 -> 1 + x;           lex, ord x = (1/4, 0), ord y = (0, 1/4)
    Cprime  T0=T1 -> 1 + y, T2=T3 -> 1;               ord y = 1/4 (degenerate: sigma(P) = 0)
    D       T0=T1 -> 1, T2=T3 -> 1 + x;               ord x = 1/4
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DegenerateBaseChange,
    InvalidParameter,
    MissingParameter,
    RingMismatch,
    UnknownExample,
    UsageError,
)
from .field2 import Poly2, RationalFunction
from .laurent import LaurentElement, LaurentFraction, P, Ring, V
from .valuation import MonomialWeight, Order

SERIES_VARS = ("q1", "q2", "q3", "x", "y", "u")

_ONE = Poly2.one(SERIES_VARS)


def series_poly(text: str) -> RationalFunction:
    """Parse a polynomial in the series/parameter variables."""
    return RationalFunction(Poly2.parse(SERIES_VARS, text))


def _series_one() -> RationalFunction:
    return RationalFunction(_ONE)


@dataclass(eq=False)
class BaseChange:
    """Substitution data for the four marking variables plus a weight."""

    name: str
    images: tuple  # sigma(T0), sigma(T1), sigma(T2), sigma(T3)
    weight: MonomialWeight
    params: dict = field(default_factory=dict)
    degenerate: bool = False

    def __post_init__(self):
        if len(self.images) != 4:
            raise InvalidParameter("a base change needs images for all of T0..T3")
        for img in self.images:
            if img.is_zero():
                raise InvalidParameter("base-change images must be nonzero")
        if not self.degenerate and self.apply(P(Ring.FULL)).is_zero():
            # Auto-flag rather than reject: degenerate contexts stay usable
            # for element evaluation, only pi/lambda are refused.
            self.degenerate = True

    # -- flags ---------------------------------------------------------------

    def reduced_valid(self) -> bool:
        """Factors through S_BN exactly when T0 and T1 share an image."""
        return self.images[0] == self.images[1]

    def nonorientable_valid(self) -> bool:
        """sigma(T0) = 1, the condition for unoriented cobordism bounds."""
        return self.images[0] == _series_one()

    # -- evaluation ------------------------------------------------------------

    def apply(self, x) -> RationalFunction:
        """Evaluate a LaurentElement or LaurentFraction under sigma."""
        if isinstance(x, LaurentFraction):
            den = self.apply(x.den)
            if den.is_zero():
                raise DegenerateBaseChange("denominator maps to zero under sigma")
            return self.apply(x.num) / den
        if not isinstance(x, LaurentElement):
            raise TypeError(f"cannot apply base change to {type(x).__name__}")
        if x.ring is Ring.BN and not self.reduced_valid():
            raise RingMismatch(
                "base change does not factor through the reduced ring (sigma(T0) != sigma(T1))"
            )
        if not x.terms:
            return RationalFunction.zero(SERIES_VARS)
        # Assemble the sum over one common denominator so only the final
        # RationalFunction construction pays a gcd reduction.
        pos = [max(max((t[i] for t in x.terms), default=0), 0) for i in range(4)]
        neg = [max(-min((t[i] for t in x.terms), default=0), 0) for i in range(4)]
        pows = []
        for i, img in enumerate(self.images):
            hi = pos[i] + neg[i]
            npow = [_ONE]
            dpow = [_ONE]
            for _ in range(hi):
                npow.append(npow[-1] * img.num)
                dpow.append(dpow[-1] * img.den)
            pows.append((npow, dpow))
        num = Poly2.zero(SERIES_VARS)
        for term in x.terms:
            prod = _ONE
            for i, e in enumerate(term):
                npow, dpow = pows[i]
                prod = prod * npow[e + neg[i]] * dpow[pos[i] - e]
            num = num + prod
        den = _ONE
        for i, img in enumerate(self.images):
            npow, dpow = pows[i]
            den = den * npow[neg[i]] * dpow[pos[i]]
        return RationalFunction(num, den)

    def ord_of(self, x) -> Order:
        return self.weight.ord_rf(self.apply(x))

    def sigma_P(self) -> RationalFunction:
        return self.apply(P(Ring.FULL))

    def sigma_V(self) -> RationalFunction:
        return self.apply(V())

    def pi_lambda(self):
        """(pi, lambda) = (ord sigma(P), ord sigma(V)); refuses degenerate data."""
        sp = self.sigma_P()
        sv = self.sigma_V()
        if self.degenerate or sp.is_zero() or sv.is_zero():
            raise DegenerateBaseChange(f"sigma(P) or sigma(V) vanishes for {self.name}")
        return self.weight.ord_rf(sp), self.weight.ord_rf(sv)

    def describe(self) -> str:
        if not self.params:
            return self.name
        inner = ", ".join(f"{k} = {v}" for k, v in sorted(self.params.items()))
        return f"{self.name} ({inner})"


BUILTIN_NAMES = ("A", "B", "C", "Cprime", "D")


def builtin(name: str, r=None) -> BaseChange:
    """Construct one of the builtin base changes (B needs the rational r)."""
    quarter = Fraction(1, 4)
    if name == "A":
        t1, t2, t3 = (series_poly(f"1 + q{i}*x") for i in (1, 2, 3))
        return BaseChange("A", (t1, t1, t2, t3), MonomialWeight.rational({"x": quarter}))
    if name == "B":
        if r is None:
            raise MissingParameter("builtin B needs the rational parameter r")
        r = Fraction(r)
        if not 0 < r <= 1:
            raise InvalidParameter(f"B requires r in (0, 1], got {r}")
        t1 = series_poly("1 + q1*u")
        t2 = series_poly("1 + q2*x")
        weight = MonomialWeight.rational({"u": r * quarter, "x": quarter})
        return BaseChange("B", (t1, t1, t2, t2), weight, params={"r": r})
    if name == "C":
        t1 = series_poly("1 + y")
        t2 = series_poly("1 + x")
        weight = MonomialWeight.lex({"x": (quarter, 0), "y": (0, quarter)})
        return BaseChange("C", (t1, t1, t2, t2), weight)
    if name == "Cprime":
        t1 = series_poly("1 + y")
        one = _series_one()
        weight = MonomialWeight.rational({"y": quarter})
        return BaseChange("Cprime", (t1, t1, one, one), weight, degenerate=True)
    if name == "D":
        one = _series_one()
        t2 = series_poly("1 + x")
        return BaseChange("D", (one, one, t2, t2), MonomialWeight.rational({"x": quarter}))
    raise UnknownExample(f"no builtin base change named {name!r} (have {BUILTIN_NAMES})")


def custom(substs: dict, weights: dict, lex_pairs: bool = False) -> BaseChange:
    """Build a base change from CLI-style text tables.

    substs maps 'T0'..'T3' to polynomial expressions in the series
    variables (missing entries default to 1); weights maps series variables
    to rationals, or to (a, b) pairs when lex_pairs is set.
    """
    images = []
    for t in ("T0", "T1", "T2", "T3"):
        text = substs.get(t)
        images.append(series_poly(text) if text is not None else _series_one())
    for key in substs:
        if key not in ("T0", "T1", "T2", "T3"):
            raise UsageError(f"substitution target {key!r} is not one of T0..T3")
    weight = MonomialWeight.lex(weights) if lex_pairs else MonomialWeight.rational(weights)
    return BaseChange("custom", tuple(images), weight)
