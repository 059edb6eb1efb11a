"""Weighted monomial valuations with rational or rank-2 lexicographic values.

A monomial weight assigns each series variable a value-group element; the
value group is either Q or Q x Q ordered lexicographically with the first
entry most significant.  Parameter variables (the q's) default to weight
zero.  ord of a polynomial is the minimum weight over its support, ord of a
fraction is ord(num) - ord(den), and the leading form collects the terms of
minimal weight.  Everything is exact: weights and values are Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ValueGroupMismatch, ZeroElement
from .field2 import Poly2, RationalFunction


@dataclass(frozen=True)
class Order:
    """Element of the value group: a length-1 or length-2 Fraction tuple."""

    vec: tuple

    def __post_init__(self):
        object.__setattr__(self, "vec", tuple(Fraction(v) for v in self.vec))
        if len(self.vec) not in (1, 2):
            raise ValueGroupMismatch(f"unsupported value-group rank {len(self.vec)}")

    @classmethod
    def rational(cls, a):
        return cls((Fraction(a),))

    @classmethod
    def lex(cls, a, b):
        return cls((Fraction(a), Fraction(b)))

    @classmethod
    def zero(cls, kind):
        return cls((Fraction(0),) * kind)

    @property
    def kind(self):
        return len(self.vec)

    def _check(self, other):
        if not isinstance(other, Order):
            raise TypeError(f"expected Order, got {type(other).__name__}")
        if len(self.vec) != len(other.vec):
            raise ValueGroupMismatch("comparing values from different value groups")

    def __add__(self, other):
        self._check(other)
        return Order(tuple(a + b for a, b in zip(self.vec, other.vec)))

    def __sub__(self, other):
        self._check(other)
        return Order(tuple(a - b for a, b in zip(self.vec, other.vec)))

    def __neg__(self):
        return Order(tuple(-a for a in self.vec))

    def scale(self, n):
        return Order(tuple(Fraction(n) * a for a in self.vec))

    def __lt__(self, other):
        self._check(other)
        return self.vec < other.vec

    def __le__(self, other):
        self._check(other)
        return self.vec <= other.vec

    def __gt__(self, other):
        self._check(other)
        return self.vec > other.vec

    def __ge__(self, other):
        self._check(other)
        return self.vec >= other.vec

    def is_zero(self):
        return all(a == 0 for a in self.vec)

    def as_fraction(self):
        """The scalar value; only meaningful for the rank-1 group."""
        if len(self.vec) != 1:
            raise ValueGroupMismatch("scalar value requested from the lex group")
        return self.vec[0]

    def __str__(self):
        if len(self.vec) == 1:
            return str(self.vec[0])
        return "(" + ", ".join(str(a) for a in self.vec) + ")"

    __repr__ = __str__


class MonomialWeight:
    """Variable-indexed weights generating a monomial valuation."""

    __slots__ = ("weights", "kind")

    def __init__(self, weights):
        weights = {v: w for v, w in weights.items()}
        kinds = {w.kind for w in weights.values()}
        if len(kinds) > 1:
            raise ValueGroupMismatch("mixed value groups in one weight table")
        self.kind = kinds.pop() if kinds else 1
        zero = Order.zero(self.kind)
        for v, w in weights.items():
            if not w > zero:
                raise ValueGroupMismatch(f"series variable {v} needs strictly positive weight")
        self.weights = weights

    @classmethod
    def rational(cls, table):
        return cls({v: Order.rational(a) for v, a in table.items()})

    @classmethod
    def lex(cls, table):
        return cls({v: Order.lex(a, b) for v, (a, b) in table.items()})

    def zero(self):
        return Order.zero(self.kind)

    def ord_term(self, vars, exps):
        total = self.zero()
        for v, e in zip(vars, exps):
            if e:
                w = self.weights.get(v)
                if w is not None:
                    total = total + w.scale(e)
        return total

    def ord_poly(self, p: Poly2) -> Order:
        if p.is_zero():
            raise ZeroElement("ord of the zero polynomial")
        return min(self.ord_term(p.vars, t) for t in p.terms)

    def leading_form(self, p: Poly2) -> Poly2:
        """Sub-polynomial of minimal-weight terms; nonzero for nonzero input."""
        lo = self.ord_poly(p)
        return Poly2(p.vars, (t for t in p.terms if self.ord_term(p.vars, t) == lo))

    def ord_rf(self, f: RationalFunction) -> Order:
        if f.is_zero():
            raise ZeroElement("ord of the zero rational function")
        return self.ord_poly(f.num) - self.ord_poly(f.den)

    def leading_form_rf(self, f: RationalFunction) -> RationalFunction:
        if f.is_zero():
            raise ZeroElement("leading form of zero")
        return RationalFunction(self.leading_form(f.num), self.leading_form(f.den))
