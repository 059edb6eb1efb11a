"""Sparse multivariate polynomial arithmetic over the two-element field.

A polynomial over F2 is a finite set of monomials: since every coefficient
is 1, we store only the support.  A monomial is an exponent tuple aligned
with a fixed tuple of variable names carried by each polynomial.  Addition
is symmetric difference of supports; the Frobenius identity (a+b)^2 =
a^2 + b^2 holds on the nose and squaring just doubles exponent vectors.

Rational functions are reduced fractions of such polynomials.  Because the
only unit of F2[x1..xn] is 1, a gcd-reduced numerator/denominator pair is a
canonical form, so equality is plain structural equality.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DivisionByZero, RingMismatch, UsageError

Term = tuple  # exponent tuple, aligned with Poly2.vars


def grevlex_key(exps):
    """Sort key realising graded reverse lexicographic order (bigger = later)."""
    return (sum(exps),) + tuple(-e for e in reversed(exps))


class Poly2:
    """Polynomial over F2 with a fixed variable tuple."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = tuple(vars)
        n = len(self.vars)
        ts = frozenset(tuple(t) for t in terms)
        for t in ts:
            if len(t) != n or any(e < 0 for e in t):
                raise ValueError(f"bad exponent tuple {t} for vars {self.vars}")
        self.terms = ts

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, vars):
        return cls(vars, ())

    @classmethod
    def one(cls, vars):
        return cls(vars, ((0,) * len(vars),))

    @classmethod
    def var(cls, vars, name, power=1):
        i = tuple(vars).index(name)
        t = [0] * len(vars)
        t[i] = power
        return cls(vars, (tuple(t),))

    @classmethod
    def from_exps(cls, vars, exps_dicts):
        """Build from an iterable of {var: exp} dicts (repeated terms cancel)."""
        vars = tuple(vars)
        idx = {v: i for i, v in enumerate(vars)}
        terms = set()
        for d in exps_dicts:
            t = [0] * len(vars)
            for v, e in d.items():
                t[idx[v]] += e
            terms ^= {tuple(t)}
        return cls(vars, terms)

    @classmethod
    def parse(cls, vars, text):
        """Parse a '+'-separated product-of-powers expression over F2."""
        terms = []
        for factors in parse_term_list(text):
            d = {}
            keep = True
            for name, exp in factors:
                if name == "1":
                    continue
                if name == "0":
                    keep = False
                    continue
                if name not in vars:
                    raise UsageError(f"unknown variable {name!r} (have {vars})")
                if exp < 0:
                    raise UsageError(f"negative exponent on {name} in a polynomial")
                d[name] = d.get(name, 0) + exp
            if keep:
                terms.append(d)
        return cls.from_exps(vars, terms)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(0,) * len(self.vars)}

    def is_monomial(self):
        return len(self.terms) == 1

    def total_degree(self):
        return max((sum(t) for t in self.terms), default=0)

    def degree_in(self, name):
        i = self.vars.index(name)
        return max((t[i] for t in self.terms), default=0)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Poly2):
            raise TypeError(f"expected Poly2, got {type(other).__name__}")
        if self.vars != other.vars:
            raise RingMismatch(f"variable universes differ: {self.vars} vs {other.vars}")

    def __add__(self, other):
        self._check(other)
        return Poly2(self.vars, self.terms ^ other.terms)

    __sub__ = __add__  # characteristic 2

    def __mul__(self, other):
        self._check(other)
        if not self.terms or not other.terms:
            return Poly2.zero(self.vars)
        acc = set()
        for a in self.terms:
            for b in other.terms:
                t = tuple(x + y for x, y in zip(a, b))
                if t in acc:
                    acc.discard(t)
                else:
                    acc.add(t)
        return Poly2(self.vars, acc)

    def square(self):
        return Poly2(self.vars, (tuple(2 * e for e in t) for t in self.terms))

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly2.one(self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.square()
        return result

    def __eq__(self, other):
        return isinstance(other, Poly2) and self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, self.terms))

    def __bool__(self):
        return bool(self.terms)

    # -- leading data / division ---------------------------------------------

    def leading_term(self):
        """Leading monomial under grevlex; raises on zero."""
        if not self.terms:
            raise DivisionByZero("leading term of the zero polynomial")
        return max(self.terms, key=grevlex_key)

    def sorted_terms(self):
        return sorted(self.terms, key=grevlex_key, reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for t in self.sorted_terms():
            factors = [
                f"{v}^{e}" if e != 1 else v
                for v, e in zip(self.vars, t)
                if e
            ]
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)

    __repr__ = __str__


def divides(a, b):
    """Monomial divisibility: does exponent tuple a divide b."""
    return all(x <= y for x, y in zip(a, b))


def poly_div(num, den):
    """Exact division num/den, or None when den does not divide num.

    Single-divisor reduction under grevlex: if num = q*den the remainder of
    the division loop is forced to zero, so this doubles as a divisibility
    test.
    """
    num._check(den)
    if den.is_zero():
        raise DivisionByZero("polynomial division by zero")
    if num.is_zero():
        return Poly2.zero(num.vars)
    lt_d = den.leading_term()
    rest = set(num.terms)
    quot = set()
    while rest:
        lt = max(rest, key=grevlex_key)
        if not divides(lt_d, lt):
            return None
        shift = tuple(x - y for x, y in zip(lt, lt_d))
        quot ^= {shift}
        for t in den.terms:
            m = tuple(x + y for x, y in zip(shift, t))
            if m in rest:
                rest.discard(m)
            else:
                rest.add(m)
    return Poly2(num.vars, quot)


# -- gcd via primitive pseudo-remainder sequences -----------------------------

def _to_univar(p, vi):
    """Split p as a univariate in variable index vi with Poly2 coefficients."""
    coeffs = {}
    for t in p.terms:
        d = t[vi]
        base = t[:vi] + (0,) + t[vi + 1:]
        coeffs.setdefault(d, set()).symmetric_difference_update({base})
    return {d: Poly2(p.vars, ts) for d, ts in coeffs.items() if ts}


def _from_univar(coeffs, vars, vi):
    terms = set()
    for d, c in coeffs.items():
        for t in c.terms:
            terms.add(t[:vi] + (d,) + t[vi + 1:])
    return Poly2(vars, terms)


def _uni_add(a, b):
    out = dict(a)
    for d, c in b.items():
        s = out.get(d)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(d, None)
        else:
            out[d] = s
    return out


def _uni_scale(a, c, shift):
    """Multiply a univariate rep by c * v^shift."""
    out = {}
    for d, coeff in a.items():
        p = coeff * c
        if not p.is_zero():
            out[d + shift] = p
    return out


def _prem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b (char 2, no signs)."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    e = max(a) - db + 1
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        # lb*r + lr*v^(dr-db)*b kills the degree-dr head exactly.
        r = _uni_add(_uni_scale(r, lb, 0), _uni_scale(b, lr, dr - db))
        if r and max(r) >= dr:
            raise AssertionError("pseudo-division failed to drop degree")
        e -= 1
    if r and e > 0:
        r = _uni_scale(r, lb**e, 0)
    return r


def _content(coeffs):
    # smallest coefficients first: the chain usually hits 1 immediately
    g = None
    for c in sorted(coeffs.values(), key=lambda c: (len(c.terms), c.total_degree())):
        g = c if g is None else gcd(g, c)
        if g.is_one():
            break
    return g


def gcd(a, b):
    """Greatest common divisor over F2[vars] (monic by construction).

    Subresultant remainder sequence on the variable of smallest degree; the
    tracked factor g*h^delta divides each pseudo-remainder exactly, which
    keeps coefficients resultant-sized instead of swelling exponentially.
    """
    a._check(b)
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_one() or b.is_one():
        return Poly2.one(a.vars)
    if a == b:
        return a
    if len(a.terms) == 1 or len(b.terms) == 1:
        # against a monomial only the common monomial part survives
        mins = tuple(
            min(min(t[i] for t in a.terms), min(t[i] for t in b.terms))
            for i in range(len(a.vars))
        )
        return Poly2(a.vars, frozenset({mins}))
    # trial division: when one operand divides the other it is the gcd
    da, db = a.total_degree(), b.total_degree()
    if db <= da and poly_div(a, b) is not None:
        return b
    if da <= db and poly_div(b, a) is not None:
        return a
    vi = None
    best = None
    for i in range(len(a.vars)):
        d = max(
            max((t[i] for t in a.terms), default=0),
            max((t[i] for t in b.terms), default=0),
        )
        if d and (best is None or d < best):
            vi, best = i, d
    if vi is None:
        return Poly2.one(a.vars)  # both are 1
    ua, ub = _to_univar(a, vi), _to_univar(b, vi)
    ca, cb = _content(ua), _content(ub)
    cont = gcd(ca, cb)
    pa = {d: poly_div(c, ca) for d, c in ua.items()}
    pb = {d: poly_div(c, cb) for d, c in ub.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    g = h = Poly2.one(a.vars)
    while True:
        delta = max(pa) - max(pb)
        r = _prem(pa, pb)
        if not r:
            break
        if max(r) == 0:
            pb = r
            break
        divisor = g * h**delta
        r = {d: poly_div(c, divisor) for d, c in r.items()}
        pa, pb = pb, r
        g = pa[max(pa)]
        if delta == 1:
            h = g
        elif delta > 1:
            h = poly_div(g**delta, h ** (delta - 1))
    if max(pb) == 0:
        return cont
    cpb = _content(pb)
    pb = {d: poly_div(c, cpb) for d, c in pb.items()}
    return cont * _from_univar(pb, a.vars, vi)


class RationalFunction:
    """Reduced fraction of F2 polynomials over a shared variable tuple."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly2.one(num.vars)
        num._check(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            num, den = Poly2.zero(num.vars), Poly2.one(num.vars)
        else:
            g = gcd(num, den)
            if not g.is_one():
                num = poly_div(num, g)
                den = poly_div(den, g)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls, vars):
        return cls(Poly2.zero(vars))

    @classmethod
    def one(cls, vars):
        return cls(Poly2.one(vars))

    @classmethod
    def _coprime(cls, num, den):
        """Internal: skip reduction; the caller guarantees gcd(num, den) = 1."""
        self = object.__new__(cls)
        self.num = num
        self.den = den
        return self

    @property
    def vars(self):
        return self.num.vars

    def is_zero(self):
        return self.num.is_zero()

    # Sums and products are rebuilt in lowest terms from component gcds
    # (both operands are already reduced), never by reducing a full
    # cross-product: the small gcds below leave the result coprime.

    def __add__(self, other):
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        g = gcd(self.den, other.den)
        if g.is_one():
            num = self.num * other.den + other.num * self.den
            if num.is_zero():
                return RationalFunction.zero(self.vars)
            # gcd(num, d1) = gcd(n1*d2, d1) = 1 and symmetrically for d2
            return RationalFunction._coprime(num, self.den * other.den)
        d1r = poly_div(self.den, g)
        d2r = poly_div(other.den, g)
        num = self.num * d2r + other.num * d1r
        if num.is_zero():
            return RationalFunction.zero(self.vars)
        # any common factor with d1r or d2r is ruled out; only g can share
        h = gcd(num, g)
        if h.is_one():
            return RationalFunction._coprime(num, d1r * d2r * g)
        return RationalFunction._coprime(poly_div(num, h), d1r * d2r * poly_div(g, h))

    __sub__ = __add__

    def __mul__(self, other):
        if self.num.is_zero() or other.num.is_zero():
            return RationalFunction.zero(self.vars)
        g1 = gcd(self.num, other.den)
        g2 = gcd(other.num, self.den)
        num = poly_div(self.num, g1) * poly_div(other.num, g2)
        den = poly_div(self.den, g2) * poly_div(other.den, g1)
        return RationalFunction._coprime(num, den)

    def __truediv__(self, other):
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return self * other.inverse()

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RationalFunction._coprime(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return RationalFunction.one(self.vars)
        if self.num.is_zero():
            return self
        return RationalFunction._coprime(self.num ** n, self.den ** n)

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return bool(self.num)

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1:
            n = f"({n})"
        d = str(self.den)
        if len(self.den.terms) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    __repr__ = __str__


# -- shared expression tokenizer ----------------------------------------------

_FACTOR_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*|[01])(?:\^(-?\d+))?$")


def parse_term_list(text):
    """Split 'a*b^2 + c' into [[(name, exp), ...], ...].

    The grammar is sums of products of powers; exponents may be negative
    (callers reject them where inappropriate).  The bare factors '0' and '1'
    are passed through with their literal names.
    """
    if not text or not text.strip():
        raise UsageError("empty expression")
    out = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise UsageError(f"empty summand in {text!r}")
        factors = []
        for raw in chunk.split("*"):
            raw = raw.strip()
            m = _FACTOR_RE.match(raw)
            if not m:
                raise UsageError(f"cannot parse factor {raw!r} in {text!r}")
            name, exp = m.group(1), m.group(2)
            factors.append((name, int(exp) if exp is not None else 1))
        out.append(factors)
    return out


def parse_fraction_text(text):
    """Parse an exact rational like '1/3' or '2' into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rational {text!r}") from exc
