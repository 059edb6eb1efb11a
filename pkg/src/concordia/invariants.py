"""The invariant pipeline: from a knot model and a base change to numbers.

A knot model is a chain complex with a distinguished vector and cobordism
bookkeeping (genus g, positive double points dplus).  The vector either
represents a cycle carried from the unknot to the knot, or a functional
carried the other way; the two directions use mirror formulas:

  unknot-to-K:  znat = sigma(P)^g * sigma(V)^dplus * <c^-1>, where c is the
                free-part coefficient of the cycle class in homology;
  K-to-unknot:  znat = sigma(P)^-g * sigma(V)^-dplus * <phi(free generator)>.

Over a valuation ring znat is principal and f_sigma is its ord.  Over S_BN
(no valuation) the same construction runs through an exact rank-1 module
realization when the presentation has a single relation; the result is a
generator-list fractional ideal compared by Groebner containment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .basechange import BaseChange, builtin
from .errors import (
    CycleInTorsion,
    DirectionMismatch,
    IntegrityError,
    MissingSignature,
    NonIntegral,
    NotNonorientableValid,
    RankNotOne,
    RingMismatch,
    UnsupportedPresentation,
    UsageError,
)
from .homalg import (
    ChainComplex,
    DistinguishedCycle,
    K_TO_UNKNOT,
    UNKNOT_TO_K,
    complex_from_json,
    complex_to_json,
    homology_over_valuation,
    lmat_is_zero,
    tensor,
    tensor_generators,
    validate_cycle,
)
from .ideals import (
    FractionalIdeal,
    ValuationIdeal,
    laurent_member,
    module_quotient_rank1,
    quotient_embedding_image,
)
from .laurent import (
    L,
    LaurentElement,
    LaurentFraction,
    P,
    Ring,
    V,
    format_laurent_pretty,
    laurent_gcd,
)
from .valuation import Order


@dataclass
class KnotModel:
    """Chain complex + distinguished vector + cobordism metadata."""

    name: str
    complex: ChainComplex
    cycle: DistinguishedCycle
    signature: int = None
    expected_ideal: FractionalIdeal = None

    def __post_init__(self):
        validate_cycle(self.complex, self.cycle)

    @property
    def ring(self):
        return self.complex.ring

    def to_json(self) -> dict:
        return complex_to_json(self.complex, self.cycle, self.name, self.signature)

    @classmethod
    def from_json(cls, data: dict) -> "KnotModel":
        name, complex, cycle, signature = complex_from_json(data)
        if cycle is None:
            raise UsageError("knot model JSON lacks a distinguished cycle")
        return cls(name or "user-model", complex, cycle, signature)


# -- elementary cobordism accounting ---------------------------------------------

def adjusted_genus(chi: int, c_plus: int, c_minus: int) -> Fraction:
    """(-chi + c_plus - c_minus) / 2 for a cobordism surface."""
    if c_plus < 0 or c_minus < 0:
        raise UsageError("double-point counts must be nonnegative")
    return Fraction(-chi + c_plus - c_minus, 2)


def eta(g_a, delta: int, nu: int) -> int:
    """g_a + delta/2 - nu/4; the combination must come out an integer."""
    val = Fraction(g_a) + Fraction(delta, 2) - Fraction(nu, 4)
    if val.denominator != 1:
        raise NonIntegral(f"eta = {val} is not an integer; inconsistent surface data")
    return int(val)


# -- valuation-level pipeline -----------------------------------------------------

def _check_sigma(model: KnotModel, sigma: BaseChange):
    if not sigma.reduced_valid():
        raise UsageError(
            f"base change {sigma.describe()} does not identify sigma(T0) and "
            "sigma(T1); it does not induce coefficients for these models"
        )


def _sigma_vector(sigma: BaseChange, vec):
    return [sigma.apply(e) for e in vec]


def znat_valuation(model: KnotModel, sigma: BaseChange) -> ValuationIdeal:
    """The principal ideal znat over the valuation ring of sigma."""
    _check_sigma(model, sigma)
    pi, lam = sigma.pi_lambda()
    g, dplus = model.cycle.genus, model.cycle.dplus
    summary = homology_over_valuation(model.complex, sigma)[model.cycle.degree]
    if summary.free_rank != 1:
        raise RankNotOne(
            f"homology at degree {model.cycle.degree} has free rank "
            f"{summary.free_rank}, need 1"
        )
    shift = sigma.sigma_P() ** g * sigma.sigma_V() ** dplus
    shift_ord = pi.scale(g) + lam.scale(dplus)
    if model.cycle.direction == UNKNOT_TO_K:
        _, free = summary.class_coords(_sigma_vector(sigma, model.cycle.vector))
        c = free[0]
        if c.is_zero():
            raise CycleInTorsion("distinguished class has no free part")
        return ValuationIdeal(shift / c, shift_ord - sigma.weight.ord_rf(c))
    lift = summary.free_generator_lift()
    phi = _sigma_vector(sigma, model.cycle.vector)
    val = None
    for a, b in zip(phi, lift):
        term = a * b
        val = term if val is None else val + term
    if val is None or val.is_zero():
        raise CycleInTorsion("functional vanishes on the free generator")
    return ValuationIdeal(val / shift, sigma.weight.ord_rf(val) - shift_ord)


def f_sigma(model: KnotModel, sigma: BaseChange) -> Order:
    return znat_valuation(model, sigma).order


def f_plus(model: KnotModel) -> Fraction:
    """Second lex coordinate of f under the two-variable lex base change."""
    o = f_sigma(model, builtin("C"))
    if o.vec[0] != 0:
        raise IntegrityError(
            f"first lex component of f is {o.vec[0]}, expected 0; "
            "refusing to truncate"
        )
    return o.vec[1]


# -- BN-level pipeline --------------------------------------------------------------

def _single_relation(model: KnotModel):
    """The in-map row at the cycle degree, for 1-relation presentations."""
    d = model.cycle.degree
    c = model.complex
    if c.rank(d + 1) and not lmat_is_zero(c.map_into(d + 1)):
        raise UnsupportedPresentation(
            "cycle degree has an outgoing differential; not a cokernel presentation"
        )
    n_in = c.rank(d - 1)
    if n_in == 0:
        return None
    if n_in > 1:
        raise UnsupportedPresentation(
            f"{n_in} relations at the cycle degree; use a valuation context"
        )
    return c.map_into(d)[0]


def znat_bn(model: KnotModel) -> FractionalIdeal:
    """znat as a generator-list fractional ideal (no valuation involved)."""
    ring = model.ring
    g, dplus = model.cycle.genus, model.cycle.dplus
    v_elt = V() if ring is Ring.FULL else L()
    shift = LaurentFraction(P(ring) ** g * v_elt ** dplus)
    if model.cycle.direction == UNKNOT_TO_K:
        relation = _single_relation(model)
        if relation is None:
            if model.complex.rank(model.cycle.degree) != 1:
                raise UnsupportedPresentation(
                    "free presentation of rank > 1 has no canonical rank-1 image"
                )
            ideal = FractionalIdeal.unit(ring)
            z = LaurentFraction(model.cycle.vector[0])
        else:
            ideal = module_quotient_rank1(relation, ring)
            z = quotient_embedding_image(relation, model.cycle.vector, ring)
        if z.is_zero():
            raise CycleInTorsion("distinguished class maps to zero in the ideal")
        gens = [(shift * g_ / z).reduced() for g_ in ideal.gens]
        return FractionalIdeal.from_gens(ring, gens)
    # K-to-unknot: phi applied to the kernel generator of the out-column
    d = model.cycle.degree
    c = model.complex
    if c.rank(d - 1) and not lmat_is_zero(c.map_into(d)):
        raise UnsupportedPresentation(
            "functional models with incoming differentials need a valuation context"
        )
    out = c.map_into(d + 1)
    if c.rank(d) == 2 and c.rank(d + 1) == 1:
        a, b = out[0][0], out[1][0]
        h = laurent_gcd(a, b)
        gen = (
            LaurentFraction(b, h).as_laurent(),
            LaurentFraction(a, h).as_laurent(),
        )
    elif c.rank(d) == 1 and (c.rank(d + 1) == 0 or lmat_is_zero(out)):
        gen = (LaurentElement.one(ring),)
    else:
        raise UnsupportedPresentation(
            "kernel generator is only extracted from a single out-column"
        )
    val = LaurentFraction(LaurentElement.zero(ring))
    for a, b in zip(model.cycle.vector, gen):
        val = val + LaurentFraction(a * b)
    if val.is_zero():
        raise CycleInTorsion("functional vanishes on the kernel generator")
    return FractionalIdeal.from_gens(ring, [(val / shift).reduced()])


def describe_bn_ideal(ideal: FractionalIdeal) -> str:
    parts = []
    for g in ideal.gens:
        r = g.reduced()
        if r.is_integral():
            parts.append(format_laurent_pretty(r.as_laurent()))
        else:
            parts.append(str(r))
    return "<" + ", ".join(parts) + ">"


# -- profiles ----------------------------------------------------------------------

@dataclass
class ProfileSegment:
    lo: Fraction
    hi: Fraction
    intercept: Fraction
    slope: Fraction

    def value_at(self, r: Fraction) -> Fraction:
        return self.intercept + self.slope * r

    def formula(self) -> str:
        if self.slope == 0:
            return str(self.intercept)
        s = "r" if self.slope == 1 else f"{self.slope}*r"
        if self.intercept == 0:
            return s
        return f"{self.intercept} + {s}"


@dataclass
class ProfileReport:
    samples: list           # (r, f_r) pairs, exact Fractions
    segments: list          # ProfileSegment, ordered
    breakpoints: list       # confirmed interior breakpoints
    unresolved: list        # (lo, hi) intervals the fit could not settle

    def csv(self) -> str:
        lines = ["r,f_r"]
        for r, f in self.samples:
            lines.append(f"{r},{f}")
        return "\n".join(lines) + "\n"

    def render(self) -> str:
        lines = []
        for seg in self.segments:
            lines.append(f"f_r = {seg.formula()} on [{seg.lo}, {seg.hi}]")
        for b in self.breakpoints:
            lines.append(f"breakpoint at r = {b}")
        for lo, hi in self.unresolved:
            lines.append(f"unresolved between r = {lo} and r = {hi}")
        return "\n".join(lines)


def f_profile(model: KnotModel, samples, depth: int = 6) -> ProfileReport:
    """Evaluate r -> f_r on the samples and fit exact affine segments."""
    rs = [Fraction(r) for r in samples]
    if sorted(set(rs)) != rs or not rs:
        raise UsageError("samples must be distinct and sorted ascending")
    if rs[0] <= 0 or rs[-1] > 1:
        raise UsageError("samples must lie in (0, 1]")

    def evaluate(r: Fraction) -> Fraction:
        return f_sigma(model, builtin("B", r)).as_fraction()

    pts = [(r, evaluate(r)) for r in rs]
    if len(pts) == 1:
        return ProfileReport(pts, [], [], [])

    # maximal collinear runs, each starting at the previous run's last sample
    runs = []
    i = 0
    while i < len(pts) - 1:
        (r0, f0), (r1, f1) = pts[i], pts[i + 1]
        slope = (f1 - f0) / (r1 - r0)
        intercept = f0 - slope * r0
        j = i + 1
        while j + 1 < len(pts) and pts[j + 1][1] == intercept + slope * pts[j + 1][0]:
            j += 1
        runs.append([i, j, intercept, slope])
        i = j
    merged = [runs[0]]
    for run in runs[1:]:
        if (run[2], run[3]) == (merged[-1][2], merged[-1][3]):
            merged[-1][1] = run[1]
        else:
            merged.append(run)

    # A two-point run carries no corroboration (any two points are collinear);
    # check one midpoint before trusting it, and drop it otherwise.
    segments = []
    unresolved = []
    for i0, j0, a, b in merged:
        seg = ProfileSegment(pts[i0][0], pts[j0][0], a, b)
        if j0 - i0 >= 2:
            segments.append(seg)
            continue
        mid = (seg.lo + seg.hi) / 2
        if evaluate(mid) == seg.value_at(mid):
            segments.append(seg)

    breakpoints = []
    for s1, s2 in zip(segments, segments[1:]):
        if s1.slope == s2.slope:
            unresolved.append((s1.hi, s2.lo))
            continue
        r_star = (s2.intercept - s1.intercept) / (s1.slope - s2.slope)
        if s1.hi <= r_star <= s2.lo and evaluate(r_star) == s1.value_at(r_star):
            breakpoints.append(r_star)
            s1.hi = r_star
            s2.lo = r_star
            continue
        # bisect toward the point where f leaves the left line
        lo, hi = s1.hi, s2.lo
        for _ in range(depth):
            mid = (lo + hi) / 2
            fm = evaluate(mid)
            if fm == s1.value_at(mid):
                lo = mid
            elif fm == s2.value_at(mid):
                hi = mid
            else:
                break
        s1.hi = lo
        s2.lo = hi
        unresolved.append((lo, hi))
    if segments:
        if segments[0].lo > rs[0]:
            unresolved.insert(0, (rs[0], segments[0].lo))
        if segments[-1].hi < rs[-1]:
            unresolved.append((segments[-1].hi, rs[-1]))
    else:
        unresolved.append((rs[0], rs[-1]))
    return ProfileReport(pts, segments, breakpoints, unresolved)


# -- bounds ------------------------------------------------------------------------

def slice_genus_bound(model: KnotModel, sigma: BaseChange) -> Fraction:
    pi, _ = sigma.pi_lambda()
    return f_sigma(model, sigma).as_fraction() / pi.as_fraction()


def clasp_bound(model: KnotModel) -> Fraction:
    return f_plus(model)


def eta_bound(model: KnotModel, sigma: BaseChange) -> Fraction:
    if not sigma.nonorientable_valid():
        raise NotNonorientableValid(
            f"{sigma.describe()} does not send T0 to 1; eta bound unavailable"
        )
    pi, _ = sigma.pi_lambda()
    return f_sigma(model, sigma).as_fraction() / pi.as_fraction()


def gordon_litherland_bound(model: KnotModel, sigma: BaseChange) -> Fraction:
    if model.signature is None:
        raise MissingSignature("the Gordon-Litherland row needs a declared signature")
    if not sigma.nonorientable_valid():
        raise NotNonorientableValid(
            f"{sigma.describe()} does not send T0 to 1; b1 bound unavailable"
        )
    pi, _ = sigma.pi_lambda()
    base = f_sigma(model, sigma).as_fraction() / pi.as_fraction()
    return base + Fraction(model.signature, 2)


# -- unknotting --------------------------------------------------------------------

@dataclass
class UnknottingReport:
    tau: Order
    bound: object            # Fraction, or int for lex value groups
    annihilation: list       # (degree, n, verdict string)
    move_label: str = "L,P"

    def render(self) -> str:
        lines = [f"tau (max torsion ord) = {self.tau}",
                 f"unknotting bound (reduced-model) = {self.bound}"]
        for degree, n, verdict in self.annihilation:
            lines.append(
                f"annihilation <{self.move_label}>^{n} at degree {degree}: {verdict}"
            )
        return "\n".join(lines)


def _move_ideal_gens(ring: Ring):
    if ring is Ring.FULL:
        return [P(Ring.FULL), V()], "V,P"
    return [P(Ring.BN), L()], "L,P"


def unknotting_bound(model: KnotModel, sigma: BaseChange) -> UnknottingReport:
    """tau / lambda, plus the move-ideal annihilation check per cyclic degree."""
    _check_sigma(model, sigma)
    _, lam = sigma.pi_lambda()
    summaries = homology_over_valuation(model.complex, sigma)
    tau = None
    for s in summaries.values():
        for o in s.torsion_ords:
            if tau is None or o > tau:
                tau = o
    move, move_label = _move_ideal_gens(model.ring)
    if tau is None:
        zero = lam - lam
        return UnknottingReport(zero, Fraction(0), [], move_label)
    if len(tau.vec) == 1:
        bound = tau.as_fraction() / lam.as_fraction()
        n = -(-bound.numerator // bound.denominator)  # ceil for the move test
    else:
        n = 0
        while n < 10000 and not lam.scale(n) >= tau:
            n += 1
        if not lam.scale(n) >= tau:
            raise IntegrityError("no integer multiple of lambda dominates tau")
        bound = n
    annihilation = []
    for d in sorted(summaries):
        if not summaries[d].torsion_ords:
            continue
        c = model.complex
        if c.rank(d) != 1 or c.rank(d - 1) == 0:
            annihilation.append((d, n, "skipped (cokernel not presented cyclically)"))
            continue
        column = [row[0] for row in c.map_into(d)]
        ok = all(
            laurent_member(_power_product(move, picks, model.ring), column, model.ring)
            for picks in _compositions(n, len(move))
        )
        annihilation.append((d, n, "pass" if ok else "FAIL"))
    return UnknottingReport(tau, bound, annihilation, move_label)


def _compositions(n, k):
    """All k-tuples of nonnegative integers summing to n."""
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def _power_product(gens, powers, ring):
    out = LaurentElement.one(ring)
    for g, e in zip(gens, powers):
        out = out * g ** e
    return out


# -- connected sums -----------------------------------------------------------------

def connected_sum(k1: KnotModel, k2: KnotModel) -> KnotModel:
    """Tensor the complexes and the distinguished cycles."""
    if k1.ring is not k2.ring:
        raise RingMismatch("connected sum across rings")
    if k1.cycle.direction != UNKNOT_TO_K or k2.cycle.direction != UNKNOT_TO_K:
        raise DirectionMismatch(
            "connected sum needs both models in the unknot-to-K direction"
        )
    c = tensor(k1.complex, k2.complex)
    d1, d2 = k1.cycle.degree, k2.cycle.degree
    degree = d1 + d2
    labels = tensor_generators(k1.complex, k2.complex, degree)
    zero = LaurentElement.zero(k1.ring)
    vec = []
    for (p, i, j) in labels:
        if p == d1:
            vec.append(k1.cycle.vector[i] * k2.cycle.vector[j])
        else:
            vec.append(zero)
    cycle = DistinguishedCycle(
        degree, tuple(vec),
        k1.cycle.genus + k2.cycle.genus,
        k1.cycle.dplus + k2.cycle.dplus,
        UNKNOT_TO_K,
    )
    sig = None
    if k1.signature is not None and k2.signature is not None:
        sig = k1.signature + k2.signature
    return KnotModel(f"{k1.name} # {k2.name}", c, cycle, sig)


def as_forward(model: KnotModel) -> KnotModel:
    """Convert a K-to-unknot model to an equivalent unknot-to-K model.

    The functional data determines a cycle with the same f_sigma at every
    base change: scale the kernel generator tau by P^{2g} V^{2dplus} / phi(tau).
    Only single-out-column presentations are convertible.
    """
    if model.cycle.direction == UNKNOT_TO_K:
        return model
    ring = model.ring
    d = model.cycle.degree
    c = model.complex
    out = c.map_into(d + 1)
    if c.rank(d) != 2 or c.rank(d + 1) != 1 or (
        c.rank(d - 1) and not lmat_is_zero(c.map_into(d))
    ):
        raise DirectionMismatch(
            "cannot convert this functional model to the unknot-to-K direction"
        )
    a, b = out[0][0], out[1][0]
    h = laurent_gcd(a, b)
    tau = (LaurentFraction(b, h).as_laurent(), LaurentFraction(a, h).as_laurent())
    phi_val = model.cycle.vector[0] * tau[0] + model.cycle.vector[1] * tau[1]
    if phi_val.is_zero():
        raise DirectionMismatch("functional vanishes on the kernel generator")
    g, dplus = model.cycle.genus, model.cycle.dplus
    v_elt = V() if ring is Ring.FULL else L()
    scale = LaurentFraction(P(ring) ** (2 * g) * v_elt ** (2 * dplus), phi_val)
    entries = []
    for t in tau:
        e = (scale * LaurentFraction(t)).reduced()
        if not e.is_integral():
            raise DirectionMismatch(
                "conversion scale is not integral for this model"
            )
        entries.append(e.as_laurent())
    cycle = DistinguishedCycle(d, tuple(entries), g, dplus, UNKNOT_TO_K)
    return KnotModel(model.name, c, cycle, model.signature)


# -- injectivity --------------------------------------------------------------------

def map_injectivity(matrix, ring: Ring) -> bool:
    """Full row rank over the fraction field (rows are source generators)."""
    rows = [[LaurentFraction(e) for e in row] for row in matrix]
    if not rows:
        return True
    ncols = len(rows[0])
    rank = 0
    col = 0
    r = 0
    while r < len(rows) and col < ncols:
        pivot = None
        for i in range(r, len(rows)):
            if not rows[i][col].is_zero():
                pivot = i
                break
        if pivot is None:
            col += 1
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            if not rows[i][col].is_zero():
                f = rows[i][col] / rows[r][col]
                rows[i] = [x + f * y for x, y in zip(rows[i], rows[r])]
        rank += 1
        r += 1
        col += 1
    return rank == len(rows)


# -- reports -----------------------------------------------------------------------

def invariant_report(model: KnotModel, sigma: BaseChange) -> str:
    """Deterministic plain-text report of the full pipeline for one model."""
    lines = [
        f"knot: {model.name}",
        f"ring: {model.ring.value}",
        f"direction: {model.cycle.direction}",
        f"genus g = {model.cycle.genus}, dplus = {model.cycle.dplus}",
        f"base change: {sigma.describe()}",
    ]
    pi, lam = sigma.pi_lambda()
    lines.append(f"(pi, lambda) = ({pi}, {lam})")
    summaries = homology_over_valuation(model.complex, sigma)
    lines.append("homology over the valuation ring:")
    for d in sorted(summaries):
        s = summaries[d]
        tors = ", ".join(str(o) for o in s.torsion_ords) if s.torsion_ords else "-"
        lines.append(f"  degree {d}: free rank {s.free_rank}, torsion ords: {tors}")
    z = znat_valuation(model, sigma)
    lines.append(f"znat (valuation): ord {z.order}")
    lines.append(f"f_sigma = {z.order}")
    if sigma.name == "B":
        lines.append(f"f_r = {z.order}")
    try:
        bn = znat_bn(model)
        lines.append(f"znat (BN level): {describe_bn_ideal(bn)}")
    except UnsupportedPresentation as exc:
        lines.append(f"znat (BN level): unavailable ({exc})")
    try:
        fp = f_plus(model)
        lines.append(f"f_plus = {fp}")
    except (RankNotOne, CycleInTorsion, IntegrityError) as exc:
        lines.append(f"f_plus: unavailable ({exc})")
    lines.append("bounds:")
    if len(pi.vec) == 1:
        sg = z.order.as_fraction() / pi.as_fraction()
        lines.append(f"  slice genus >= {sg}")
        lines.append(
            f"  surface constraint: g*{pi} + dplus*{lam} >= {z.order}"
        )
    else:
        lines.append("  slice genus: n/a under a lex value group")
    try:
        lines.append(f"  clasp number c_plus >= {clasp_bound(model)}")
    except (RankNotOne, CycleInTorsion, IntegrityError):
        lines.append("  clasp number: n/a for this model")
    if not sigma.nonorientable_valid():
        lines.append("  eta: n/a (base change is not nonorientable-valid)")
        lines.append("  b1 (Gordon-Litherland): n/a (base change is not nonorientable-valid)")
    elif len(pi.vec) != 1:
        lines.append("  eta: n/a under a lex value group")
        lines.append("  b1 (Gordon-Litherland): n/a under a lex value group")
    else:
        base = z.order.as_fraction() / pi.as_fraction()
        lines.append(f"  eta >= {base}")
        if model.signature is None:
            lines.append("  b1 (Gordon-Litherland): n/a (no declared signature)")
        else:
            lines.append(
                f"  b1 (Gordon-Litherland) >= {base + Fraction(model.signature, 2)}"
            )
    return "\n".join(lines) + "\n"
