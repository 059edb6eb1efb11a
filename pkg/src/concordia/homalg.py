"""Finite free chain complexes over the Laurent rings and their homology.

Conventions.  A complex stores ranks per degree (a contiguous span) and one
matrix per adjacent pair of degrees.  The matrix stored under key k is the
differential between degrees k-1 and k, written with rows indexed by the
source (degree k-1) generators and columns by the target (degree k)
generators; a vector of coordinates is a row vector and the differential
acts as v |-> v * M.  Degrees ascend in the direction of the differential,
matching the usual presentation 'S -> S + S, 1 |-> (L, P)' of the stock
models, so homology at degree d is ker(M_{d+1}) / im(M_d).

The distinguished vector of a model is either a cycle (direction
unknot-to-K: it must be killed by the outgoing differential) or a
cofunctional (direction K-to-unknot: it must kill the incoming boundaries,
the condition for inducing a map on homology).

Homology after a base change is computed over the valuation ring by exact
diagonalization: the pivot is the entry of minimal ord (ties broken at the
lowest (row, col) in row-major order), eliminations divide exactly in the
fraction field, and the recorded transforms stay invertible over the
valuation ring because every multiplier has nonnegative ord.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import (
    IntegrityError,
    NotAChainMap,
    NotACycle,
    NotInvertible,
    RingMismatch,
    UsageError,
)
from .laurent import (
    LaurentElement,
    Ring,
    format_laurent_pretty,
    parse_laurent,
)

UNKNOT_TO_K = "unknot-to-K"
K_TO_UNKNOT = "K-to-unknot"


# -- Laurent matrix helpers ------------------------------------------------------

def lzeros(rows, cols, ring):
    z = LaurentElement.zero(ring)
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def lidentity(n, ring):
    one = LaurentElement.one(ring)
    z = LaurentElement.zero(ring)
    return tuple(tuple(one if i == j else z for j in range(n)) for i in range(n))


def lmat_mul(a, b, ring):
    if not a or not b:
        return lzeros(len(a), len(b[0]) if b else 0, ring)
    n_mid = len(b)
    out = []
    for row in a:
        if len(row) != n_mid:
            raise RingMismatch("matrix shapes do not compose")
        acc = [LaurentElement.zero(ring) for _ in range(len(b[0]))]
        for k, entry in enumerate(row):
            if entry.is_zero():
                continue
            for j, other in enumerate(b[k]):
                if not other.is_zero():
                    acc[j] = acc[j] + entry * other
        out.append(tuple(acc))
    return tuple(out)


def lmat_is_zero(m):
    return all(e.is_zero() for row in m for e in row)


def ltranspose(m):
    if not m:
        return ()
    return tuple(tuple(m[i][j] for i in range(len(m))) for j in range(len(m[0])))


def ldet(m, ring):
    """Determinant by cofactor expansion (no signs in characteristic 2)."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise RingMismatch("determinant of a non-square matrix")
    if n == 0:
        return LaurentElement.one(ring)
    if n == 1:
        return m[0][0]
    total = LaurentElement.zero(ring)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = tuple(row[:j] + row[j + 1:] for row in m[1:])
        total = total + m[0][j] * ldet(minor, ring)
    return total


def linverse(m, ring):
    """Inverse of a matrix whose determinant is a unit (a single monomial)."""
    d = ldet(m, ring)
    if not d.is_unit():
        raise NotInvertible(f"determinant {d} is not a unit")
    n = len(m)
    dinv = d.inverse()
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(
                tuple(m[r][c] for c in range(n) if c != i)
                for r in range(n) if r != j
            )
            row.append(ldet(minor, ring) * dinv)
        out.append(tuple(row))
    return tuple(out)


# -- complexes ---------------------------------------------------------------------

@dataclass
class ChainComplex:
    """Free complex over R or S_BN; maps[k] runs from degree k-1 to degree k."""

    ring: Ring
    ranks: dict
    maps: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.ranks:
            raise UsageError("a complex needs at least one degree")
        degs = sorted(self.ranks)
        if degs != list(range(degs[0], degs[-1] + 1)):
            raise UsageError(f"degrees {degs} are not contiguous")
        for d, r in self.ranks.items():
            if r < 0:
                raise UsageError(f"negative rank at degree {d}")
        self.maps = {k: tuple(tuple(row) for row in m) for k, m in self.maps.items()}
        for k, m in self.maps.items():
            rows, cols = self.rank(k - 1), self.rank(k)
            if len(m) != rows or any(len(r) != cols for r in m):
                raise UsageError(f"map into degree {k} has shape "
                                 f"{(len(m), len(m[0]) if m else 0)}, wanted {(rows, cols)}")
            for row in m:
                for e in row:
                    if e.ring is not self.ring:
                        raise RingMismatch("matrix entry over the wrong ring")
        for k in list(self.maps):
            nxt = self.maps.get(k + 1)
            if nxt is not None and not lmat_is_zero(lmat_mul(self.maps[k], nxt, self.ring)):
                raise IntegrityError(f"differential squared is nonzero at degree {k}")

    def rank(self, d):
        return self.ranks.get(d, 0)

    def degrees(self):
        return sorted(self.ranks)

    def map_into(self, k):
        """Matrix of the differential from degree k-1 to degree k (zero if absent)."""
        m = self.maps.get(k)
        if m is not None:
            return m
        return lzeros(self.rank(k - 1), self.rank(k), self.ring)

    def total_rank(self):
        return sum(self.ranks.values())

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        if self.ring is not other.ring or self.ranks != other.ranks:
            return False
        for k in set(self.maps) | set(other.maps):
            if self.map_into(k) != other.map_into(k):
                return False
        return True


@dataclass(frozen=True)
class DistinguishedCycle:
    """Cycle (unknot-to-K) or cofunctional (K-to-unknot) plus cobordism data."""

    degree: int
    vector: tuple
    genus: int
    dplus: int
    direction: str

    def __post_init__(self):
        if self.direction not in (UNKNOT_TO_K, K_TO_UNKNOT):
            raise UsageError(f"unknown direction {self.direction!r}")
        if self.genus < 0 or self.dplus < 0:
            raise UsageError("genus and dplus must be nonnegative")


def validate_cycle(complex: ChainComplex, cycle: DistinguishedCycle):
    """Check the ring-level cycle/cofunctional condition."""
    n = complex.rank(cycle.degree)
    if len(cycle.vector) != n:
        raise NotACycle(f"vector length {len(cycle.vector)} != rank {n} in degree {cycle.degree}")
    ring = complex.ring
    if cycle.direction == UNKNOT_TO_K:
        out = complex.map_into(cycle.degree + 1)
        image = lmat_mul((tuple(cycle.vector),), out, ring)
        if not lmat_is_zero(image):
            raise NotACycle("distinguished vector is not killed by the differential")
    else:
        incoming = complex.map_into(cycle.degree)
        pairing = lmat_mul(incoming, ltranspose((tuple(cycle.vector),)), ring)
        if not lmat_is_zero(pairing):
            raise NotACycle("cofunctional does not vanish on boundaries")


# -- constructions -------------------------------------------------------------------

@dataclass
class ChainMap:
    """Degree-preserving map of complexes; blocks[k]: source C_k -> target D_k."""

    source: ChainComplex
    target: ChainComplex
    blocks: dict

    def __post_init__(self):
        if self.source.ring is not self.target.ring:
            raise RingMismatch("chain map between different rings")
        self.blocks = {k: tuple(tuple(row) for row in b) for k, b in self.blocks.items()}
        for k, b in self.blocks.items():
            if len(b) != self.source.rank(k) or any(len(r) != self.target.rank(k) for r in b):
                raise NotAChainMap(f"block at degree {k} has the wrong shape")
        ring = self.source.ring
        degs = set(self.source.ranks) | set(self.target.ranks)
        for k in degs:
            left = lmat_mul(self.block(k), self.target.map_into(k + 1), ring)
            right = lmat_mul(self.source.map_into(k + 1), self.block(k + 1), ring)
            if left != right:
                raise NotAChainMap(f"blocks do not commute with differentials at degree {k}")

    def block(self, k):
        b = self.blocks.get(k)
        if b is not None:
            return b
        return lzeros(self.source.rank(k), self.target.rank(k), self.source.ring)


def mapping_cone(f: ChainMap) -> ChainComplex:
    """Cone of f: A -> B with Cone_k = A_{k+1} (+) B_k and d(a, b) = (da, f(a) + db)."""
    a, b = f.source, f.target
    ring = a.ring
    degs = sorted(
        {d - 1 for d in a.ranks if a.rank(d) > 0} | {d for d in b.ranks if b.rank(d) > 0}
    )
    if not degs:
        raise UsageError("cone of a map between empty complexes")
    span = range(degs[0], degs[-1] + 1)
    ranks = {k: a.rank(k + 1) + b.rank(k) for k in span}
    maps = {}
    for k in span:
        if k - 1 not in ranks:
            continue
        rows = []
        ua = a.map_into(k + 1)        # A_k -> A_{k+1}
        fb = f.block(k)               # A_k -> B_k
        for i in range(a.rank(k)):
            rows.append(tuple(ua[i]) + tuple(fb[i]))
        ub = b.map_into(k)            # B_{k-1} -> B_k
        za = lzeros(b.rank(k - 1), a.rank(k + 1), ring)
        for i in range(b.rank(k - 1)):
            rows.append(tuple(za[i]) + tuple(ub[i]))
        maps[k] = tuple(rows)
    return ChainComplex(ring, ranks, maps)


def tensor_generators(c: ChainComplex, d: ChainComplex, n: int):
    """Ordered generator labels (p, i, j) of (C (x) D)_n."""
    out = []
    for p in c.degrees():
        q = n - p
        if c.rank(p) and d.rank(q):
            for i in range(c.rank(p)):
                for j in range(d.rank(q)):
                    out.append((p, i, j))
    return out


def tensor(c: ChainComplex, d: ChainComplex) -> ChainComplex:
    """Tensor product complex; no signs in characteristic 2."""
    if c.ring is not d.ring:
        raise RingMismatch("tensor of complexes over different rings")
    ring = c.ring
    lo = min(c.degrees()) + min(d.degrees())
    hi = max(c.degrees()) + max(d.degrees())
    ranks = {}
    gens = {}
    for n in range(lo, hi + 1):
        g = tensor_generators(c, d, n)
        gens[n] = g
        ranks[n] = len(g)
    maps = {}
    zero = LaurentElement.zero(ring)
    for n in range(lo + 1, hi + 1):
        src, tgt = gens[n - 1], gens[n]
        if not src or not tgt:
            continue
        index = {lab: col for col, lab in enumerate(tgt)}
        rows = []
        for (p, i, j) in src:
            q = n - 1 - p
            row = [zero] * len(tgt)
            uc = c.maps.get(p + 1)
            if uc is not None:
                for i2 in range(c.rank(p + 1)):
                    col = index.get((p + 1, i2, j))
                    if col is not None and not uc[i][i2].is_zero():
                        row[col] = row[col] + uc[i][i2]
            ud = d.maps.get(q + 1)
            if ud is not None:
                for j2 in range(d.rank(q + 1)):
                    col = index.get((p, i, j2))
                    if col is not None and not ud[j][j2].is_zero():
                        row[col] = row[col] + ud[j][j2]
            rows.append(tuple(row))
        maps[n] = tuple(rows)
    return ChainComplex(ring, ranks, maps)


def dualize(c: ChainComplex) -> ChainComplex:
    """Transpose the differentials and negate the grading."""
    ranks = {-d: r for d, r in c.ranks.items()}
    maps = {}
    for k, m in c.maps.items():
        # m: degree k-1 -> k dualizes to degree -k -> -(k-1), stored at -(k-1).
        maps[-(k - 1)] = ltranspose(m)
    return ChainComplex(c.ring, ranks, maps)


def shift(c: ChainComplex, s: int) -> ChainComplex:
    return ChainComplex(c.ring, {d + s: r for d, r in c.ranks.items()},
                        {k + s: m for k, m in c.maps.items()})


def shift_cycle(cycle: DistinguishedCycle, s: int) -> DistinguishedCycle:
    return DistinguishedCycle(cycle.degree + s, cycle.vector, cycle.genus,
                              cycle.dplus, cycle.direction)


def change_basis(c: ChainComplex, degree: int, a) -> ChainComplex:
    """Replace the degree's basis by the rows of a (new basis in old coordinates)."""
    n = c.rank(degree)
    a = tuple(tuple(row) for row in a)
    if len(a) != n or any(len(r) != n for r in a):
        raise NotInvertible(f"basis-change matrix must be {n}x{n}")
    ainv = linverse(a, c.ring)
    maps = dict(c.maps)
    if c.rank(degree - 1):
        maps[degree] = lmat_mul(c.map_into(degree), ainv, c.ring)
    if c.rank(degree + 1):
        maps[degree + 1] = lmat_mul(a, c.map_into(degree + 1), c.ring)
    return ChainComplex(c.ring, dict(c.ranks), maps), ainv


def change_basis_cycle(cycle: DistinguishedCycle, degree: int, a, ainv, ring) -> DistinguishedCycle:
    """Rewrite the distinguished vector in the new basis."""
    if cycle.degree != degree:
        return cycle
    row = (tuple(cycle.vector),)
    if cycle.direction == UNKNOT_TO_K:
        new = lmat_mul(row, ainv, ring)[0]
    else:
        # functional phi pulls back along the basis change: phi' = phi * a^T
        new = lmat_mul(row, ltranspose(a), ring)[0]
    return DistinguishedCycle(cycle.degree, tuple(new), cycle.genus, cycle.dplus,
                              cycle.direction)


# -- homology over a valuation ring ----------------------------------------------------

def rzeros(rows, cols, zero):
    return [[zero for _ in range(cols)] for _ in range(rows)]


def ridentity(n, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def rmat_mul(a, b, zero):
    if not a or not b:
        return [[zero for _ in range(len(b[0]) if b else 0)] for _ in range(len(a))]
    out = []
    for row in a:
        acc = [zero for _ in range(len(b[0]))]
        for k, entry in enumerate(row):
            if entry.is_zero():
                continue
            for j, other in enumerate(b[k]):
                if not other.is_zero():
                    acc[j] = acc[j] + entry * other
        out.append(acc)
    return out


@dataclass
class SmithForm:
    """L * M * R = D diagonal; L, R invertible over the valuation ring."""

    diagonal: list        # the rank many nonzero diagonal entries
    rank: int
    left: list            # L
    left_inv: list        # L^-1
    right: list           # R
    right_inv: list       # R^-1


def smith_diagonalize(matrix, weight, one, zero, ncols=None) -> SmithForm:
    """Exact valuation-ring diagonalization with min-ord pivoting.

    matrix entries are RationalFunctions; the pivot at each stage is the
    entry of minimal ord in the remaining block (ties: lowest (row, col) in
    row-major order), so every elimination multiplier has ord >= 0 and the
    accumulated transforms are invertible over the valuation ring.  A
    matrix with no rows carries no width of its own; ncols supplies it.
    """
    a = [list(row) for row in matrix]
    m = len(a)
    n = len(a[0]) if a else (ncols or 0)
    left = ridentity(m, one, zero)
    left_inv = ridentity(m, one, zero)
    right = ridentity(n, one, zero)
    right_inv = ridentity(n, one, zero)

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]
        for r in range(m):
            left_inv[r][i], left_inv[r][j] = left_inv[r][j], left_inv[r][i]

    def col_swap(i, j):
        for r in range(m):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(n):
            right[r][i], right[r][j] = right[r][j], right[r][i]
        right_inv[i], right_inv[j] = right_inv[j], right_inv[i]

    def row_add(dst, src, f):
        # row_dst += f * row_src; inverse transform is the same op (char 2).
        for c in range(n):
            if not a[src][c].is_zero():
                a[dst][c] = a[dst][c] + f * a[src][c]
        for c in range(m):
            if not left[src][c].is_zero():
                left[dst][c] = left[dst][c] + f * left[src][c]
        for r in range(m):
            if not left_inv[r][dst].is_zero():
                left_inv[r][src] = left_inv[r][src] + f * left_inv[r][dst]

    def col_add(dst, src, f):
        for r in range(m):
            if not a[r][src].is_zero():
                a[r][dst] = a[r][dst] + f * a[r][src]
        for r in range(n):
            if not right[r][src].is_zero():
                right[r][dst] = right[r][dst] + f * right[r][src]
        for c in range(n):
            if not right_inv[dst][c].is_zero():
                right_inv[src][c] = right_inv[src][c] + f * right_inv[dst][c]

    rank = 0
    diagonal = []
    for s in range(min(m, n)):
        best = None
        best_ord = None
        for i in range(s, m):
            for j in range(s, n):
                if a[i][j].is_zero():
                    continue
                o = weight.ord_rf(a[i][j])
                if best_ord is None or o < best_ord:
                    best, best_ord = (i, j), o
        if best is None:
            break
        i, j = best
        if i != s:
            row_swap(s, i)
        if j != s:
            col_swap(s, j)
        pivot = a[s][s]
        for r in range(s + 1, m):
            if not a[r][s].is_zero():
                row_add(r, s, a[r][s] / pivot)
        for c in range(s + 1, n):
            if not a[s][c].is_zero():
                col_add(c, s, a[s][c] / pivot)
        diagonal.append(pivot)
        rank += 1
    return SmithForm(diagonal, rank, left, left_inv, right, right_inv)


@dataclass
class HomologySummary:
    """Homology of one degree after a base change, with class-reduction data."""

    degree: int
    ambient_rank: int
    free_rank: int
    torsion_ords: tuple      # descending Orders
    _weight: object
    _rank_out: int
    _left_inv_out: list      # transform whose trailing rows span ker(outgoing)
    _kernel_basis: list      # those rows, as ambient coordinate vectors
    _rank_in: int
    _divisors: list          # nonzero diagonal of the incoming presentation
    _rprime: list
    _rprime_inv: list
    _zero_elt: object

    def kernel_coords(self, vec):
        """Coordinates of an ambient cycle vector in the kernel basis."""
        full = rmat_mul([list(vec)], self._left_inv_out, self._zero_elt)[0]
        for c in full[: self._rank_out]:
            if not c.is_zero():
                raise NotACycle("vector is not a cycle after the base change")
        return full[self._rank_out:]

    def class_coords(self, vec):
        """(torsion coordinates, free coordinates) of the class of vec."""
        coords = self.kernel_coords(vec)
        y = rmat_mul([coords], self._rprime, self._zero_elt)[0]
        return y[: self._rank_in], y[self._rank_in:]

    def class_is_zero(self, vec):
        tors, free = self.class_coords(vec)
        for y, d in zip(tors, self._divisors):
            if y.is_zero():
                continue
            if not self._weight.ord_rf(y) >= self._weight.ord_rf(d):
                return False
        return all(y.is_zero() for y in free)

    def free_coords(self, vec):
        return self.class_coords(vec)[1]

    def free_generator_lift(self, index=0):
        """Ambient coordinates of a lift of the index-th free generator."""
        coords = self._rprime_inv[self._rank_in + index]
        return rmat_mul([list(coords)], self._kernel_basis, self._zero_elt)[0]


def homology_over_valuation(complex: ChainComplex, sigma) -> dict:
    """Per-degree free rank, descending torsion ords, and reduction transforms."""
    from .field2 import RationalFunction
    from .basechange import SERIES_VARS

    weight = sigma.weight
    one = RationalFunction.one(SERIES_VARS)
    zero = RationalFunction.zero(SERIES_VARS)
    applied = {}
    for k in list(complex.maps):
        applied[k] = [[sigma.apply(e) for e in row] for row in complex.map_into(k)]

    def mat(k, rows, cols):
        m = applied.get(k)
        if m is None:
            return rzeros(rows, cols, zero)
        return m

    out = {}
    for d in complex.degrees():
        n = complex.rank(d)
        out_mat = mat(d + 1, n, complex.rank(d + 1))
        in_mat = mat(d, complex.rank(d - 1), n)
        smith_out = smith_diagonalize(out_mat, weight, one, zero)
        rank_out = smith_out.rank
        kernel_basis = [smith_out.left[i] for i in range(rank_out, n)]
        # incoming generators, rewritten in the kernel basis: the chain
        # condition guarantees the leading coordinates vanish.
        coords_rows = []
        for row in in_mat:
            full = rmat_mul([row], smith_out.left_inv, zero)[0]
            for c in full[:rank_out]:
                if not c.is_zero():
                    raise IntegrityError("boundary escapes the kernel; d^2 != 0 after sigma")
            coords_rows.append(full[rank_out:])
        k = n - rank_out
        smith_in = smith_diagonalize(coords_rows, weight, one, zero, ncols=k)
        # Audit: the presentation rank must agree with the raw matrix rank.
        if smith_in.rank != smith_diagonalize(in_mat, weight, one, zero).rank:
            raise IntegrityError("rank bookkeeping mismatch between presentations")
        torsion = sorted(
            (weight.ord_rf(x) for x in smith_in.diagonal
             if not weight.ord_rf(x).is_zero()),
            reverse=True,
        )
        out[d] = HomologySummary(
            degree=d,
            ambient_rank=n,
            free_rank=k - smith_in.rank,
            torsion_ords=tuple(torsion),
            _weight=weight,
            _rank_out=rank_out,
            _left_inv_out=smith_out.left_inv,
            _kernel_basis=kernel_basis,
            _rank_in=smith_in.rank,
            _divisors=smith_in.diagonal,
            _rprime=smith_in.right,
            _rprime_inv=smith_in.right_inv,
            _zero_elt=zero,
        )
        if out[d].free_rank + len(out[d].torsion_ords) > n:
            raise IntegrityError("free rank plus torsion exceeds the ambient rank")
    return out


# -- serialization -----------------------------------------------------------------------

def complex_to_json(complex: ChainComplex, cycle=None, name=None, signature=None) -> dict:
    data = {}
    if name is not None:
        data["name"] = name
    data["ring"] = complex.ring.value
    data["degrees"] = complex.degrees()
    data["ranks"] = {str(d): r for d, r in sorted(complex.ranks.items())}
    data["boundaries"] = {
        str(k): [[format_laurent_pretty(e) for e in row] for row in m]
        for k, m in sorted(complex.maps.items())
        if not lmat_is_zero(m)
    }
    if cycle is not None:
        data["cycle"] = {
            "degree": cycle.degree,
            "vector": [format_laurent_pretty(e) for e in cycle.vector],
            "genus": cycle.genus,
            "dplus": cycle.dplus,
            "direction": cycle.direction,
        }
    if signature is not None:
        data["signature"] = signature
    return data


def complex_from_json(data: dict):
    """Returns (name, ChainComplex, DistinguishedCycle-or-None, signature)."""
    try:
        ring = Ring(data["ring"])
        ranks = {int(d): int(r) for d, r in data["ranks"].items()}
        maps = {
            int(k): tuple(
                tuple(parse_laurent(e, ring) for e in row) for row in m
            )
            for k, m in data.get("boundaries", {}).items()
        }
    except (KeyError, ValueError) as exc:
        raise UsageError(f"malformed complex JSON: {exc}") from exc
    complex = ChainComplex(ring, ranks, maps)
    cycle = None
    if "cycle" in data:
        c = data["cycle"]
        cycle = DistinguishedCycle(
            degree=int(c["degree"]),
            vector=tuple(parse_laurent(e, ring) for e in c["vector"]),
            genus=int(c["genus"]),
            dplus=int(c["dplus"]),
            direction=c["direction"],
        )
        validate_cycle(complex, cycle)
    return data.get("name"), complex, cycle, data.get("signature")


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=False)
