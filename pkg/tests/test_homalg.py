"""Tests for chain complexes, cones, tensor products, and valuation homology."""

from fractions import Fraction

import pytest

from concordia.basechange import builtin, series_poly
from concordia.errors import (
    IntegrityError,
    NotAChainMap,
    NotACycle,
    NotInvertible,
    RingMismatch,
    UsageError,
)
from concordia.homalg import (
    K_TO_UNKNOT,
    UNKNOT_TO_K,
    ChainComplex,
    ChainMap,
    DistinguishedCycle,
    change_basis,
    change_basis_cycle,
    complex_from_json,
    complex_to_json,
    dualize,
    homology_over_valuation,
    ldet,
    lidentity,
    linverse,
    lmat_is_zero,
    lmat_mul,
    ltranspose,
    mapping_cone,
    rmat_mul,
    shift,
    shift_cycle,
    smith_diagonalize,
    tensor,
    tensor_generators,
    validate_cycle,
)
from concordia.laurent import L, LaurentElement, P, Ring
from concordia.valuation import MonomialWeight, Order

BN = Ring.BN
ZERO = LaurentElement.zero(BN)
ONE = LaurentElement.one(BN)


def trefoil_complex():
    return ChainComplex(BN, {0: 1, 1: 2}, {1: ((L(), P(BN)),)})


def left_trefoil_complex():
    return ChainComplex(BN, {0: 2, 1: 1}, {1: ((L(),), (P(BN),))})


# -- complex construction -------------------------------------------------------------

def test_ranks_must_be_contiguous():
    with pytest.raises(UsageError):
        ChainComplex(BN, {0: 1, 2: 1})
    with pytest.raises(UsageError):
        ChainComplex(BN, {})


def test_map_shape_is_checked():
    with pytest.raises(UsageError):
        ChainComplex(BN, {0: 1, 1: 2}, {1: ((L(),),)})


def test_entries_must_match_the_ring():
    with pytest.raises(RingMismatch):
        ChainComplex(BN, {0: 1, 1: 1}, {1: ((P(Ring.FULL),),)})


def test_differential_squares_to_zero():
    # d(a) = x, d(x) = x works only if x*x = 0; a nonzero entry must fail
    with pytest.raises(IntegrityError):
        ChainComplex(BN, {0: 1, 1: 1, 2: 1}, {1: ((ONE,),), 2: ((ONE,),)})
    # and a genuinely composable pair passes
    ChainComplex(BN, {0: 1, 1: 2, 2: 1},
                 {1: ((L(), P(BN)),), 2: ((P(BN),), (L(),))})


def test_map_into_defaults_to_zero():
    c = trefoil_complex()
    assert lmat_is_zero(c.map_into(2))
    assert c.map_into(2) == ((), ())  # two source rows, no target columns
    assert c.rank(7) == 0
    assert c.degrees() == [0, 1]
    assert c.total_rank() == 3


def test_complex_equality_ignores_stored_zero_blocks():
    a = ChainComplex(BN, {0: 1, 1: 1})
    b = ChainComplex(BN, {0: 1, 1: 1}, {1: ((ZERO,),)})
    assert a == b
    assert a != trefoil_complex()


# -- cycles ---------------------------------------------------------------------------

def test_validate_cycle_forward():
    c = trefoil_complex()
    good = DistinguishedCycle(1, (ZERO, ONE), 1, 0, UNKNOT_TO_K)
    validate_cycle(c, good)
    # a degree-0 vector is pushed into (L, P) != 0
    with pytest.raises(NotACycle):
        validate_cycle(c, DistinguishedCycle(0, (ONE,), 1, 0, UNKNOT_TO_K))
    with pytest.raises(NotACycle):
        validate_cycle(c, DistinguishedCycle(1, (ONE,), 1, 0, UNKNOT_TO_K))


def test_validate_cycle_backward():
    c = left_trefoil_complex()
    validate_cycle(c, DistinguishedCycle(0, (ZERO, ONE), 1, 0, K_TO_UNKNOT))
    # pairing against the incoming column (L, P) must vanish
    with pytest.raises(NotACycle):
        validate_cycle(c, DistinguishedCycle(1, (ONE,), 1, 0, K_TO_UNKNOT))


def test_cycle_direction_and_genus_validation():
    with pytest.raises(UsageError):
        DistinguishedCycle(0, (ONE,), 1, 0, "sideways")
    with pytest.raises(UsageError):
        DistinguishedCycle(0, (ONE,), -1, 0, UNKNOT_TO_K)


# -- matrix helpers -------------------------------------------------------------------

def test_determinant_and_inverse():
    m = ((ONE, P(BN)), (ZERO, ONE))
    assert ldet(m, BN) == ONE
    inv = linverse(m, BN)
    assert lmat_mul(m, inv, BN) == lidentity(2, BN)
    assert lmat_mul(inv, m, BN) == lidentity(2, BN)
    # determinant L is not a monomial unit
    with pytest.raises(NotInvertible):
        linverse(((L(), ZERO), (ZERO, ONE)), BN)


def test_monomial_determinants_are_invertible():
    t = LaurentElement.monomial(BN, 0, 2, -1, 0)
    m = ((t, ONE), (ZERO, t.inverse()))
    assert ldet(m, BN) == ONE
    assert lmat_mul(linverse(m, BN), m, BN) == lidentity(2, BN)


def test_transpose_involution():
    m = ((L(), P(BN)), (ONE, ZERO))
    assert ltranspose(ltranspose(m)) == m


# -- chain maps and cones -------------------------------------------------------------

def test_chain_map_blocks_must_commute():
    src = ChainComplex(BN, {0: 1, 1: 1}, {1: ((L(),),)})
    tgt = ChainComplex(BN, {0: 1, 1: 1}, {1: ((P(BN),),)})
    with pytest.raises(NotAChainMap):
        ChainMap(src, tgt, {0: ((ONE,),), 1: ((ONE,),)})
    # f0 * P = L * f1 holds for f = (L, P)
    ChainMap(src, tgt, {0: ((L(),),), 1: ((P(BN),),)})


def test_chain_map_shape_check():
    src = ChainComplex(BN, {0: 1})
    tgt = ChainComplex(BN, {0: 2})
    with pytest.raises(NotAChainMap):
        ChainMap(src, tgt, {0: ((ONE,),)})


def test_cone_of_identity_is_acyclic():
    c = trefoil_complex()
    ident = ChainMap(c, c, {k: lidentity(c.rank(k), BN) for k in c.degrees()})
    cone = mapping_cone(ident)
    sigma = builtin("B", r=Fraction(1, 2))
    hom = homology_over_valuation(cone, sigma)
    for d, summary in hom.items():
        assert summary.free_rank == 0, d
        assert summary.torsion_ords == (), d


def test_cone_ranks_and_differential():
    a = ChainComplex(BN, {0: 1})
    b = ChainComplex(BN, {0: 1})
    f = ChainMap(a, b, {0: ((P(BN),),)})
    cone = mapping_cone(f)
    # Cone_{-1} = A_0, Cone_0 = B_0, differential = f
    assert cone.ranks == {-1: 1, 0: 1}
    assert cone.map_into(0) == ((P(BN),),)


# -- tensor, dual, shift ---------------------------------------------------------------

def test_tensor_with_a_point_is_identity():
    c = trefoil_complex()
    point = ChainComplex(BN, {0: 1})
    assert tensor(c, point) == c
    assert tensor(point, c) == c


def test_tensor_ranks_count_products():
    c = trefoil_complex()
    t = tensor(c, c)
    assert t.ranks == {0: 1, 1: 4, 2: 4}
    assert [lab[0] for lab in tensor_generators(c, c, 1)] == [0, 0, 1, 1]


def test_tensor_differential_obeys_leibniz():
    c = trefoil_complex()
    t = tensor(c, c)
    # generator (0,0,0) in degree 0 maps to L,P on each side
    row = t.map_into(1)[0]
    labels = tensor_generators(c, c, 1)
    got = {lab: e for lab, e in zip(labels, row)}
    assert got[(1, 0, 0)] == L() and got[(1, 1, 0)] == P(BN)
    assert got[(0, 0, 0)] == L() and got[(0, 0, 1)] == P(BN)


def test_dualize_transposes_and_negates():
    c = trefoil_complex()
    d = dualize(c)
    assert d.ranks == {0: 1, -1: 2}
    assert d.map_into(0) == ltranspose(c.map_into(1))
    assert dualize(d) == c


def test_shift_moves_degrees_and_cycles():
    c = trefoil_complex()
    s = shift(c, 3)
    assert s.ranks == {3: 1, 4: 2}
    assert s.map_into(4) == c.map_into(1)
    cyc = DistinguishedCycle(1, (ZERO, ONE), 1, 0, UNKNOT_TO_K)
    assert shift_cycle(cyc, 3).degree == 4
    validate_cycle(s, shift_cycle(cyc, 3))


# -- basis change -----------------------------------------------------------------------

def test_change_basis_round_trip():
    c = trefoil_complex()
    a = ((ONE, ONE), (ZERO, ONE))
    moved, ainv = change_basis(c, 1, a)
    assert moved.map_into(1) == lmat_mul(c.map_into(1), ainv, BN)
    back, _ = change_basis(moved, 1, ainv)
    assert back == c
    with pytest.raises(NotInvertible):
        change_basis(c, 1, ((L(), ZERO), (ZERO, ONE)))
    with pytest.raises(NotInvertible):
        change_basis(c, 1, ((ONE,),))


def test_change_basis_cycle_both_directions():
    c = trefoil_complex()
    a = ((ONE, ZERO), (ONE, ONE))
    moved, ainv = change_basis(c, 1, a)
    cyc = DistinguishedCycle(1, (ZERO, ONE), 1, 0, UNKNOT_TO_K)
    moved_cyc = change_basis_cycle(cyc, 1, a, ainv, BN)
    validate_cycle(moved, moved_cyc)
    # a cofunctional pulls back with the transpose instead
    left = left_trefoil_complex()
    phi = DistinguishedCycle(0, (ZERO, ONE), 1, 0, K_TO_UNKNOT)
    moved_left, ainv0 = change_basis(left, 0, a)
    moved_phi = change_basis_cycle(phi, 0, a, ainv0, BN)
    validate_cycle(moved_left, moved_phi)
    # untouched degrees pass through
    assert change_basis_cycle(cyc, 0, ((ONE,),), ((ONE,),), BN) is cyc


# -- valuation-ring diagonalization ------------------------------------------------------

def _rf_matrix(rows):
    return [[series_poly(e) for e in row] for row in rows]


def test_smith_transform_identities():
    weight = MonomialWeight.rational({"x": Fraction(1, 4), "u": Fraction(1, 8)})
    one = series_poly("1")
    zero = series_poly("0")
    m = _rf_matrix([
        ["x^2", "x", "1 + x"],
        ["u*x", "u^4", "0"],
    ])
    f = smith_diagonalize(m, weight, one, zero)
    assert f.rank == 2
    lm = rmat_mul(f.left, m, zero)
    d = rmat_mul(lm, f.right, zero)
    for i, row in enumerate(d):
        for j, e in enumerate(row):
            if i == j and i < f.rank:
                assert e == f.diagonal[i]
            else:
                assert e.is_zero()
    ident = [[one if i == j else zero for j in range(2)] for i in range(2)]
    assert rmat_mul(f.left, f.left_inv, zero) == ident
    ident3 = [[one if i == j else zero for j in range(3)] for i in range(3)]
    assert rmat_mul(f.right, f.right_inv, zero) == ident3


def test_smith_pivots_ascend_in_ord():
    weight = MonomialWeight.rational({"x": Fraction(1, 4)})
    one, zero = series_poly("1"), series_poly("0")
    m = _rf_matrix([["x^4", "x"], ["x^2", "x^3"]])
    f = smith_diagonalize(m, weight, one, zero)
    ords = [weight.ord_rf(e) for e in f.diagonal]
    assert ords == sorted(ords)
    assert ords[0] == Order.rational(Fraction(1, 4))


def test_smith_empty_matrix_takes_width_from_ncols():
    one, zero = series_poly("1"), series_poly("0")
    weight = MonomialWeight.rational({"x": Fraction(1, 4)})
    f = smith_diagonalize([], weight, one, zero, ncols=3)
    assert f.rank == 0
    assert len(f.right) == 3 and len(f.right_inv) == 3


# -- homology ----------------------------------------------------------------------------

def test_trefoil_homology_over_b_half():
    sigma = builtin("B", r=Fraction(1, 2))
    hom = homology_over_valuation(trefoil_complex(), sigma)
    assert hom[0].free_rank == 0 and hom[0].torsion_ords == ()
    assert hom[1].free_rank == 1
    assert hom[1].torsion_ords == (Order.rational(Fraction(1, 2)),)


def test_homology_with_no_incoming_differential():
    # rank-0 incoming boundary: the presentation matrix has no rows, and the
    # free generators must still be liftable (regression for the empty-width case)
    sigma = builtin("B", r=Fraction(1, 2))
    hom = homology_over_valuation(left_trefoil_complex(), sigma)
    assert hom[0].free_rank == 1
    lift = hom[0].free_generator_lift(0)
    assert len(lift) == 2 and any(not e.is_zero() for e in lift)


def test_class_reduction_identifies_boundaries():
    sigma = builtin("B", r=Fraction(1, 2))
    c = trefoil_complex()
    hom = homology_over_valuation(c, sigma)
    # the image of the generator is a boundary, hence a zero class
    boundary = [sigma.apply(e) for e in c.map_into(1)[0]]
    assert hom[1].class_is_zero(boundary)
    # the distinguished cycle is not
    cyc = [sigma.apply(ZERO), sigma.apply(ONE)]
    assert not hom[1].class_is_zero(cyc)
    tors, free = hom[1].class_coords(cyc)
    assert len(tors) == 1 and len(free) == 1


def test_kernel_coords_rejects_non_cycles():
    sigma = builtin("B", r=Fraction(1, 2))
    hom = homology_over_valuation(trefoil_complex(), sigma)
    with pytest.raises(NotACycle):
        hom[0].kernel_coords([sigma.apply(ONE)])


def test_free_generator_lift_is_a_cycle_with_nonzero_class():
    sigma = builtin("B", r=Fraction(1, 2))
    hom = homology_over_valuation(trefoil_complex(), sigma)
    lift = hom[1].free_generator_lift(0)
    assert not hom[1].class_is_zero(lift)
    assert hom[1].free_coords(lift) != [series_poly("0")]


# -- serialization ------------------------------------------------------------------------

def test_json_round_trip():
    c = trefoil_complex()
    cyc = DistinguishedCycle(1, (ZERO, ONE), 1, 0, UNKNOT_TO_K)
    data = complex_to_json(c, cycle=cyc, name="trefoil", signature=-2)
    name, c2, cyc2, sig = complex_from_json(data)
    assert (name, sig) == ("trefoil", -2)
    assert c2 == c
    assert cyc2 == cyc


def test_json_round_trip_without_cycle():
    c = left_trefoil_complex()
    name, c2, cyc2, sig = complex_from_json(complex_to_json(c))
    assert name is None and sig is None and cyc2 is None
    assert c2 == c


def test_malformed_json_raises_usage_error():
    with pytest.raises(UsageError):
        complex_from_json({"ring": "BN"})
    with pytest.raises(UsageError):
        complex_from_json({"ring": "nope", "ranks": {"0": 1}})
