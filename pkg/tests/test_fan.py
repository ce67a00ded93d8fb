import random
from fractions import Fraction

import pytest

from dfan.basis import reduce_basis
from dfan.errors import WeightError
from dfan.fan import standard_fan
from dfan.grammar import parse_vec
from dfan.weights import LinearForm
from dfan.weyl import RingDescriptor

R2 = RingDescriptor(2, 2, 1)


@pytest.fixture(scope="module")
def euler_fan():
    return standard_fan([parse_vec("x1 d1 + x2 d2", R2)])


@pytest.fixture(scope="module")
def three_cone_fan():
    return standard_fan([parse_vec("d1 + x1 d2^2", R2)])


def test_euler_single_cone(euler_fan):
    assert len(euler_fan) == 1
    cone = euler_fan.cones[0]
    assert cone.equalities == () and cone.stricts == ()


def test_monomial_generator_single_cone():
    fan = standard_fan([parse_vec("d1", R2)])
    assert len(fan) == 1


def test_three_cones(three_cone_fan):
    fan = three_cone_fan
    assert len(fan) == 3
    kinds = sorted(
        (len(c.equalities), tuple(c.stricts)) for c in fan.cones
    )
    # one wall {e1 = e2} and the two open sides
    assert kinds == [(0, ((-2, 2),)), (0, ((2, -2),)), (1, ())]


def test_cone_of_weight(euler_fan, three_cone_fan):
    assert euler_fan.cone_of_weight(LinearForm((1, 1))) is euler_fan.cones[0]
    side = three_cone_fan.cone_of_weight(LinearForm((2, 1)))
    assert side.stricts == ((2, -2),)
    wall = three_cone_fan.cone_of_weight(LinearForm((1, 1)))
    assert wall.equalities == ((1, -1),)
    other = three_cone_fan.cone_of_weight(LinearForm((1, 3)))
    assert other.stricts == ((-2, 2),)


def test_negative_weight_rejected(euler_fan):
    class Fake:
        coeffs = (Fraction(-1), Fraction(0))

    with pytest.raises(WeightError):
        euler_fan.cone_of_weight(Fake())


def random_rational_weight(rng):
    return LinearForm(
        (
            Fraction(rng.randint(0, 16), rng.choice([1, 2, 3, 4])),
            Fraction(rng.randint(0, 16), rng.choice([1, 2, 3, 4])),
        )
    )


def test_covering_and_disjointness(three_cone_fan):
    # 200 random rational weights each land in exactly one cone
    rng = random.Random(99)
    for _ in range(200):
        L = random_rational_weight(rng)
        cone = three_cone_fan.cone_of_weight(L)
        hits = [
            c
            for c in three_cone_fan.cones
            if c.contains(L)
        ]
        assert cone in hits
        assert len(hits) == 1


def test_within_cone_constancy(three_cone_fan):
    gens = three_cone_fan.generators
    rng = random.Random(7)
    for cone in three_cone_fan.cones:
        seen = 0
        while seen < 5:
            L = random_rational_weight(rng)
            if not cone.contains(L):
                continue
            seen += 1
            b = reduce_basis(list(gens), L)
            assert b.elements == cone.basis.elements
            assert b.exponents == cone.basis.exponents


def test_closure_relations(three_cone_fan):
    relations = three_cone_fan.closure_relations()
    by_kind = {}
    for idx, cone in enumerate(three_cone_fan.cones):
        by_kind[len(cone.equalities)] = idx
    wall, sides = by_kind[1], [i for i in range(3) if i != by_kind[1]]
    # the wall sits in the closure of both open sides; the sides only in
    # their own
    assert set(relations[wall]) == set(sides)
    for side in sides:
        assert relations[side] == ()


def test_adjacent_cones_differ(three_cone_fan):
    # across the wall the graded data changes: the stored strata differ
    datas = [(c.basis.elements, c.strata) for c in three_cone_fan.cones]
    assert len(set(datas)) == len(datas)


def test_grid_oracle_small():
    # brute-force weight classification on a coarse grid must agree with
    # the fan's point location (full grid runs in the acceptance suite)
    gens = [parse_vec("d1 + x1 d2^2", R2)]
    fan = standard_fan(gens)
    vals = [Fraction(p, q) for q in (1, 2) for p in range(0, 5 * q, 2)]
    for p in sorted(set(vals)):
        for q in sorted(set(vals)):
            L = LinearForm((p, q))
            b = reduce_basis(gens, L)
            cone = fan.cone_of_weight(L)
            assert b.elements == cone.basis.elements


def test_simultaneity_of_cone_basis(three_cone_fan):
    # a basis stored on a cone stays a standard basis for every interior
    # weight: same privileged exponents, and the graded-symbol supports of
    # gr_generators agree (the weights themselves vary linearly in L)
    gens = list(three_cone_fan.generators)
    rng = random.Random(17)
    for cone in three_cone_fan.cones:
        samples = [LinearForm(cone.sample)]
        while len(samples) < 4:
            L = random_rational_weight(rng)
            if cone.contains(L):
                samples.append(L)
        reference = None
        for L in samples:
            b = reduce_basis(gens, L)
            assert b.exponents == cone.basis.exponents
            ctx_basis = type(cone.basis)(
                cone.basis.ring,
                cone.basis.elements,
                cone.basis.order,
                (L,),
            )
            sigmas = tuple(
                sigma for sigma, _ in ctx_basis.gr_generators(L)
            )
            if reference is None:
                reference = sigmas
            else:
                assert sigmas == reference


def test_dimension_guard_is_configurable():
    from dfan.errors import ResourceBoundExceeded

    ring = RingDescriptor(4, 4, 1)
    gens = [parse_vec("x1 d1 + x2 d2 + x3 d3 + x4 d4", ring)]
    with pytest.raises(ResourceBoundExceeded, match="capped at k = 3"):
        standard_fan(gens)
    fan = standard_fan(gens, max_k=4)
    assert len(fan) == 1


def test_three_variable_fan():
    ring = RingDescriptor(3, 3, 1)
    fan = standard_fan([parse_vec("d1 + x1 d2 d3", ring)])
    # one wall 2e1 = e2 + e3 and its two open sides
    assert len(fan) == 3
    walls = [c for c in fan.cones if c.equalities]
    assert walls[0].equalities == ((2, -1, -1),)
    euler3 = standard_fan([parse_vec("x1 d1 + x2 d2 + x3 d3", ring)])
    assert len(euler3) == 1


def test_shifted_rank_two_fan():
    ring = RingDescriptor(2, 2, 2, [[0, 0], [1, 0]])
    gens = [
        parse_vec("d1 e1 + x1 d2 e2", ring),
        parse_vec("d2 e2", ring),
    ]
    fan = standard_fan(gens)
    assert len(fan) >= 1
    for cone in fan.cones:
        L = LinearForm(cone.sample)
        b = reduce_basis(gens, L)
        assert b.elements == cone.basis.elements
