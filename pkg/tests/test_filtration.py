from itertools import product

import pytest

from dfan.errors import ConeError
from dfan.filtration import (
    in_V_gamma,
    in_V_s,
    multi_weight,
    newton_diagram,
    normalize_rays,
)
from dfan.grammar import parse_dt_vec, parse_op, parse_vec
from dfan.weyl import RingDescriptor, WeylVec
from conftest import random_nonzero_op, random_vec

R1 = RingDescriptor(1, 1, 1)
R2 = RingDescriptor(2, 2, 1)
RS = RingDescriptor(2, 2, 2, [[0, 0], [1, 3]])


def test_multi_weight_examples():
    zero_shift = ((0, 0),)
    assert multi_weight(((1, 0), (1, 0)), 0, zero_shift, 2) == (0, 0)
    assert multi_weight(((2, 0), (1, 0)), 0, zero_shift, 2) == (-1, 0)
    assert multi_weight(((0, 0), (0, 1)), 1, ((0, 0), (1, 3)), 2) == (1, 4)


def test_in_V_s_examples():
    B = parse_vec("x1^2 d1", R2)
    assert in_V_s(B, (-1, 0))
    assert not in_V_s(B, (-2, 0))
    assert in_V_s(parse_vec("x1", R2) - parse_vec("x1", R2), (-5, -5))
    C = parse_vec("d1 + x1", R2)
    assert in_V_s(C, (1, 0))
    assert not in_V_s(C, (0, 0))


def test_in_V_gamma_orthant_equals_in_V_s(rng):
    orthant = ((1, 0), (0, 1))
    for _ in range(30):
        B = random_vec(rng, R2)
        for s in product(range(-2, 3), repeat=2):
            assert in_V_gamma(B, s, orthant) == in_V_s(B, s)


def test_in_V_gamma_examples():
    assert in_V_gamma(parse_vec("x1 d2", R2), (0, 0), [(1, 1)])
    zero = parse_vec("x1", R2) - parse_vec("x1", R2)
    assert in_V_gamma(zero, (-3, -3), [(1, 1)])


def test_in_V_gamma_empty_rays_rejected():
    with pytest.raises(ConeError):
        in_V_gamma(parse_vec("x1", R2), (0, 0), [])


def test_ray_normalization():
    assert normalize_rays([(2, 4), (3, 0)]) == ((1, 2), (1, 0))
    with pytest.raises(ConeError):
        normalize_rays([(0, 0)])
    with pytest.raises(ConeError):
        normalize_rays([(-1, 2)])


def brute_force_v_gamma(B, s, rays, M=8):
    """Definitional sum: membership iff every term fits into V_sigma for
    some sigma in (s - dual cone), scanned over a box wide enough to cover
    the element's diagram (the dual cone need not sit under s)."""
    k = len(s)
    shifts = B.ring.shifts
    box = list(product(range(-M, M + 1), repeat=k))
    for key, i, _ in B.iter_terms():
        delta = multi_weight(key, i, shifts, k)
        found = False
        for off in box:
            sigma = tuple(si + o for si, o in zip(s, off))
            # sigma must lie in s - dual cone: L(s - sigma) >= 0 for rays
            if any(
                sum(r * (si - sg) for r, si, sg in zip(ray, s, sigma)) < 0
                for ray in rays
            ):
                continue
            if all(d <= sg for d, sg in zip(delta, sigma)):
                found = True
                break
        if not found:
            return False
    return True


def test_in_V_gamma_matches_definitional_sum(rng):
    ray_sets = [((1, 0), (0, 1)), ((1, 1),), ((2, 1), (1, 3))]
    for _ in range(15):
        B = random_vec(rng, R2, max_degree=3)
        for rays in ray_sets:
            for s in [(0, 0), (1, -1), (-1, 2), (2, 2)]:
                assert in_V_gamma(B, s, rays) == brute_force_v_gamma(B, s, rays)


def test_filtration_compatible_with_product(rng):
    rays = ((2, 1), (1, 3))
    for _ in range(20):
        P = random_nonzero_op(rng, R2, max_degree=3)
        Q = random_nonzero_op(rng, R2, max_degree=3)
        for s_p in [(1, 0), (0, 0)]:
            for s_q in [(0, 1), (-1, 0)]:
                if in_V_s(P, s_p) and in_V_s(Q, s_q):
                    s_sum = tuple(a + b for a, b in zip(s_p, s_q))
                    assert in_V_s(P * Q, s_sum)
                if in_V_gamma(P, s_p, rays) and in_V_gamma(Q, s_q, rays):
                    s_sum = tuple(a + b for a, b in zip(s_p, s_q))
                    assert in_V_gamma(P * Q, s_sum, rays)


def test_V_s_included_in_V_gamma(rng):
    rays = ((1, 2), (3, 1))
    for _ in range(20):
        B = random_vec(rng, R2)
        for s in [(0, 0), (1, 1), (-1, 0)]:
            if in_V_s(B, s):
                assert in_V_gamma(B, s, rays)


def test_newton_diagram_examples():
    assert newton_diagram(parse_vec("x1^2 d1 + 1", R1)) == frozenset({(-1,), (0,)})
    zero = parse_vec("x1", R1) - parse_vec("x1", R1)
    assert newton_diagram(zero) == frozenset()
    assert newton_diagram(parse_dt_vec("x1 t", R1)) == newton_diagram(
        parse_dt_vec("x1", R1)
    )
    assert newton_diagram(parse_vec("d2 e2", RS)) == frozenset({(1, 4)})


def test_newton_diagram_minkowski(rng):
    for _ in range(20):
        P = random_nonzero_op(rng, R2, max_degree=3)
        B = random_vec(rng, R2, max_degree=3)
        PB = WeylVec(R2, tuple(P * c for c in B.components))
        if PB.is_zero():
            continue
        nd_p = newton_diagram(P, k=2)
        nd_b = newton_diagram(B)
        mink = {tuple(a + b for a, b in zip(u, v)) for u in nd_p for v in nd_b}
        assert newton_diagram(PB) <= mink
