import random
from fractions import Fraction

import pytest

from dfan.errors import RingMismatchError, ZeroInputError
from dfan.grammar import parse_dt_op, parse_dt_vec, parse_op, parse_vec
from dfan.weyl import (
    DtOp,
    RingDescriptor,
    WeylOp,
    dehomogenize,
    homogenize,
    homogenize_vec,
    require_f_homogeneous,
)
from conftest import apply_op, monomials_up_to, random_dt_op, random_nonzero_op

R1 = RingDescriptor(1, 1, 1)
R2 = RingDescriptor(2, 2, 1)
R3 = RingDescriptor(3, 3, 1)


def op(text, ring=R2):
    return parse_op(text, ring)


def test_leibniz_basic():
    assert op("d1") * op("x1") == op("x1 d1 + 1")


def test_unit_law(rng):
    for _ in range(20):
        P = random_nonzero_op(rng, R2)
        assert op("1") * P == P
        assert P * op("1") == P


def test_derivative_of_square():
    assert op("d1") * op("x1^2") == op("x1^2 d1 + 2 x1")


def test_mul_matches_action_oracle(rng):
    # compare the ring product with composition of actions on polynomials
    for _ in range(30):
        P = random_nonzero_op(rng, R2, max_degree=3)
        Q = random_nonzero_op(rng, R2, max_degree=3)
        PQ = P * Q
        for gamma in monomials_up_to(2, 5):
            poly = {gamma: Fraction(1)}
            assert apply_op(PQ, poly) == apply_op(P, apply_op(Q, poly))


def test_associativity_and_distributivity(rng):
    for _ in range(25):
        P = random_nonzero_op(rng, R3, max_degree=3, max_terms=3)
        Q = random_nonzero_op(rng, R3, max_degree=3, max_terms=3)
        S = random_nonzero_op(rng, R3, max_degree=3, max_terms=3)
        assert (P * Q) * S == P * (Q * S)
        assert P * (Q + S) == P * Q + P * S


def test_commutator_delta():
    for i in range(2):
        for j in range(2):
            di = op(f"d{i + 1}")
            xj = op(f"x{j + 1}")
            comm = di * xj - xj * di
            expected = op("1") if i == j else WeylOp(R2)
            assert comm == expected


def test_ring_mismatch():
    with pytest.raises(RingMismatchError):
        parse_op("x1", R1) * parse_op("x1", R2)


def test_canonicalization_idempotent(rng):
    for _ in range(10):
        P = random_nonzero_op(rng, R2)
        assert WeylOp(R2, dict(P.terms)) == P


# D[t]


def dt(text, ring=R2):
    return parse_dt_op(text, ring)


def test_dt_commutator_emits_t():
    assert dt("d1") * dt("x1") == dt("x1 d1 + t")


def test_t_central(rng):
    t = dt("t")
    for _ in range(10):
        P = random_dt_op(rng, R2)
        assert t * P == P * t


def test_dt_example_against_dehomogenized_product():
    left = dt("d1") * dt("x1^2 d2")
    assert left == dt("x1^2 d1 d2 + 2 x1 d2 t")
    assert dehomogenize(left) == op("d1") * op("x1^2 d2")


def test_dt_mul_dehomogenizes_to_plain_mul(rng):
    for _ in range(25):
        P = random_dt_op(rng, R2, max_degree=3)
        Q = random_dt_op(rng, R2, max_degree=3)
        assert dehomogenize(P * Q) == dehomogenize(P) * dehomogenize(Q)


def test_dt_commutator_vs_plain():
    for i in range(2):
        for j in range(2):
            comm = dt(f"d{i + 1}") * dt(f"x{j + 1}") - dt(f"x{j + 1}") * dt(f"d{i + 1}")
            expected = dt("t") if i == j else DtOp(R2)
            assert comm == expected


def test_f_homogeneity_closure(rng):
    count = 0
    while count < 20:
        P = random_dt_op(rng, R2, max_degree=4)
        Q = random_dt_op(rng, R2, max_degree=4)
        dp, dq = P.f_degree(), Q.f_degree()
        if dp is None or dq is None:
            continue
        count += 1
        prod = P * Q
        if prod.is_zero():
            continue
        assert prod.f_degree() == dp + dq


# homogenization


def test_homogenize_first_order():
    assert homogenize(op("d1 + x1", R1)) == dt("d1 + x1 t", R1)


def test_homogenize_order_zero():
    assert homogenize(op("x1", R1)) == dt("x1", R1)


def test_homogenize_paper_operator():
    h = homogenize(op("1 + x1^2 d1", R1))
    assert h == dt("t + x1^2 d1", R1)
    assert require_f_homogeneous(h) == 1


def test_homogenize_zero_rejected():
    with pytest.raises(ZeroInputError):
        homogenize(WeylOp(R1))


def test_homogenize_vec_examples():
    B = parse_vec("d1 e1 + x1 e2", RingDescriptor(1, 1, 2))
    H = homogenize_vec(B)
    assert H == parse_dt_vec("d1 e1 + x1 t e2", RingDescriptor(1, 1, 2))

    Rv = RingDescriptor(2, 2, 2)
    B2 = parse_vec("d1 e1", Rv)
    assert homogenize_vec(B2) == parse_dt_vec("d1 e1", Rv)

    B3 = parse_vec("d1^2 e1 + x2 d1 e2", Rv)
    H3 = homogenize_vec(B3)
    assert H3 == parse_dt_vec("d1^2 e1 + x2 d1 t e2", Rv)
    assert require_f_homogeneous(H3) == 2


def test_dehomogenize_examples():
    assert dehomogenize(dt("t + x1^2 d1", R1)) == op("1 + x1^2 d1", R1)
    assert dehomogenize(dt("x1 t^2 + x1", R1)) == op("2 x1", R1)


def test_dehomogenize_section(rng):
    for _ in range(25):
        P = random_nonzero_op(rng, R2)
        assert dehomogenize(homogenize(P)) == P
