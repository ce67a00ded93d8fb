import pytest

from dfan.errors import SemanticError, SyntaxErrorWithPos
from dfan.problem import (
    format_problem,
    format_w_monomials,
    parse_problem,
    parse_syzygy,
    parse_w_monomials,
)

EULER = """\
ring n=2 k=2 r=1
shifts = [[0, 0]]
gen: x1 d1 + x2 d2
"""


def test_parse_euler():
    p = parse_problem(EULER)
    assert (p.ring.n, p.ring.k, p.ring.r) == (2, 2, 1)
    assert len(p.generators) == 1


def test_round_trip_idempotent():
    p = parse_problem(EULER)
    printed = format_problem(p)
    assert parse_problem(printed) == p
    assert format_problem(parse_problem(printed)) == printed


def test_round_trip_full_fields():
    text = """\
# everything at once
ring n=2 k=2 r=2
shifts = [[0, 0], [1, 3]]
order = deg-revlex-pot
gen: x1 d1 e1 + x2 d2 e2
gen: d2 e2
target: x1 e1
cone = [[1, 0], [1, 1]]
weight = [1/2, 1]
ideal = W1 W2^2, W2
s = [1, -1]
degree_bound = 5
l_max = 7
"""
    p = parse_problem(text)
    assert p.weight.coeffs[0] == 0.5
    assert p.ideal == ((1, 2), (0, 1))
    assert p.s == (1, -1)
    assert parse_problem(format_problem(p)) == p


def test_compact_field_spelling():
    # fields also parse without spaces around the equals sign
    p = parse_problem("ring n=2 k=2 r=1\nshifts=[[0,0]]\ngen: x1 d1 + x2 d2\n")
    assert p.ring.shifts == ((0, 0),)
    assert parse_problem(format_problem(p)) == p


def test_corpus_round_trips():
    from pathlib import Path

    corpus = Path(__file__).resolve().parents[1] / "problems"
    seen = 0
    for path in sorted(corpus.glob("*.txt")):
        text = path.read_text()
        if "q:" in text:  # syzygy files use their own parser
            continue
        p = parse_problem(text)
        assert parse_problem(format_problem(p)) == p
        seen += 1
    assert seen >= 4


def test_index_out_of_range_message():
    with pytest.raises(SemanticError, match="x3 out of range"):
        parse_problem("ring n=2 k=2 r=1\ngen: x3 d1\n")


def test_k_exceeding_n_rejected():
    with pytest.raises(SemanticError, match="1 <= k <= n"):
        parse_problem("ring n=2 k=3 r=1\ngen: x1\n")


def test_shift_shape_checked():
    with pytest.raises(SemanticError, match="shifts"):
        parse_problem("ring n=2 k=2 r=1\nshifts = [[0, 0], [1, 1]]\ngen: x1\n")


def test_zero_generator_rejected():
    with pytest.raises(SemanticError, match="no generators"):
        parse_problem("ring n=2 k=2 r=1\n")


def test_unknown_field_located():
    with pytest.raises(SyntaxErrorWithPos, match="unknown field"):
        parse_problem("ring n=2 k=2 r=1\ngen: x1\nfrobnicate = 3\n")


def test_syntax_error_has_line():
    try:
        parse_problem("ring n=2 k=2 r=1\ngen: x1\nwhat is this\n")
    except SyntaxErrorWithPos as exc:
        assert exc.line == 3
    else:
        pytest.fail("expected a syntax error")


def test_unsupported_order_name():
    with pytest.raises(SemanticError, match="unsupported order"):
        parse_problem("ring n=2 k=2 r=1\ngen: x1\norder = lex\n")


def test_w_monomials():
    assert parse_w_monomials("W1^2, W2", 2) == ((2, 0), (0, 1))
    assert parse_w_monomials("1", 2) == (((0, 0)),)
    assert format_w_monomials(((2, 0), (0, 1))) == "W1^2, W2"
    with pytest.raises(SemanticError, match="W3 out of range"):
        parse_w_monomials("W3", 2)


def test_parse_syzygy():
    syz = parse_syzygy(
        "syzygy n=2 k=2\na = [[1, 0], [0, 1]]\nq: x1 d1 w2\nq: - x1 d1 w1\n"
    )
    assert syz.n == 2 and syz.k == 2
    assert syz.a == ((1, 0), (0, 1))
    assert len(syz.q_texts) == 2
    with pytest.raises(SemanticError):
        parse_syzygy("syzygy n=2 k=2\na = [[1, 0]]\nq: x1\nq: x2\n")
