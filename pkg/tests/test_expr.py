import random

import pytest
from hypothesis import given, settings, strategies as st

from weiljet.errors import ArityMismatch, DomainError, OwnerMismatch, ParseError
from weiljet.expr import MapExpr, Var, count_divisions, evaluate, identity_map, parse, to_source
from weiljet.randmaps import random_map
from weiljet.rings import QQ, ApproxReals, IntegersMod

from conftest import q


def test_parse_and_print():
    f = parse("f(x, y) = x*y + 3/y")
    assert f.inputs == ("x", "y")
    assert str(f) == "f(x, y) = x*y + 3/y"
    assert f.arity == 2 and f.dim == 1


def test_precedence_and_unary_minus():
    f = parse("f(x) = -x^2 + 2*x - (1 - x)")
    assert f(q(3)) == q(-9 + 6 - (1 - 3))
    with pytest.raises(ParseError) as info:
        parse("g(x) = 2^3^1")
    assert "'^'" not in info.value.expected


def test_multiple_outputs_and_any_name():
    h = parse("polar(r, a) = r*a, r - a, 7")
    assert h.name == "polar"
    assert h(q(2, 5)) == q(10, -3, 7)


@pytest.mark.parametrize("source, offset", [
    ("f(x) = x +", 10),
    ("f(x) = x^-2", 9),
    ("f(x) = y", 7),
    ("f(x) = (x", 9),
    ("f x) = x", 2),
    ("f(x) = x $ 1", 9),
])
def test_parse_errors_report_offsets(source, offset):
    with pytest.raises(ParseError) as info:
        parse(source)
    assert info.value.offset == offset
    assert "offset" in str(info.value)


def test_parse_error_offsets_are_bytes():
    with pytest.raises(ParseError) as info:
        parse("f(x) = x + é")
    assert info.value.offset == len("f(x) = x + ".encode())


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse("f(x) = x *")
    assert "identifier" in info.value.expected
    assert "expected one of" in str(info.value)


def test_evaluation_over_several_rings():
    f = parse("f(x) = x^3 + 1/(1 + x)")
    assert f(q(1)) == q(1 + 0.5)
    z5 = IntegersMod(5)
    assert f((z5(3),)) == (z5(27 + 4),)  # 1/4 = 4 mod 5
    r = ApproxReals(1e-12)
    assert f((r(0.5),)) == (r(0.125 + 1 / 1.5),)


def test_domain_error_carries_witness():
    f = parse("f(x) = 1/x + 2/(x - 3)")
    with pytest.raises(DomainError) as info:
        f(q(3))
    assert info.value.witness == "x - 3"
    z6 = IntegersMod(6)
    with pytest.raises(DomainError):
        f((z6(2),))


def test_arity_and_owner_checks():
    f = parse("f(x, y) = x + y")
    with pytest.raises(ArityMismatch):
        f(q(1))
    with pytest.raises(OwnerMismatch):
        evaluate(f, (QQ(1), IntegersMod(5)(1)))


def test_map_validation():
    with pytest.raises(ValueError):
        MapExpr(("x", "x"), (Var("x"),))
    with pytest.raises(ValueError):
        MapExpr(("x",), (Var("y"),))


def test_compose():
    f = parse("f(x) = x^2")
    g = parse("g(y) = y + 1/y")
    h = g.compose(f)
    assert h(q(2)) == g(f(q(2)))
    with pytest.raises(ArityMismatch):
        parse("p(a, b) = a").compose(f)


def test_identity_map():
    assert identity_map(1)(q(5)) == q(5)
    assert identity_map(3)(q(1, 2, 3)) == q(1, 2, 3)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3), st.integers(1, 3))
def test_print_parse_round_trip(seed, n, m):
    f = random_map(random.Random(seed), n, m, division_rate=0.5)
    again = parse(str(f))
    assert again == f
    assert str(again) == str(f)
    assert count_divisions(f.outputs[0]) <= 1


def test_to_source_parenthesizes_minimally():
    f = parse("f(a, b, c) = (a - (b + c))*(a/b)^2 - -(a)")
    assert to_source(f.outputs[0]) == "(a - (b + c))*(a/b)^2 - -a"
