import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weiljet.cubic import diff_quotient1
from weiljet.errors import DomainError, NonsingularRequired
from weiljet.expr import identity_map, parse
from weiljet.jets import domain_check, sj_via_ring
from weiljet.randmaps import random_map, random_nonsingular, random_point, random_scalar
from weiljet.rings import QQ, IntegersMod
from weiljet.simplicial import (chain_rule_residual, divided_difference, divided_difference_rec,
                                eval_points, limited_expansion_residual, sj, sj_extension)

from conftest import q, scalar_points

SQUARE = parse("f(x) = x^2")


def test_eval_points_examples():
    assert eval_points(scalar_points(2, 1, 0), q(0, 1, 3)) == scalar_points(2, 3, 5)
    v = scalar_points(4, 7, 9, 2)
    assert eval_points(v, q(0, 0, 0, 0)) == scalar_points(4, 4, 4, 4)
    s0, s1 = QQ(2), QQ(Fraction(7, 2))
    assert eval_points(scalar_points(3, 5), (s0, s1))[1] == (QQ(3) + (s1 - s0) * 5,)


def test_divided_difference_examples():
    assert divided_difference(SQUARE, scalar_points(2, 1), q(0, 3)) == q(7)
    assert divided_difference(identity_map(), scalar_points(5, 7, 11), q(0, 1, 2)) == q(11)
    assert divided_difference(parse("f(x) = 4"), scalar_points(3, -1, 8), q(0, 1, 3)) == q(0)
    assert divided_difference(SQUARE, scalar_points(2, 1, 0), q(0, 1, 3)) == q(1)


def test_divided_difference_errors():
    with pytest.raises(NonsingularRequired):
        divided_difference(SQUARE, scalar_points(1, 1, 1), q(0, 1, 1))
    with pytest.raises(DomainError):
        # v0 = 1 is fine but p_1 = 1 + (0 - 1) * 1 = 0 is not
        divided_difference(parse("f(x) = 1/x"), scalar_points(1, 1), q(1, 0))


def test_recursion_examples():
    assert divided_difference_rec(SQUARE, scalar_points(2, 1, 0), q(0, 1, 3)) == q(1)
    for k in range(1, 5):
        v = scalar_points(*range(3, 4 + k))
        s = q(*[i * i for i in range(k + 1)])
        assert divided_difference_rec(identity_map(), v, s) == v[-1]
    f = parse("f(x) = x^3 - 1/(1 + x^2)")
    v, s, t = scalar_points(2, 5), QQ(Fraction(1, 3)), QQ(Fraction(5, 2))
    assert divided_difference_rec(f, v, (s, t)) == diff_quotient1(f, v[0], v[1], t - s)


def test_sj_extension_examples():
    assert sj_extension(SQUARE, scalar_points(2, 1, 0), q(0, 1, 3)) == scalar_points(4, 5, 1)
    v = scalar_points(5, 7, 11)
    assert sj_extension(identity_map(), v, q(0, 1, 2)) == v
    assert sj_extension(parse("f(x) = 6"), v, q(0, 1, 2)) == scalar_points(6, 0, 0)


def test_limited_expansion_examples():
    assert limited_expansion_residual(SQUARE, scalar_points(2, 1, 0), q(0, 1, 3)) == (q(0), q(0))
    # f(5) = 4 + 3*5 + 6*1
    assert QQ(25) == QQ(4) + 3 * QQ(5) + 6 * QQ(1)


def test_radial_taylor_expansion():
    f = parse("f(x) = x^4 - 3*x + 1/(2 + x)")
    x, h, t = QQ(1), QQ(Fraction(1, 2)), QQ(Fraction(2, 3))
    v = ((x,), (h,), (QQ(0),), (QQ(0),))
    s = (QQ(0), QQ(0), QQ(0), t)
    jet = sj(f, v, s)
    value = sum((t ** j * row[0] for j, row in enumerate(jet)), QQ.zero)
    assert f((x + t * h,)) == (value,)
    assert limited_expansion_residual(f, v, s) == ((QQ(0),),) * 3


def test_chain_rule_examples():
    f, g = parse("f(x) = x^2"), parse("g(x) = x^3")
    v, s = scalar_points(1, 1), q(0, 0)
    composite = sj_via_ring(lambda p: g(f(p)), v, s)
    assert composite == scalar_points(1, 6)
    assert sj_via_ring(g, sj_via_ring(f, v, s), s) == composite
    assert chain_rule_residual(f, identity_map(), scalar_points(2, 3, 4), q(0, 1, 3)) == (q(0),) * 3


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_chain_rule_over_z7(seed):
    rng = random.Random(seed)
    z7 = IntegersMod(7)
    k = rng.randint(1, 3)
    f, g = random_map(rng, 2, 2), random_map(rng, 2, 1)
    v = tuple(random_point(rng, z7, 2) for _ in range(k + 1))
    s = random_nonsingular(rng, z7, k)
    try:
        residual = chain_rule_residual(f, g, v, s, extension=sj_extension)
    except DomainError:
        return
    assert all(c == 0 for row in residual for c in row)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_recursion_matches_direct_formula(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 4)
    f = random_map(rng, 2, 2)
    v = tuple(random_point(rng, QQ, 2) for _ in range(k + 1))
    s = random_nonsingular(rng, QQ, k)
    try:
        direct = divided_difference(f, v, s)
    except DomainError:
        return
    assert divided_difference_rec(f, v, s) == direct


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_translation_invariance(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    f = random_map(rng, 1, 2)
    v = tuple(random_point(rng, QQ, 1) for _ in range(k + 1))
    s = random_nonsingular(rng, QQ, k)
    shift = random_scalar(rng, QQ)
    try:
        direct = divided_difference(f, v, s)
    except DomainError:
        return
    assert divided_difference(f, v, tuple(x - shift for x in s)) == direct


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_conjugation(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 4)
    f = random_map(rng, 2, 1)
    v = tuple(random_point(rng, QQ, 2) for _ in range(k + 1))
    s = random_nonsingular(rng, QQ, k)
    try:
        rows = sj_extension(f, v, s)
    except DomainError:
        return
    assert rows[0] == f(v[0])
    assert limited_expansion_residual(f, v, s, rows) == ((QQ(0),),) * k
    assert sj_via_ring(f, v, s) == rows


def test_product_compatibility():
    pair = parse("h(x, y) = x^2*y, 1/(1 + x)")
    first, second = parse("f(x, y) = x^2*y"), parse("g(x, y) = 1/(1 + x)")
    v = (q(1, 2), q(3, 1), q(Fraction(1, 2), 4))
    s = q(0, 2, 5)
    rows = sj_extension(pair, v, s)
    assert rows == tuple(a + b for a, b in zip(sj_extension(first, v, s), sj_extension(second, v, s)))
    # direct product (x, y) -> (x^3, 1/y) acts slotwise
    prod = parse("p(x, y) = x^3, 1/y")
    cube, inv = parse("c(x) = x^3"), parse("i(y) = 1/y")
    xs, ys = tuple((p[0],) for p in v), tuple((p[1],) for p in v)
    assert sj_extension(prod, v, s) == tuple(
        a + b for a, b in zip(sj_extension(cube, xs, s), sj_extension(inv, ys, s)))


@pytest.mark.parametrize("ring", [QQ, IntegersMod(5)])
def test_locality_at_zero(ring):
    f = parse("f(x) = x/(x^2 - 1)")
    zeros = (ring.zero,) * 3
    for a in range(-3, 4):
        inside = a % 5 not in (1, 4) if ring != QQ else a not in (1, -1)
        for b, c in [(0, 0), (1, 2), (4, -3)]:
            assert domain_check(f, ((ring(a),), (ring(b),), (ring(c),)), zeros).ok == inside
