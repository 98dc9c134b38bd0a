from fractions import Fraction

import pytest

from weiljet.rings import QQ, IntegersMod


def q(*values):
    """Tuple of rationals."""
    return tuple(QQ(Fraction(v)) for v in values)


def scalar_points(*values, ring=QQ):
    """Points of arity 1 from plain numbers."""
    return tuple((ring(Fraction(v)),) for v in values)


@pytest.fixture(params=["rational", "zmod:7", "zmod:6"])
def exact_ring(request):
    from weiljet.rings import parse_ring
    return parse_ring(request.param)


Z5 = IntegersMod(5)
Z7 = IntegersMod(7)
