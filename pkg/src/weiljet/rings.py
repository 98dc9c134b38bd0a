"""Commutative base rings and their elements.

Every other module is generic over the :class:`Ring` interface.  Three
concrete base rings are provided (exact rationals, integers modulo ``m`` and
tolerance-compared floats); the quotient algebras in :mod:`weiljet.quotient`
are rings of the same kind, which is what makes scalar extension a matter of
evaluating the same expression with different elements.

Elements are immutable.  Mixing elements of different rings raises
:class:`~weiljet.errors.OwnerMismatch`; plain Python ``int`` operands are
accepted and mapped through the canonical homomorphism from the integers.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import NotInvertible, OwnerMismatch


class Ring:
    """Abstract commutative unital ring.

    Subclasses implement the payload-level hooks ``_canon``, ``_add``,
    ``_neg``, ``_mul``, ``_inv`` (returning ``None`` when no inverse exists),
    ``_eq`` and ``_from_int``.
    """

    exact = True
    is_field = False

    # -- hooks --------------------------------------------------------------
    def _key(self):
        raise NotImplementedError

    def _canon(self, value):
        return value

    def _from_int(self, n):
        raise NotImplementedError

    def _add(self, x, y):
        raise NotImplementedError

    def _neg(self, x):
        raise NotImplementedError

    def _sub(self, x, y):
        return self._add(x, self._neg(y))

    def _mul(self, x, y):
        raise NotImplementedError

    def _inv(self, x):
        raise NotImplementedError

    def _eq(self, x, y):
        return x == y

    def _is_zero(self, x):
        return x == self._from_int(0)

    def _hash(self, x):
        return hash(x)

    def _format(self, x):
        return str(x)

    def _parse(self, text):
        raise NotImplementedError

    # -- public interface -----------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Ring) and type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def element(self, value):
        return RingElement(self, self._canon(value))

    def __call__(self, value):
        if isinstance(value, RingElement):
            self.check(value)
            return value
        if isinstance(value, int):
            return self.from_int(value)
        return self.element(value)

    def from_int(self, n):
        """Image of the integer ``n`` (the ``n``-fold sum of the unit)."""
        return RingElement(self, self._from_int(int(n)))

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def check(self, a):
        if not isinstance(a, RingElement):
            raise TypeError(f"expected a ring element, got {type(a).__name__}")
        if a.ring is not self and a.ring != self:
            raise OwnerMismatch(f"element of {a.ring} used in {self}")
        return a

    def try_invert(self, a):
        """Inverse of ``a``, or ``None`` when ``a`` is not a unit."""
        self.check(a)
        inv = self._inv(a.value)
        if inv is None:
            return None
        return RingElement(self, inv)

    def is_zero(self, a):
        """Exact test for the zero element (no tolerance, also for floats)."""
        return self._is_zero(self.check(a).value)

    def format(self, a):
        """String serialization used by the CLI and JSON reports."""
        return self._format(self.check(a).value)

    def parse(self, text):
        return self.element(self._parse(text.strip()))

    @property
    def descriptor(self):
        """Name of this ring as accepted by :func:`parse_ring`."""
        raise NotImplementedError


class RingElement:
    """An element of a :class:`Ring`; ``value`` is the canonical payload."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ring elements are immutable")

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise OwnerMismatch(f"cannot combine elements of {self.ring} and {other.ring}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring._from_int(other)
        return NotImplemented

    def __add__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return RingElement(self.ring, self.ring._add(self.value, y))

    __radd__ = __add__

    def __sub__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return RingElement(self.ring, self.ring._sub(self.value, y))

    def __rsub__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return RingElement(self.ring, self.ring._sub(y, self.value))

    def __mul__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return RingElement(self.ring, self.ring._mul(self.value, y))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.value))

    def __pos__(self):
        return self

    def inverse(self):
        inv = self.ring._inv(self.value)
        if inv is None:
            raise NotInvertible(self)
        return RingElement(self.ring, inv)

    def __truediv__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return self * RingElement(self.ring, y).inverse()

    def __rtruediv__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return RingElement(self.ring, y) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        result = self.ring.one
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, RingElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise OwnerMismatch(f"cannot compare elements of {self.ring} and {other.ring}")
            return self.ring._eq(self.value, other.value)
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring._eq(self.value, self.ring._from_int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.ring._hash(self.value)))

    def __repr__(self):
        return f"{self.ring._format(self.value)}"

    def __str__(self):
        return self.ring._format(self.value)


class Rationals(Ring):
    """Exact rationals backed by :class:`fractions.Fraction`."""

    is_field = True

    def _key(self):
        return ()

    def _canon(self, value):
        if isinstance(value, float):
            raise TypeError("refusing to build an exact rational from a float")
        return Fraction(value)

    def _from_int(self, n):
        return Fraction(n)

    def _add(self, x, y):
        return x + y

    def _sub(self, x, y):
        return x - y

    def _neg(self, x):
        return -x

    def _mul(self, x, y):
        return x * y

    def _inv(self, x):
        return None if x == 0 else 1 / x

    def _is_zero(self, x):
        return x == 0

    def _parse(self, text):
        return Fraction(text)

    @property
    def descriptor(self):
        return "rational"

    def __repr__(self):
        return "QQ"


class IntegersMod(Ring):
    """The residue ring Z/mZ, residues kept in ``[0, m)``."""

    def __init__(self, modulus):
        modulus = int(modulus)
        if modulus < 2:
            raise ValueError(f"modulus must be at least 2, got {modulus}")
        self.modulus = modulus
        self.is_field = _is_prime(modulus)

    def _key(self):
        return (self.modulus,)

    def _canon(self, value):
        if isinstance(value, Fraction):
            num = value.numerator % self.modulus
            den = self._inv(value.denominator % self.modulus)
            if den is None:
                raise ValueError(f"{value} has no image in Z/{self.modulus}")
            return num * den % self.modulus
        return int(value) % self.modulus

    def _from_int(self, n):
        return n % self.modulus

    def _add(self, x, y):
        return (x + y) % self.modulus

    def _sub(self, x, y):
        return (x - y) % self.modulus

    def _neg(self, x):
        return -x % self.modulus

    def _mul(self, x, y):
        return x * y % self.modulus

    def _inv(self, x):
        try:
            return pow(x, -1, self.modulus)
        except ValueError:
            return None

    def _is_zero(self, x):
        return x == 0

    def _parse(self, text):
        return Fraction(text)

    @property
    def descriptor(self):
        return f"zmod:{self.modulus}"

    def __repr__(self):
        return f"Z/{self.modulus}"


class ApproxReals(Ring):
    """Floats compared with a relative-plus-absolute tolerance.

    ``a == b`` iff ``|a - b| <= tol * max(1, |a|, |b|)``; an element is
    invertible iff ``|a| > tol``.  Equality is not transitive, so these
    elements only hash by ring.
    """

    exact = False
    is_field = True

    def __init__(self, tolerance=1e-9):
        tolerance = float(tolerance)
        if not tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {tolerance}")
        self.tolerance = tolerance

    def _key(self):
        return (self.tolerance,)

    def _canon(self, value):
        return float(value)

    def _from_int(self, n):
        return float(n)

    def _add(self, x, y):
        return x + y

    def _sub(self, x, y):
        return x - y

    def _neg(self, x):
        return -x

    def _mul(self, x, y):
        return x * y

    def _inv(self, x):
        return None if abs(x) <= self.tolerance else 1.0 / x

    def _eq(self, x, y):
        return abs(x - y) <= self.tolerance * max(1.0, abs(x), abs(y))

    def _is_zero(self, x):
        return x == 0.0

    def _hash(self, x):
        return 0

    def _format(self, x):
        return repr(x)

    def _parse(self, text):
        return float(Fraction(text))

    @property
    def descriptor(self):
        return f"real:{self.tolerance!r}"

    def __repr__(self):
        return f"R(tol={self.tolerance!r})"


QQ = Rationals()


def _is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n % p == 0:
            return n == p
    return all(n % d for d in range(17, math.isqrt(n) + 1, 2))


def parse_ring(text):
    """Build a base ring from ``rational``, ``zmod:<m>`` or ``real:<tol>``."""
    text = text.strip()
    if text in ("rational", "QQ"):
        return QQ
    kind, _, arg = text.partition(":")
    if kind == "zmod" and arg:
        return IntegersMod(int(arg))
    if kind == "real":
        return ApproxReals(float(arg) if arg else 1e-9)
    raise ValueError(f"unknown ring descriptor {text!r}")


# -- points: tuples of elements of one ring ---------------------------------

def vadd(p, q):
    if len(p) != len(q):
        raise ValueError("points of different dimension")
    return tuple(a + b for a, b in zip(p, q))


def vsub(p, q):
    if len(p) != len(q):
        raise ValueError("points of different dimension")
    return tuple(a - b for a, b in zip(p, q))


def vscale(c, p):
    return tuple(c * a for a in p)


def vzero(ring, n):
    return tuple(ring.zero for _ in range(n))


def points_equal(p, q):
    return len(p) == len(q) and all(a == b for a, b in zip(p, q))


# -- serialization: every number is a string ----------------------------------

def fmt(a):
    return a.ring.format(a)


def fmt_point(p):
    return [fmt(a) for a in p]


def fmt_points(rows):
    return [fmt_point(p) for p in rows]
