"""Seeded random inputs for the verification suites.

Maps are polynomial ASTs of depth at most 4 with integer coefficients in
[-9, 9], a total-degree cap, and optionally one division whose denominator
is 1 + (monomial), so that domains are generically nonempty.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .expr import BinOp, MapExpr, Neg, Num, Pow, Var
from .quotient import is_nonsingular
from .rings import ApproxReals, IntegersMod, Rationals


def trial_rng(seed, suite, trial):
    """Counter-based per-trial generator: independent of scheduling."""
    return random.Random(f"{seed}:{suite}:{trial}")


def _degree(node):
    if isinstance(node, Num):
        return 0
    if isinstance(node, Var):
        return 1
    if isinstance(node, Neg):
        return _degree(node.operand)
    if isinstance(node, Pow):
        return _degree(node.base) * node.exponent
    if node.op == "*":
        return _degree(node.left) + _degree(node.right)
    return max(_degree(node.left), _degree(node.right))


def _coeff(rng):
    c = rng.randint(-9, 9)
    return Neg(Num(-c)) if c < 0 else Num(c)


def _leaf(rng, names):
    return Var(rng.choice(names)) if rng.random() < 0.6 else _coeff(rng)


def random_poly(rng, names, depth=4, max_degree=4):
    if depth <= 1 or rng.random() < 0.25:
        return _leaf(rng, names)
    kind = rng.choice("++--**^n")
    if kind == "n":
        node = Neg(random_poly(rng, names, depth - 1, max_degree))
    elif kind == "^":
        node = Pow(random_poly(rng, names, depth - 1, max_degree), rng.choice((2, 3)))
    else:
        node = BinOp(kind, random_poly(rng, names, depth - 1, max_degree),
                     random_poly(rng, names, depth - 1, max_degree))
    if _degree(node) > max_degree:
        return _leaf(rng, names)
    return node


def random_map(rng, n_in, n_out, *, name="f", division_rate=0.3, depth=4, max_degree=4):
    names = ("x",) if n_in == 1 else tuple(f"x{i}" for i in range(n_in))
    outputs = []
    used_division = False
    for _ in range(n_out):
        out = random_poly(rng, names, depth, max_degree)
        if not used_division and rng.random() < division_rate:
            used_division = True
            mono = Var(rng.choice(names))
            e = rng.choice((1, 2))
            if e > 1:
                mono = Pow(mono, e)
            c = rng.randint(1, 9)
            if c > 1:
                mono = BinOp("*", Num(c), mono)
            out = BinOp("/", out, BinOp("+", Num(1), mono))
        outputs.append(out)
    return MapExpr(names, tuple(outputs), name)


def random_scalar(rng, ring):
    if isinstance(ring, Rationals):
        return ring(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
    if isinstance(ring, IntegersMod):
        return ring(rng.randrange(ring.modulus))
    if isinstance(ring, ApproxReals):
        return ring(rng.uniform(-1.0, 1.0))
    raise TypeError(f"no random generator for {ring}")


def random_point(rng, ring, n):
    return tuple(random_scalar(rng, ring) for _ in range(n))


def random_nonsingular(rng, ring, k, attempts=200):
    """Random non-singular (s_0..s_k), or ``None`` if none was found.

    Float tuples keep all pairwise differences at least 0.1.
    """
    if isinstance(ring, ApproxReals):
        s, acc = [], rng.uniform(-1.0, 1.0)
        for _ in range(k + 1):
            s.append(ring(acc))
            acc += rng.uniform(0.1, 1.0)
        rng.shuffle(s)
        return tuple(s)
    if isinstance(ring, IntegersMod) and ring.is_field:
        if k + 1 > ring.modulus:
            return None
        return tuple(ring(x) for x in rng.sample(range(ring.modulus), k + 1))
    for _ in range(attempts):
        s = tuple(random_scalar(rng, ring) for _ in range(k + 1))
        if is_nonsingular(s):
            return s
    return None


def random_tuple(rng, ring, k):
    """Random (s_0..s_k), singular ones deliberately frequent."""
    mode = rng.choice(("zero", "repeat", "free"))
    if mode == "zero":
        return tuple(ring.zero for _ in range(k + 1))
    if mode == "repeat":
        pool = [random_scalar(rng, ring) for _ in range(max(1, k // 2))]
        return tuple(rng.choice(pool) for _ in range(k + 1))
    return tuple(random_scalar(rng, ring) for _ in range(k + 1))
