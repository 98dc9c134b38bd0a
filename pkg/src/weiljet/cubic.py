"""Cubic difference quotients f^[k] and the t-extension T^(t).

A :class:`CubicArg` of order k stores 2^k points ``xs`` and 2^k - 1 scalars
``ts`` in bitmask order (bit i-1 stands for index i, ``ts[0]`` is unused).
The highest index is the outermost step of the recursion

    f^[k] = (f^[k-1])^[1],

so the "a" half of an argument (masks without bit k) is the base point and
the "b" half (masks with bit k) is the direction, with step ``t_{k}``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityMismatch, NonsingularRequired
from .expr import as_callable
from .quotient import mask_of, subset_of


@dataclass(frozen=True)
class CubicArg:
    k: int
    xs: tuple
    ts: tuple

    def __post_init__(self):
        if len(self.xs) != 1 << self.k or len(self.ts) != 1 << self.k:
            raise ArityMismatch(f"order {self.k} needs {1 << self.k} points and parameters")
        if len({len(p) for p in self.xs}) != 1:
            raise ArityMismatch("points of different arity")

    @classmethod
    def from_dicts(cls, k, x, t):
        """Build from ``{subset: point}`` and ``{subset: scalar}``; missing entries are zero."""
        some = next(iter(x.values()))
        ring, n = some[0].ring, len(some)
        xs = [tuple(x.get(subset_of(m), (ring.zero,) * n)) for m in range(1 << k)]
        ts = [None] + [t.get(subset_of(m), ring.zero) for m in range(1, 1 << k)]
        for key in list(x) + list(t):
            if mask_of(key) >= 1 << k:
                raise ArityMismatch(f"index {key} out of range for order {k}")
        return cls(k, tuple(xs), tuple(ts))

    @property
    def ring(self):
        return self.xs[0][0].ring

    def x(self, subset):
        return self.xs[mask_of(subset)]

    def t(self, subset):
        return self.ts[mask_of(subset)]

    def step(self):
        """Split into (base point, moved point, step) of the outermost quotient."""
        half = 1 << (self.k - 1)
        tau = self.ts[half]
        xa, xb = self.xs[:half], self.xs[half:]
        ta, tb = self.ts[:half], self.ts[half:]
        moved_x = tuple(tuple(a + tau * b for a, b in zip(pa, pb)) for pa, pb in zip(xa, xb))
        moved_t = (None,) + tuple(ta[m] + tau * tb[m] for m in range(1, half))
        return (CubicArg(self.k - 1, xa, ta), CubicArg(self.k - 1, moved_x, moved_t), tau)


def _inverse_step(tau):
    inv = tau.ring.try_invert(tau)
    if inv is None:
        raise NonsingularRequired(f"step {tau} is not invertible; use the scalar-extension engine")
    return inv


def diff_quotient1(f, x, h, t):
    """(f(x + t h) - f(x)) / t."""
    f = as_callable(f)
    inv = _inverse_step(t)
    moved = tuple(a + t * b for a, b in zip(x, h))
    return tuple((a - b) * inv for a, b in zip(f(moved), f(tuple(x))))


def diff_quotient_k(f, arg):
    """f^[k] at ``arg`` by the recursion f^[k] = (f^[k-1])^[1]."""
    return t_extension(f, arg)[-1]


def t_extension(f, arg):
    """T^(t) f: component J is the f^[|J|] value belonging to J, by bitmask."""
    f = as_callable(f)
    if arg.k == 0:
        return (tuple(f(arg.xs[0])),)
    base, moved, tau = arg.step()
    inv = _inverse_step(tau)
    low = t_extension(f, base)
    high = t_extension(f, moved)
    return low + tuple(tuple((a - b) * inv for a, b in zip(h, l)) for h, l in zip(high, low))


def f2_explicit(f, arg):
    """Closed form of f^[2] at ((x, v1, t1), (v2, v12, t12), t2)."""
    f = as_callable(f)
    if arg.k != 2:
        raise ArityMismatch("f2_explicit needs an order-2 argument")
    x, v1, v2, v12 = arg.xs
    t1, t2, t12 = arg.ts[1], arg.ts[2], arg.ts[3]
    r = t1 + t2 * t12

    def at(*terms):
        p = tuple(x)
        for c, d in terms:
            p = tuple(a + c * b for a, b in zip(p, d))
        return tuple(f(p))

    a = at((t2, v2), (r, v1), (r * t2, v12))
    b = at((t2, v2))
    c = at((t1, v1))
    d = tuple(f(tuple(x)))
    inv1 = _inverse_step(t2 * r)
    inv2 = _inverse_step(t1 * t2)
    return tuple((p - q) * inv1 - (u - w) * inv2 for p, q, u, w in zip(a, b, c, d))


# -- simplicial calculus inside cubic calculus ------------------------------------------------

# f^<k>(v; s) = SIGNS[k] * f^[k](g_k(v; s)); checked by the sign-determination suite.
SIGNS = {1: 1, 2: 1, 3: 1}


def embed_args(v, s):
    """The affine map g_k: (v; s) -> cubic argument.

    x_{1..j} = v_j (x_empty = v_0), other x_J = 0; t_j = s_j - s_{j-1};
    t_{j,j+1} = 1; other t_J = 0.
    """
    v, s = tuple(tuple(p) for p in v), tuple(s)
    k = len(s) - 1
    ring = s[0].ring
    zero = tuple(ring.zero for _ in v[0])
    xs = [zero] * (1 << k)
    for j in range(k + 1):
        xs[(1 << j) - 1] = v[j]
    ts = [None] + [ring.zero] * ((1 << k) - 1)
    for j in range(1, k + 1):
        ts[1 << (j - 1)] = s[j] - s[j - 1]
    for j in range(1, k):
        ts[mask_of((j, j + 1))] = ring.one
    return CubicArg(k, tuple(xs), tuple(ts))


def simplicial_via_cubic(f, v, s):
    """f^<k>(v; s) computed as sigma_k f^[k](g_k(v; s)), k = 1, 2, 3."""
    k = len(s) - 1
    if k not in SIGNS:
        raise ValueError(f"order must be 1..{max(SIGNS)}, got {k}")
    value = diff_quotient_k(f, embed_args(v, s))
    return tuple(SIGNS[k] * c for c in value)
