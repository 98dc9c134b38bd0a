"""Jets by scalar extension.

A map given by an expression can be evaluated over any commutative ring.
Evaluating it over B^s_k (resp. A^t_k) with suitably lifted inputs yields the
simplicial extension SJ^(s) f (resp. the cubic extension T^(t) f) for every
parameter value, singular ones included.  No limits are taken: a division
either succeeds in the quotient ring or the input is outside the extended
domain.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, ArityMismatch
from .expr import as_callable
from .quotient import CubicAlgebra, TruncatedPolyRing, reverse_subset, mask_of, subset_of


def _check_tuple(v, s):
    v, s = tuple(tuple(p) for p in v), tuple(s)
    if len(v) != len(s):
        raise ArityMismatch(f"{len(v)} vectors for {len(s)} scalars")
    if not s:
        raise ArityMismatch("need at least one slot")
    n = len(v[0])
    if any(len(p) != n for p in v):
        raise ArityMismatch("vectors of different arity")
    return v, s


def simplicial_ring(s):
    """B^s_k for s = (s_0, ..., s_k), k >= 1."""
    return TruncatedPolyRing.from_nodes(s)


def lift_simplicial(v, s):
    """Lift (v_0, ..., v_k) coordinatewise to sum_j (v_j)_i c_j in B^s_k."""
    v, s = _check_tuple(v, s)
    ring = simplicial_ring(s)
    return ring, tuple(ring.c_basis_to_monomial([p[i] for p in v]) for i in range(len(v[0])))


def sj_via_ring(f, v, s):
    """SJ^(s) f (v) as k+1 points (f(v_0), f^<1>, ..., f^<k>), for any s."""
    f = as_callable(f)
    v, s = _check_tuple(v, s)
    if len(s) == 1:
        return (tuple(f(v[0])),)
    ring, lifted = lift_simplicial(v, s)
    out = f(lifted)
    coords = [ring.monomial_to_c_basis(z) for z in out]
    return tuple(tuple(c[j] for c in coords) for j in range(len(s)))


def taylor_coeffs(f, x, h, k):
    """Radial Taylor coefficients a_0, ..., a_k of t -> f(x + t h).

    These are the rows of SJ^(0) f (x, h, 0, ..., 0); over the rationals
    a_j = d^j f(x)(h, ..., h) / j!, over Z/p they exist without the factorial.
    """
    x, h = tuple(x), tuple(h)
    ring = x[0].ring
    zero = tuple(ring.zero for _ in x)
    v = (x, h) + (zero,) * (k - 1) if k >= 1 else (x,)
    return sj_via_ring(f, v, (ring.zero,) * (k + 1))


# -- cubic ---------------------------------------------------------------------------

def cubic_algebra(k, ts):
    """The algebra realizing T^(t): parameters relabelled by i -> k+1-i.

    ``ts`` is indexed by bitmask (entry 0 unused).  The iterated difference
    quotient treats the highest index as the outermost step, while X_1 is the
    outermost variable of the algebra tower; reversing indices matches them.
    """
    ring = next(t for t in ts[1:]).ring
    params = {reverse_subset(subset_of(m), k): ts[m] for m in range(1, 1 << k)}
    return CubicAlgebra(ring, k, params)


def t_via_ring(f, arg):
    """T^(t) f at a :class:`~weiljet.cubic.CubicArg`, as 2^k points by bitmask."""
    f = as_callable(f)
    k = arg.k
    alg = cubic_algebra(k, arg.ts)
    perm = [mask_of(reverse_subset(subset_of(m), k)) for m in range(1 << k)]
    n = len(arg.xs[0])
    lifted = []
    for i in range(n):
        coords = [None] * (1 << k)
        for m in range(1 << k):
            coords[perm[m]] = arg.xs[m][i]
        lifted.append(alg.from_coords(coords))
    out = [alg.coords(z) for z in f(tuple(lifted))]
    return tuple(tuple(c[perm[m]] for c in out) for m in range(1 << k))


# -- domains ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DomainReport:
    """Outcome of a lifted evaluation: ``ok`` plus, on failure, what failed."""

    ok: bool
    witness: str | None = None
    denominator: str | None = None
    detail: str | None = None

    def __bool__(self):
        return self.ok

    def as_dict(self):
        return {"ok": self.ok, "witness": self.witness,
                "denominator": self.denominator, "detail": self.detail}


def _report(thunk):
    try:
        thunk()
    except DomainError as exc:
        return DomainReport(False, exc.witness, str(exc.value), str(exc))
    return DomainReport(True)


def domain_check(f, v, s):
    """Is (v, s) in the extended domain SJ^(s) U of ``f``?"""
    return _report(lambda: sj_via_ring(f, v, s))


def cubic_domain_check(f, arg):
    """Is ``arg`` in the domain of T^(t) f?"""
    return _report(lambda: t_via_ring(f, arg))
