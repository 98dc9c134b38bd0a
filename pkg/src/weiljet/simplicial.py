"""Generalized divided differences and the simplicial extension SJ^(s).

Arguments follow one convention throughout: ``v`` is a tuple of k+1 points
(each a tuple of ring elements), ``s`` a tuple of k+1 scalars of the same
ring.  The finite-difference functions here need non-singular ``s``; the
scalar-extension engine in :mod:`weiljet.jets` covers every ``s``.
"""

from __future__ import annotations

from .expr import as_callable
from .jets import _check_tuple, sj_via_ring
from .quotient import apply_matrix, check_nonsingular, is_nonsingular, m_matrix, n_matrix


def eval_points(v, s):
    """p_i = v_0 + sum_{j=1..i} prod_{l<j} (s_i - s_l) v_j, i.e. M_s applied to v."""
    v, s = _check_tuple(v, s)
    return apply_matrix(m_matrix(s), v)


def divided_difference(f, v, s):
    """f^<k>(v; s) = sum_i f(p_i) / prod_{j != i} (s_i - s_j)."""
    f = as_callable(f)
    v, s = _check_tuple(v, s)
    check_nonsingular(s)
    acc = None
    for i, p in enumerate(eval_points(v, s)):
        den = s[0].ring.one
        for j, sj in enumerate(s):
            if j != i:
                den = den * (s[i] - sj)
        term = tuple(y * den.inverse() for y in f(p))
        acc = term if acc is None else tuple(a + b for a, b in zip(acc, term))
    return acc


def divided_difference_rec(f, v, s):
    """Same value as :func:`divided_difference`, via the order recursion.

    f^<k>(v; s) = [f^<k-1>(v_0..v_{k-1}; s_0..s_{k-1})
                   - f^<k-1>(v_0..v_{k-2}, v_{k-1} + (s_k - s_{k-1}) v_k; s_0..s_{k-2}, s_k)]
                  / (s_{k-1} - s_k)
    """
    f = as_callable(f)
    v, s = _check_tuple(v, s)
    check_nonsingular(s)
    return _rec(f, v, s)


def _rec(f, v, s):
    k = len(s) - 1
    if k == 0:
        return tuple(f(v[0]))
    first = _rec(f, v[:-1], s[:-1])
    slot = tuple(a + (s[k] - s[k - 1]) * b for a, b in zip(v[k - 1], v[k]))
    second = _rec(f, v[:-2] + (slot,), s[:-2] + (s[k],))
    inv = (s[k - 1] - s[k]).inverse()
    return tuple((a - b) * inv for a, b in zip(first, second))


def sj_extension(f, v, s):
    """Rows (f(v_0), f^<1>, ..., f^<k>) computed as N_s applied to f(M_s v)."""
    f = as_callable(f)
    v, s = _check_tuple(v, s)
    n = n_matrix(s)
    values = tuple(tuple(f(p)) for p in eval_points(v, s))
    return apply_matrix(n, values)


def sj(f, v, s):
    """SJ^(s) f (v) by the finite-difference path when possible, else by scalar extension."""
    if is_nonsingular(s):
        return sj_extension(f, v, s)
    return sj_via_ring(f, v, s)


def limited_expansion_sides(f, v, s, jet=None):
    """The two sides (f(p_i), (M_s jet)_i), i = 0..k, of the limited expansion.

    ``jet`` defaults to :func:`sj`, so singular ``s`` is allowed.
    """
    f = as_callable(f)
    v, s = _check_tuple(v, s)
    if jet is None:
        jet = sj(f, v, s)
    values = tuple(tuple(f(p)) for p in eval_points(v, s))
    return values, apply_matrix(m_matrix(s), jet)


def limited_expansion_residual(f, v, s, jet=None):
    """Residuals f(p_i) - (M_s jet)_i for i = 1..k; all zero when the expansion holds."""
    values, expanded = limited_expansion_sides(f, v, s, jet)
    return tuple(tuple(a - b for a, b in zip(x, y)) for x, y in zip(values[1:], expanded[1:]))


def chain_rule_sides(f, g, v, s, extension=sj):
    """SJ(g o f)(v) and SJ(g)(SJ(f)(v))."""
    f, g = as_callable(f), as_callable(g)
    lhs = extension(lambda p: g(f(p)), v, s)
    rhs = extension(g, extension(f, v, s), s)
    return lhs, rhs


def chain_rule_residual(f, g, v, s, extension=sj):
    """Rowwise SJ(g o f)(v) - SJ(g)(SJ(f)(v)); zero when the chain rule holds."""
    lhs, rhs = chain_rule_sides(f, g, v, s, extension)
    return tuple(tuple(a - b for a, b in zip(x, y)) for x, y in zip(lhs, rhs))
