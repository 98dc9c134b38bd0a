"""Randomized verification suites.

Every suite is a function ``trial(rng, ring, max_order) -> Outcome``.  Trials
draw their inputs from :func:`~weiljet.randmaps.trial_rng`, so a report is a
pure function of (suite, ring, trials, seed, max_order), whatever the number
of workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import cubic, jets, simplicial
from .errors import DomainError, ExactRingRequired, NonsingularRequired, UnknownSuite
from .expr import evaluate, parse
from .quotient import (CubicAlgebra, TruncatedPolyRing, embed_simplicial_in_cubic, identity_matrix,
                       is_nonsingular, m_matrix, mat_mul, n_matrix, subset_label, subset_of)
from .randmaps import (random_map, random_nonsingular, random_point, random_scalar, random_tuple,
                       trial_rng)
from .rings import fmt, fmt_point, fmt_points, parse_ring, points_equal


@dataclass
class Outcome:
    status: str  # "pass", "fail" or "skip"
    inputs: dict = field(default_factory=dict)
    detail: str | None = None
    info: dict = field(default_factory=dict)


SUITES = {}


def suite(name):
    def register(fn):
        SUITES[name] = fn
        return fn
    return register


def _rows_equal(a, b):
    return len(a) == len(b) and all(points_equal(x, y) for x, y in zip(a, b))


def _zeros(ring, k):
    return tuple(ring.zero for _ in range(k + 1))


def _vectors(rng, ring, n, k):
    return tuple(random_point(rng, ring, n) for _ in range(k + 1))


def _inputs(**kw):
    out = {}
    for key, value in kw.items():
        if hasattr(value, "inputs") and hasattr(value, "outputs"):
            out[key] = str(value)
        elif isinstance(value, tuple) and value and isinstance(value[0], tuple):
            out[key] = fmt_points(value)
        elif isinstance(value, tuple):
            out[key] = fmt_point(value)
        else:
            out[key] = value
    return out


def _require_exact_field(ring, name):
    if not (ring.exact and ring.is_field):
        raise ExactRingRequired(f"suite {name!r} needs an exact field (rational or zmod:<prime>)")


# -- suites ---------------------------------------------------------------------------------

@suite("chain-rule")
def chain_rule_trial(rng, ring, max_order):
    k = rng.randint(1, max_order)
    n, m, p = (rng.randint(1, 2) for _ in range(3))
    f = random_map(rng, n, m, name="f")
    g = random_map(rng, m, p, name="g")
    v = _vectors(rng, ring, n, k)
    s = random_nonsingular(rng, ring, k) if rng.random() < 0.5 else None
    if s is None:
        s = _zeros(ring, k)
    inputs = _inputs(f=f, g=g, v=v, s=s, k=k)
    engines = [jets.sj_via_ring]
    if is_nonsingular(s):
        engines.append(simplicial.sj_extension)
    try:
        for engine in engines:
            lhs, rhs = simplicial.chain_rule_sides(f, g, v, s, extension=engine)
            if not _rows_equal(lhs, rhs):
                return Outcome("fail", inputs, f"{engine.__name__}: {fmt_points(lhs)} != {fmt_points(rhs)}")
    except DomainError as exc:
        return Outcome("skip", inputs, str(exc))
    return Outcome("pass", inputs)


@suite("recursion")
def recursion_trial(rng, ring, max_order):
    k = rng.randint(1, max_order)
    n, m = rng.randint(1, 2), rng.randint(1, 2)
    f = random_map(rng, n, m)
    v = _vectors(rng, ring, n, k)
    s = random_nonsingular(rng, ring, k)
    if s is None:
        return Outcome("skip", _inputs(f=f, v=v, k=k), "no non-singular tuple of this length")
    inputs = _inputs(f=f, v=v, s=s)
    try:
        direct = simplicial.divided_difference(f, v, s)
        rec = simplicial.divided_difference_rec(f, v, s)
    except DomainError as exc:
        return Outcome("skip", inputs, str(exc))
    if not points_equal(direct, rec):
        return Outcome("fail", inputs, f"direct {fmt_point(direct)} != recursive {fmt_point(rec)}")
    return Outcome("pass", inputs)


@suite("conjugation")
def conjugation_trial(rng, ring, max_order):
    k = rng.randint(1, max_order)
    n, m = rng.randint(1, 2), rng.randint(1, 2)
    f = random_map(rng, n, m)
    v = _vectors(rng, ring, n, k)
    s = random_nonsingular(rng, ring, k)
    if s is None:
        return Outcome("skip", _inputs(f=f, v=v, k=k), "no non-singular tuple of this length")
    inputs = _inputs(f=f, v=v, s=s)
    mat = m_matrix(s)
    if not _rows_equal(mat_mul(mat, n_matrix(s)), identity_matrix(ring, k + 1)):
        return Outcome("fail", inputs, "M_s N_s != I")
    try:
        values, expanded = simplicial.limited_expansion_sides(f, v, s, simplicial.sj_extension(f, v, s))
        lifted = jets.sj_via_ring(f, v, s)
    except DomainError as exc:
        return Outcome("skip", inputs, str(exc))
    if not _rows_equal(values, expanded):
        return Outcome("fail", inputs, f"f(M_s v) = {fmt_points(values)} != M_s SJ = {fmt_points(expanded)}")
    if not _rows_equal(lifted, simplicial.sj_extension(f, v, s)):
        return Outcome("fail", inputs, "scalar extension disagrees with N_s f M_s")
    return Outcome("pass", inputs)


@suite("limited-expansion")
def limited_expansion_trial(rng, ring, max_order):
    k = rng.randint(1, max_order)
    n, m = rng.randint(1, 2), rng.randint(1, 2)
    f = random_map(rng, n, m)
    v = _vectors(rng, ring, n, k)
    s = random_tuple(rng, ring, k)
    inputs = _inputs(f=f, v=v, s=s)
    try:
        values, expanded = simplicial.limited_expansion_sides(f, v, s, jets.sj_via_ring(f, v, s))
    except DomainError as exc:
        return Outcome("skip", inputs, str(exc))
    if not _rows_equal(values, expanded):
        return Outcome("fail", inputs, f"f(M_s v) = {fmt_points(values)} != M_s jet = {fmt_points(expanded)}")
    return Outcome("pass", inputs, info={"singular": not is_nonsingular(s)})


@suite("ring-iso")
def ring_iso_trial(rng, ring, max_order):
    k = rng.randint(1, max_order)
    s = random_nonsingular(rng, ring, k)
    if s is None:
        return Outcome("skip", {"k": k}, "no non-singular tuple of this length")
    inputs = _inputs(s=s)
    b = TruncatedPolyRing.from_nodes(s)
    mat, inv = m_matrix(s), n_matrix(s)
    unit = [tuple(ring.one if i == j else ring.zero for i in range(k + 1)) for j in range(k + 1)]
    for a in range(k + 1):
        for c in range(k + 1):
            prod = b.monomial_to_c_basis(b.c_basis_to_monomial(unit[a]) * b.c_basis_to_monomial(unit[c]))
            diag = tuple(x * y for x, y in zip(_apply(mat, unit[a]), _apply(mat, unit[c])))
            if not points_equal(prod, _apply(inv, diag)):
                return Outcome("fail", inputs, f"c_{a} * c_{c} differs from the diagonal product")
    # at s = 0 the ring is K[X]/(X^{k+1})
    flat = TruncatedPolyRing(ring, [ring.zero] * k)
    x, y = random_point(rng, ring, k + 1), random_point(rng, ring, k + 1)
    series = tuple(sum((x[i] * y[d - i] for i in range(d + 1)), ring.zero) for d in range(k + 1))
    if not points_equal(flat.coords(flat.from_coords(x) * flat.from_coords(y)), series):
        return Outcome("fail", _inputs(x=x, y=y, k=k), "s = 0 product is not the truncated series product")
    return Outcome("pass", inputs)


def _apply(mat, vec):
    return tuple(sum((a * b for a, b in zip(row, vec)), vec[0].ring.zero) for row in mat)


@suite("embedding")
def embedding_trial(rng, ring, max_order):
    _require_exact_field(ring, "embedding")
    k = rng.randint(1, max_order)
    s = random_tuple(rng, ring, k) if rng.random() < 0.5 else random_nonsingular(rng, ring, k)
    if s is None:
        s = random_tuple(rng, ring, k)
    report = embed_simplicial_in_cubic(s)
    inputs = _inputs(s=s)
    if not report.match:
        return Outcome("fail", inputs,
                       f"minimal polynomial {fmt_point(report.minpoly)} != {fmt_point(report.expected)}")
    return Outcome("pass", inputs, info={"singular": not is_nonsingular(s)})


_RECIPROCAL = parse("f(x) = 1/x")


@suite("locality")
def locality_trial(rng, ring, max_order):
    k = rng.randint(1, max_order)
    f = _RECIPROCAL if rng.random() < 0.5 else random_map(rng, 1, 1, division_rate=1.0)
    v = _vectors(rng, ring, 1, k)
    inputs = _inputs(f=f, v=v, k=k)
    zeros = _zeros(ring, k)

    def plain(point):
        try:
            evaluate(f, point)
        except DomainError:
            return False
        return True

    inside = plain(v[0])
    verdicts = [jets.domain_check(f, v, zeros).ok,
                jets.domain_check(f, (v[0],) + _vectors(rng, ring, 1, k)[1:], zeros).ok]
    if any(verdict != inside for verdict in verdicts):
        return Outcome("fail", inputs, f"s = 0 verdicts {verdicts} but f defined at v0: {inside}")

    # cubic counterpart: t_i = 0, t_{i,i+1} = 1
    ck = min(k, 3)
    ts = {(i,): ring.zero for i in range(1, ck + 1)}
    ts.update({(i, i + 1): ring.one for i in range(1, ck)})
    xs = {subset_of(mk): random_point(rng, ring, 1) for mk in range(1 << ck)}
    xs[()] = v[0]
    arg = cubic.CubicArg.from_dicts(ck, xs, ts)
    if jets.cubic_domain_check(f, arg).ok != inside:
        return Outcome("fail", inputs, "cubic verdict depends on more than x_empty")

    # non-singular s: a point other than v0 may leave the domain
    s = random_nonsingular(rng, ring, 1)
    if f is _RECIPROCAL and inside and s is not None:
        step = s[1] - s[0]
        v1 = (-(v[0][0] * step.inverse()),)
        if jets.domain_check(f, (v[0], v1), s).ok:
            return Outcome("fail", _inputs(v=(v[0], v1), s=s), "p_1 = 0 was not rejected")
    return Outcome("pass", inputs)


@suite("cubic-functor")
def cubic_functor_trial(rng, ring, max_order):
    k = rng.randint(1, min(max_order, 3))
    n, m, p = (rng.randint(1, 2) for _ in range(3))
    f = random_map(rng, n, m, name="f", division_rate=0.2)
    g = random_map(rng, m, p, name="g", division_rate=0.2)
    xs = tuple(random_point(rng, ring, n) for _ in range(1 << k))
    ts = (None,) + tuple(random_scalar(rng, ring) for _ in range((1 << k) - 1))
    arg = cubic.CubicArg(k, xs, ts)
    inputs = _inputs(f=f, g=g, x=xs, t=ts[1:])
    gf = g.compose(f)
    try:
        ring_lhs = jets.t_via_ring(gf, arg)
        ring_rhs = jets.t_via_ring(g, cubic.CubicArg(k, jets.t_via_ring(f, arg), ts))
    except DomainError as exc:
        return Outcome("skip", inputs, str(exc))
    if not _rows_equal(ring_lhs, ring_rhs):
        return Outcome("fail", inputs, "T(g o f) != T(g) o T(f) by scalar extension")
    try:
        lhs = cubic.t_extension(gf, arg)
        rhs = cubic.t_extension(g, cubic.CubicArg(k, cubic.t_extension(f, arg), ts))
    except (DomainError, NonsingularRequired):
        return Outcome("pass", inputs, info={"finite_difference": False})
    if not _rows_equal(lhs, rhs):
        return Outcome("fail", inputs, "T(g o f) != T(g) o T(f) by difference quotients")
    if not _rows_equal(lhs, ring_lhs):
        return Outcome("fail", inputs, "difference quotients disagree with scalar extension")
    return Outcome("pass", inputs, info={"finite_difference": True})


@suite("sign-determination")
def sign_trial(rng, ring, max_order):
    _require_exact_field(ring, "sign-determination")
    observed = {}
    inputs = {}
    for k in range(1, min(max_order, 3) + 1):
        n, m = rng.randint(1, 2), rng.randint(1, 2)
        f = random_map(rng, n, m)
        v = _vectors(rng, ring, n, k)
        s = random_nonsingular(rng, ring, k)
        if s is None:
            continue
        inputs[str(k)] = _inputs(f=f, v=v, s=s)
        try:
            simplicial_value = simplicial.divided_difference(f, v, s)
            cubic_value = cubic.diff_quotient_k(f, cubic.embed_args(v, s))
        except (DomainError, NonsingularRequired):
            continue
        if all(ring.is_zero(a) for a in simplicial_value) and all(ring.is_zero(a) for a in cubic_value):
            continue
        if points_equal(cubic_value, simplicial_value):
            sign = 1
        elif points_equal(tuple(-a for a in cubic_value), simplicial_value):
            sign = -1
        else:
            return Outcome("fail", inputs[str(k)], f"order {k}: no sign relates the two values")
        observed[k] = sign
        if sign != cubic.SIGNS[k]:
            return Outcome("fail", inputs[str(k)], f"order {k}: sign {sign:+d} contradicts {cubic.SIGNS[k]:+d}",
                           info={"signs": observed})
    if not observed:
        return Outcome("skip", inputs, "no informative instance")
    return Outcome("pass", inputs, info={"signs": observed})


@suite("cubic-tower")
def cubic_tower_trial(rng, ring, max_order):
    k = rng.randint(1, min(max_order, 3))
    t = {subset_of(mk): random_scalar(rng, ring) for mk in range(1, 1 << k)}
    alg = CubicAlgebra(ring, k, t)
    inputs = {"k": k, "t": {subset_label(key): fmt(val) for key, val in t.items()}}
    if alg.structure_constants() != alg.structure_constants_via_tower():
        return Outcome("fail", inputs, "direct and tower structure constants differ")
    exps = tuple(rng.randint(0, 3) for _ in range(k))
    if alg.reduce_monomial(exps, "high") != alg.reduce_monomial(exps, rng):
        return Outcome("fail", dict(inputs, monomial=list(exps)), "rewrite order changes the normal form")
    return Outcome("pass", inputs)


# -- running ------------------------------------------------------------------------------------

def run_trial(name, ring_desc, seed, trial, max_order):
    if name not in SUITES:
        raise UnknownSuite(name)
    ring = parse_ring(ring_desc)
    return SUITES[name](trial_rng(seed, name, trial), ring, max_order)


def _run_trial_args(args):
    return run_trial(*args)


def run_suite(name, ring_desc="rational", trials=100, seed=0, max_order=3, workers=1):
    """Run ``trials`` trials and aggregate them into a JSON-ready report."""
    if name not in SUITES:
        raise UnknownSuite(name)
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    ring = parse_ring(ring_desc)
    tasks = [(name, ring_desc, seed, i, max_order) for i in range(trials)]
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_trial_args, tasks, chunksize=max(1, trials // (4 * workers))))
    else:
        outcomes = [run_trial(*task) for task in tasks]
    counts = {"pass": 0, "fail": 0, "skip": 0}
    first = None
    for i, out in enumerate(outcomes):
        counts[out.status] += 1
        if out.status == "fail" and first is None:
            first = {"trial": i, "inputs": out.inputs, "detail": out.detail}
    report = {
        "suite": name,
        "ring": ring.descriptor,
        "trials": trials,
        "seed": seed,
        "max_order": max_order,
        "passed": counts["pass"],
        "failed": counts["fail"],
        "skipped": counts["skip"],
        "ok": counts["fail"] == 0 and counts["pass"] > 0,
        "counterexample": first,
    }
    if name == "sign-determination":
        report["sigma"] = _sign_summary(outcomes)
        report["ok"] = report["ok"] and all(v is not None for v in report["sigma"].values())
    return report


def _sign_summary(outcomes):
    seen = {}
    for out in outcomes:
        for k, sign in out.info.get("signs", {}).items():
            seen.setdefault(k, set()).add(sign)
    return {str(k): (f"{next(iter(v)):+d}" if len(v) == 1 else None) for k, v in sorted(seen.items())}
