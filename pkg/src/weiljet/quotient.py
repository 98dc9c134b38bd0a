"""Finite free algebras over a base ring: truncated polynomial rings and cubic algebras.

``TruncatedPolyRing`` is K[X]/(X(X - s_1)...(X - s_k)), stored in the monomial
basis 1, X, ..., X^k.  ``CubicAlgebra`` is K[X_1..X_k] modulo the triangular
relations

    X_i^2 = sum over J in {1..i-1} of t_{J u {i}} X_J X_i,

with basis X_J indexed by subsets J of {1..k}.  Inside a cubic algebra a
subset is a bitmask (bit i-1 <-> X_i); the public API speaks sorted tuples.
Both are :class:`~weiljet.rings.Ring` subclasses, so expressions evaluate
over them unchanged.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .errors import ExactRingRequired, NonsingularRequired, NotInvertible, OwnerMismatch
from .rings import Ring, RingElement


# -- subsets ------------------------------------------------------------------------

def mask_of(subset):
    m = 0
    for i in subset:
        if i < 1:
            raise ValueError(f"subset indices start at 1, got {i}")
        m |= 1 << (i - 1)
    return m


def subset_of(mask):
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def subsets(k):
    """All subsets of {1..k} as sorted tuples, in bitmask order."""
    return [subset_of(m) for m in range(1 << k)]


def subset_label(subset):
    return ",".join(str(i) for i in subset)


def parse_subset(label):
    label = label.strip()
    if not label:
        return ()
    if "," in label:
        return tuple(sorted(int(p) for p in label.split(",")))
    return tuple(sorted(int(ch) for ch in label))


def reverse_subset(subset, k):
    return tuple(sorted(k + 1 - i for i in subset))


# -- linear algebra over the base -------------------------------------------------

def _solve(base, matrix, rhs):
    """Solve ``matrix @ y = rhs`` over a field; ``None`` if singular."""
    n = len(matrix)
    a = [list(row) + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        candidates = [r for r in range(col, n) if base.try_invert(a[r][col]) is not None]
        if not candidates:
            return None
        if base.exact:
            piv = candidates[0]
        else:
            piv = max(candidates, key=lambda r: abs(a[r][col].value))
        a[col], a[piv] = a[piv], a[col]
        inv = base.try_invert(a[col][col])
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and not base.is_zero(a[r][col]):
                c = a[r][col]
                a[r] = [x - c * y for x, y in zip(a[r], a[col])]
    return [row[n] for row in a]


def charpoly(base, matrix):
    """Coefficients [1, p_1, ..., p_n] of det(lambda I - A), division free (Berkowitz)."""
    n = len(matrix)
    if n == 0:
        return [base.one]
    # process trailing principal submatrices, growing from the bottom-right corner
    poly = [base.one, -matrix[n - 1][n - 1]]
    for size in range(2, n + 1):
        top = n - size
        a = matrix[top][top]
        row = [matrix[top][j] for j in range(top + 1, n)]
        col = [matrix[i][top] for i in range(top + 1, n)]
        sub = [[matrix[i][j] for j in range(top + 1, n)] for i in range(top + 1, n)]
        t = [base.one, -a]
        vec = col
        for _ in range(size - 1):
            t.append(-sum((r * v for r, v in zip(row, vec)), base.zero))
            vec = [sum((s * v for s, v in zip(srow, vec)), base.zero) for srow in sub]
        # lower-triangular Toeplitz (size+1) x size, times previous poly
        poly = [sum((t[i - j] * poly[j] for j in range(0, min(i, size - 1) + 1)), base.zero)
                for i in range(size + 1)]
    return poly


class FreeAlgebra(Ring):
    """Commutative algebra that is a free module of rank ``dim`` over ``base``.

    Payloads are tuples of base elements; coordinate 0 is the unit.
    """

    def __init__(self, base, dim):
        if not isinstance(base, Ring):
            raise TypeError("base must be a Ring")
        self.base = base
        self.dim = dim
        self.exact = base.exact

    def _canon(self, value):
        value = tuple(self.base(v) for v in value)
        if len(value) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(value)}")
        return value

    def _from_int(self, n):
        zero = self.base.zero
        return (self.base.from_int(n),) + (zero,) * (self.dim - 1)

    def _add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def _sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def _neg(self, x):
        return tuple(-a for a in x)

    def _eq(self, x, y):
        return all(a == b for a, b in zip(x, y))

    def _is_zero(self, x):
        return all(self.base.is_zero(a) for a in x)

    def _hash(self, x):
        return hash(x)

    def _format(self, x):
        return "[" + ", ".join(self.base.format(a) for a in x) + "]"

    def from_coords(self, coords):
        return self.element(coords)

    def coords(self, z):
        return self.check(z).value

    def unit_vector(self, i):
        zero, one = self.base.zero, self.base.one
        return tuple(one if j == i else zero for j in range(self.dim))

    def multiplication_matrix(self, z):
        """Matrix of ``w -> z*w`` in the stored basis (column j = z * basis_j)."""
        cols = [self._mul(self.coords(z), self.unit_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def _inv(self, x):
        z = RingElement(self, x)
        mat = self.multiplication_matrix(z)
        if self.base.is_field:
            y = _solve(self.base, mat, self.unit_vector(0))
            return None if y is None else tuple(y)
        # Cayley-Hamilton: z * (z^{n-1} + p_1 z^{n-2} + ... + p_{n-1}) = -p_n
        poly = charpoly(self.base, mat)
        last = self.base.try_invert(poly[-1])
        if last is None:
            return None
        acc = self.one
        for c in poly[1:-1]:
            acc = acc * z + self.scalar(c)
        return (acc * self.scalar(-last)).value

    def scalar(self, c):
        """Embed a base element as a constant."""
        c = self.base(c)
        return self.element((c,) + (self.base.zero,) * (self.dim - 1))


# -- truncated polynomial rings ----------------------------------------------------

def _poly_mul(base, p, q):
    out = [base.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if base.is_zero(a):
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def _poly_from_roots(base, roots):
    poly = [base.one]
    for r in roots:
        poly = _poly_mul(base, poly, [-r, base.one])
    return poly


def _poly_eval(poly, x):
    acc = x.ring.zero
    for c in reversed(poly):
        acc = acc * x + c
    return acc


class TruncatedPolyRing(FreeAlgebra):
    """K[X]/(X (X - s_1) ... (X - s_k)) with ``shifts = (s_1, ..., s_k)``.

    Use :meth:`from_nodes` to build it from a full tuple ``(s_0, ..., s_k)``;
    the nodes are then shifted so that ``s_0 = 0``.
    """

    def __init__(self, base, shifts):
        shifts = tuple(base(s) for s in shifts)
        if not shifts:
            raise ValueError("need k >= 1 shifts")
        super().__init__(base, len(shifts) + 1)
        self.k = len(shifts)
        self.shifts = shifts
        self.nodes = (base.zero,) + shifts
        self.modulus = _poly_from_roots(base, self.nodes)

    @classmethod
    def from_nodes(cls, nodes):
        nodes = tuple(nodes)
        return cls(nodes[0].ring, [s - nodes[0] for s in nodes[1:]])

    def _key(self):
        return (self.base, self.shifts)

    @property
    def descriptor(self):
        return {"type": "bpoly", "s": [self.base.format(s) for s in self.nodes]}

    def __repr__(self):
        return f"B[{self.base!r}; s=({', '.join(map(str, self.nodes))})]"

    def _mul(self, x, y):
        prod = _poly_mul(self.base, x, y)
        deg = self.k + 1
        for d in range(len(prod) - 1, deg - 1, -1):
            c = prod[d]
            if self.base.is_zero(c):
                continue
            for i, m in enumerate(self.modulus):
                prod[d - deg + i] = prod[d - deg + i] - c * m
        return tuple(prod[:deg]) + (self.base.zero,) * (deg - len(prod[:deg]))

    @property
    def X(self):
        return self.element(self.unit_vector(1))

    def evaluate_at(self, z, x):
        """Value of the representative polynomial of ``z`` at ``x``."""
        return _poly_eval(self.coords(z), x)

    def c_basis(self):
        """The classes c_j = X (X - s_1) ... (X - s_{j-1}), c_0 = 1, as elements."""
        out = []
        poly = [self.base.one]
        for j in range(self.k + 1):
            out.append(self.from_coords(poly + [self.base.zero] * (self.dim - len(poly))))
            poly = _poly_mul(self.base, poly, [-self.nodes[j], self.base.one])
        return out

    def c_basis_to_monomial(self, coords):
        """Element sum_j coords[j] c_j (Newton form, evaluated by Horner)."""
        coords = [self.base(c) for c in coords]
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        poly = [coords[-1]]
        for j in range(self.k - 1, -1, -1):
            # poly <- coords[j] + (X - s_j) * poly
            poly = _poly_mul(self.base, poly, [-self.nodes[j], self.base.one])
            poly[0] = poly[0] + coords[j]
        return self.from_coords(poly + [self.base.zero] * (self.dim - len(poly)))

    def monomial_to_c_basis(self, z):
        """Newton coordinates of ``z``: repeated synthetic division by X - s_j."""
        poly = list(self.coords(z))
        out = []
        for node in self.nodes:
            value = _poly_eval(poly, node)
            out.append(value)
            d = len(poly) - 1
            if d == 0:
                poly = [self.base.zero]
                continue
            # (poly - value) / (X - node), exact since node is a root of it
            q = [None] * d
            q[d - 1] = poly[d]
            for i in range(d - 1, 0, -1):
                q[i - 1] = poly[i] + q[i] * node
            poly = q
        return tuple(out)

    def idempotent_basis(self):
        """Lagrange idempotents E_i with E_i(s_j) = delta_ij (needs non-singular nodes)."""
        check_nonsingular(self.nodes)
        out = []
        for i, si in enumerate(self.nodes):
            poly = [self.base.one]
            for j, sj in enumerate(self.nodes):
                if j != i:
                    inv = (si - sj).inverse()
                    poly = _poly_mul(self.base, poly, [-sj * inv, inv])
            out.append(self.from_coords(poly))
        return out

    def structure_constants(self):
        """Nonzero products X^i * X^j = sum_l g X^l as {(i, j, l): g}."""
        table = {}
        for i in range(self.dim):
            for j in range(self.dim):
                prod = self._mul(self.unit_vector(i), self.unit_vector(j))
                for l, g in enumerate(prod):
                    if not self.base.is_zero(g):
                        table[i, j, l] = g
        return table


# -- scalar tuples and the change-of-variables matrices -----------------------------------

def is_nonsingular(s):
    s = tuple(s)
    return all(s[i].ring.try_invert(s[i] - s[j]) is not None
               for i in range(len(s)) for j in range(i + 1, len(s)))


def check_nonsingular(s):
    s = tuple(s)
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i].ring.try_invert(s[i] - s[j]) is None:
                raise NonsingularRequired(
                    f"s_{i} - s_{j} = {s[i] - s[j]} is not invertible in {s[i].ring}")
    return s


def m_matrix(s):
    """Lower triangular M_s with entry (i, j) = prod_{l<j} (s_i - s_l)."""
    s = tuple(s)
    ring = s[0].ring
    n = len(s)
    rows = []
    for i in range(n):
        row, acc = [], ring.one
        for j in range(n):
            if j <= i:
                row.append(acc)
                acc = acc * (s[i] - s[j])
            else:
                row.append(ring.zero)
        rows.append(tuple(row))
    return tuple(rows)


def n_matrix(s):
    """Inverse of M_s: entry (i, j) = 1 / prod_{m <= i, m != j} (s_j - s_m) for j <= i."""
    s = check_nonsingular(s)
    ring = s[0].ring
    n = len(s)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j > i:
                row.append(ring.zero)
                continue
            den = ring.one
            for m in range(i + 1):
                if m != j:
                    den = den * (s[j] - s[m])
            row.append(den.inverse())
        rows.append(tuple(row))
    return tuple(rows)


def mat_mul(a, b):
    ring = a[0][0].ring
    return tuple(tuple(sum((a[i][l] * b[l][j] for l in range(len(b))), ring.zero)
                       for j in range(len(b[0]))) for i in range(len(a)))


def identity_matrix(ring, n):
    return tuple(tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n))


def apply_matrix(mat, rows):
    """Apply a scalar matrix to a tuple of points (rowwise linear combination)."""
    out = []
    for mrow in mat:
        acc = None
        for c, p in zip(mrow, rows):
            term = tuple(c * x for x in p)
            acc = term if acc is None else tuple(a + b for a, b in zip(acc, term))
        out.append(acc)
    return tuple(out)


# -- the rank-2 ring K_t = K[w]/(w^2 - t w) ------------------------------------------------

def _kt_parts(z):
    ring = z.ring
    if not isinstance(ring, TruncatedPolyRing) or ring.k != 1:
        raise OwnerMismatch(f"expected an element of K[w]/(w^2 - t w), got {ring}")
    a, b = ring.coords(z)
    return ring, a, b, ring.shifts[0]


def kt_trace(z):
    _, a, b, t = _kt_parts(z)
    return 2 * a + t * b


def kt_det(z):
    _, a, b, t = _kt_parts(z)
    return a * a + t * a * b


def kt_conjugate(z):
    ring, a, b, t = _kt_parts(z)
    return ring.from_coords((a + b * t, -b))


def kt_invert(z):
    """conj(z) / det(z); raises NotInvertible when det(z) is not a unit."""
    ring, *_ = _kt_parts(z)
    d = kt_det(z)
    inv = ring.base.try_invert(d)
    if inv is None:
        raise NotInvertible(z, f"{z} is not invertible: det = {d}")
    return kt_conjugate(z) * ring.scalar(inv)


# -- cubic algebras ------------------------------------------------------------------

class CubicAlgebra(FreeAlgebra):
    """The 2^k dimensional algebra A_k^(t).

    ``t`` maps non-empty subsets of {1..k} (tuples) to base elements; missing
    entries are zero.
    """

    def __init__(self, base, k, t=None):
        if k < 1:
            raise ValueError("k must be at least 1")
        super().__init__(base, 1 << k)
        self.k = k
        params = [base.zero] * (1 << k)
        for subset, value in (t or {}).items():
            m = mask_of(subset) if not isinstance(subset, int) else subset
            if m == 0 or m >= 1 << k:
                raise ValueError(f"parameter index {subset} out of range for k={k}")
            params[m] = base(value)
        self.params = tuple(params)

    def _key(self):
        return (self.base, self.k, self.params)

    def t(self, subset):
        return self.params[mask_of(subset)]

    @property
    def descriptor(self):
        return {"type": "cubic", "k": self.k,
                "t": {subset_label(subset_of(m)): self.base.format(self.params[m])
                      for m in range(1, 1 << self.k)}}

    def __repr__(self):
        return f"A[{self.base!r}; k={self.k}]"

    def basis(self, subset):
        return self.element(self.unit_vector(mask_of(subset)))

    def gen(self, i):
        return self.basis((i,))

    def reduce_monomial(self, exponents, order="high"):
        """Normal form of X_1^e_1 ... X_k^e_k as {mask: coefficient}.

        ``order`` picks which squared variable is rewritten first: ``"high"``,
        ``"low"``, or a ``random.Random`` instance for a random choice.
        """
        base = self.base
        pending = {tuple(exponents): base.one}
        done = {}
        while pending:
            exps, coeff = pending.popitem()
            squared = [i for i, e in enumerate(exps) if e >= 2]
            if not squared:
                m = sum(1 << i for i, e in enumerate(exps) if e)
                done[m] = done[m] + coeff if m in done else coeff
                continue
            if order == "high":
                i = squared[-1]
            elif order == "low":
                i = squared[0]
            else:
                i = order.choice(squared)
            for low in range(1 << i):
                tv = self.params[low | (1 << i)]
                if base.is_zero(tv):
                    continue
                new = list(exps)
                new[i] -= 1
                for j in range(i):
                    if low >> j & 1:
                        new[j] += 1
                new = tuple(new)
                c = coeff * tv
                pending[new] = pending[new] + c if new in pending else c
        return {m: c for m, c in done.items() if not base.is_zero(c)}

    @cached_property
    def gamma(self):
        """gamma[J][K] = {L: coefficient} for basis masks J, K."""
        n = self.dim
        table = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(a, n):
                exps = tuple((a >> i & 1) + (b >> i & 1) for i in range(self.k))
                table[a][b] = table[b][a] = self.reduce_monomial(exps)
        return table

    def structure_constants(self):
        """Nonzero Gamma^{JK}_L as {(J, K, L): value} with subsets as tuples."""
        out = {}
        for a in range(self.dim):
            for b in range(self.dim):
                for l, g in sorted(self.gamma[a][b].items()):
                    out[subset_of(a), subset_of(b), subset_of(l)] = g
        return out

    def _mul(self, x, y):
        base = self.base
        res = list(self.unit_vector(0))
        res[0] = base.zero
        gamma = self.gamma
        for a, xa in enumerate(x):
            if base.is_zero(xa):
                continue
            for b, yb in enumerate(y):
                if base.is_zero(yb):
                    continue
                c = xa * yb
                for l, g in gamma[a][b].items():
                    res[l] = res[l] + c * g
        return tuple(res)

    def tower_product(self, x, y):
        """Product computed through the quadratic tower A_{k-1}[X_k]/(X_k^2 - t' X_k)."""
        return tuple(_tower_mul(self.base, self.params, self.k, list(x), list(y)))

    def structure_constants_via_tower(self):
        out = {}
        for a in range(self.dim):
            for b in range(self.dim):
                prod = self.tower_product(self.unit_vector(a), self.unit_vector(b))
                for l, g in enumerate(prod):
                    if not self.base.is_zero(g):
                        out[subset_of(a), subset_of(b), subset_of(l)] = g
        return out


def _tower_mul(base, params, k, x, y):
    if k == 0:
        return [x[0] * y[0]]
    half = 1 << (k - 1)
    x0, x1, y0, y1 = x[:half], x[half:], y[:half], y[half:]
    # t' in A_{k-1}: coordinate J carries t_{J u {k}}
    tprime = [params[m | half] for m in range(half)]
    low = _tower_mul(base, params, k - 1, x0, y0)
    cross = [a + b for a, b in zip(_tower_mul(base, params, k - 1, x0, y1),
                                   _tower_mul(base, params, k - 1, x1, y0))]
    sq = _tower_mul(base, params, k - 1, _tower_mul(base, params, k - 1, x1, y1), tprime)
    return low + [a + b for a, b in zip(cross, sq)]


# -- embedding of B^s_k into A_k^(t(s)) ------------------------------------------------

def embedding_parameters(s):
    """Parameters t(s) for which X_k generates a copy of B^s_k inside A_k^(t(s)).

    t_{j} = s_{k-j+1} - s_{k-j} (j = 1..k, after shifting s_0 to 0),
    t_{i,i+1} = 1, all other t_J = 0.
    """
    s = tuple(s)
    ring = s[0].ring
    s = tuple(x - s[0] for x in s)
    k = len(s) - 1
    t = {}
    for j in range(1, k + 1):
        t[(j,)] = s[k - j + 1] - s[k - j]
    for i in range(1, k):
        t[(i, i + 1)] = ring.one
    return t


@dataclass(frozen=True)
class EmbeddingReport:
    algebra: CubicAlgebra
    t: dict
    minpoly: tuple
    expected: tuple
    match: bool


def embed_simplicial_in_cubic(s):
    s = tuple(s)
    if len(s) < 2:
        raise ValueError("need at least s_0, s_1")
    ring = s[0].ring
    k = len(s) - 1
    t = embedding_parameters(s)
    alg = CubicAlgebra(ring, k, t)
    shifted = [x - s[0] for x in s]
    expected = tuple(_poly_from_roots(ring, shifted))
    minpoly = tuple(minimal_polynomial(alg.gen(k)))
    match = len(minpoly) == len(expected) and all(a == b for a, b in zip(minpoly, expected))
    return EmbeddingReport(alg, t, minpoly, expected, match)


def minimal_polynomial(z):
    """Monic least-degree P (coefficients low to high) with P(z) = 0.

    Only over fields: Q or Z/p.
    """
    ring = z.ring
    if not isinstance(ring, FreeAlgebra):
        raise TypeError("minimal_polynomial needs an element of a finite free algebra")
    base = ring.base
    if not (base.exact and base.is_field):
        raise ExactRingRequired(f"minimal polynomials need an exact field base, got {base}")
    echelon = []  # (pivot, vector, combination)
    power = ring.one
    for n in range(ring.dim + 1):
        vec = list(ring.coords(power))
        comb = [base.zero] * n + [base.one]
        for piv, rvec, rcomb in echelon:
            c = vec[piv]
            if base.is_zero(c):
                continue
            vec = [a - c * b for a, b in zip(vec, rvec)]
            comb = [a - c * b for a, b in zip(comb, rcomb + [base.zero] * (len(comb) - len(rcomb)))]
        nonzero = [i for i, a in enumerate(vec) if not base.is_zero(a)]
        if not nonzero:
            return comb
        piv = nonzero[0]
        inv = vec[piv].inverse()
        echelon.append((piv, [a * inv for a in vec], [a * inv for a in comb]))
        power = power * z
    raise AssertionError("powers exceeded the algebra dimension")  # pragma: no cover


def random_order(seed):
    """A reproducible random rewrite order for :meth:`CubicAlgebra.reduce_monomial`."""
    return random.Random(seed)
