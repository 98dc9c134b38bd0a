"""A small ring-generic expression language for maps K^n -> K^m.

Grammar::

    map     := name "(" ident ("," ident)* ")" "=" expr ("," expr)*
    expr    := term (("+"|"-") term)*
    term    := factor (("*"|"/") factor)*
    factor  := ("-")? base ("^" natural)?
    base    := natural | ident | "(" expr ")"

Constants are natural numbers and enter every ring through its canonical
image of the integers, so one parsed map evaluates over the rationals, over
Z/m, over floats, and over any of the quotient algebras alike.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ArityMismatch, DomainError, OwnerMismatch, ParseError
from .rings import RingElement


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: object
    right: object


def Add(a, b):
    return BinOp("+", a, b)


def Sub(a, b):
    return BinOp("-", a, b)


def Mul(a, b):
    return BinOp("*", a, b)


def Div(a, b):
    return BinOp("/", a, b)


def variables(node):
    """Set of variable names occurring in ``node``."""
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Num):
        return set()
    if isinstance(node, (Neg, Pow)):
        return variables(node.operand if isinstance(node, Neg) else node.base)
    return variables(node.left) | variables(node.right)


def count_divisions(node):
    if isinstance(node, (Num, Var)):
        return 0
    if isinstance(node, Neg):
        return count_divisions(node.operand)
    if isinstance(node, Pow):
        return count_divisions(node.base)
    return (node.op == "/") + count_divisions(node.left) + count_divisions(node.right)


def substitute(node, env):
    """Replace variables by the ASTs in ``env``."""
    if isinstance(node, Var):
        return env.get(node.name, node)
    if isinstance(node, Num):
        return node
    if isinstance(node, Neg):
        return Neg(substitute(node.operand, env))
    if isinstance(node, Pow):
        return Pow(substitute(node.base, env), node.exponent)
    return BinOp(node.op, substitute(node.left, env), substitute(node.right, env))


# -- printing -----------------------------------------------------------------

def _is_base(node):
    return isinstance(node, (Num, Var))


def to_source(node):
    """Render ``node`` with the minimal parentheses the grammar needs.

    ``parse`` inverts this exactly, so printing is idempotent.
    """
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Pow):
        base = to_source(node.base)
        if not _is_base(node.base):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Neg):
        inner = to_source(node.operand)
        if not (_is_base(node.operand) or isinstance(node.operand, Pow)):
            inner = f"({inner})"
        return f"-{inner}"
    left, right = to_source(node.left), to_source(node.right)
    if node.op in "+-":
        if isinstance(node.right, BinOp) and node.right.op in "+-":
            right = f"({right})"
        return f"{left} {node.op} {right}"
    if isinstance(node.left, BinOp) and node.left.op in "+-":
        left = f"({left})"
    if isinstance(node.right, BinOp):
        right = f"({right})"
    return f"{left}{node.op}{right}"


# -- maps -----------------------------------------------------------------------

@dataclass(frozen=True)
class MapExpr:
    """A parsed map ``name(inputs) = outputs``.  Calling it evaluates it."""

    inputs: tuple
    outputs: tuple
    name: str = "f"

    def __post_init__(self):
        if len(set(self.inputs)) != len(self.inputs):
            raise ValueError(f"duplicate input names in {self.inputs}")
        known = set(self.inputs)
        for out in self.outputs:
            missing = variables(out) - known
            if missing:
                raise ValueError(f"output references unknown variables {sorted(missing)}")

    @property
    def arity(self):
        return len(self.inputs)

    @property
    def dim(self):
        return len(self.outputs)

    def __str__(self):
        outs = ", ".join(to_source(o) for o in self.outputs)
        return f"{self.name}({', '.join(self.inputs)}) = {outs}"

    def __call__(self, point):
        return evaluate(self, point)

    def compose(self, inner):
        """The map ``self o inner``."""
        if self.arity != inner.dim:
            raise ArityMismatch(f"cannot compose: {self.arity} inputs vs {inner.dim} outputs")
        env = dict(zip(self.inputs, inner.outputs))
        return MapExpr(inner.inputs, tuple(substitute(o, env) for o in self.outputs), self.name)


def identity_map(n=1):
    names = tuple(f"x{i}" for i in range(n)) if n > 1 else ("x",)
    return MapExpr(names, tuple(Var(v) for v in names), "f")


# -- evaluation -------------------------------------------------------------------

def evaluate(f, point):
    """Evaluate ``f`` at ``point`` (a sequence of elements of one ring).

    Raises :class:`DomainError` when a denominator is not invertible.
    """
    point = tuple(point)
    if len(point) != f.arity:
        raise ArityMismatch(f"{f.name} takes {f.arity} arguments, got {len(point)}")
    if not point:
        raise ArityMismatch("cannot evaluate a map without inputs")
    ring = point[0].ring if isinstance(point[0], RingElement) else None
    if ring is None:
        raise TypeError("point coordinates must be ring elements")
    for c in point:
        ring.check(c)
    env = dict(zip(f.inputs, point))
    return tuple(_eval(out, env, ring) for out in f.outputs)


def _eval(node, env, ring):
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Num):
        return ring.from_int(node.value)
    if isinstance(node, Neg):
        return -_eval(node.operand, env, ring)
    if isinstance(node, Pow):
        return _eval(node.base, env, ring) ** node.exponent
    a = _eval(node.left, env, ring)
    b = _eval(node.right, env, ring)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    inv = ring.try_invert(b)
    if inv is None:
        raise DomainError(
            f"denominator {to_source(node.right)} = {b} is not invertible in {ring}",
            witness=to_source(node.right), value=b)
    return a * inv


def as_callable(f):
    """Normalize a map argument: MapExpr or any callable point -> point."""
    if isinstance(f, MapExpr):
        return f
    if callable(f):
        return lambda p: tuple(f(tuple(p)))
    raise TypeError(f"not a map: {f!r}")


# -- parsing ------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^(),=]))")


class _Parser:
    def __init__(self, source):
        self.source = source
        self.tokens = []
        pos = 0
        src = source
        while True:
            m = _TOKEN.match(src, pos)
            if m is None or m.end() == pos:
                rest = src[pos:]
                if rest.strip() == "":
                    break
                start = pos + len(rest) - len(rest.lstrip())
                raise ParseError(f"unexpected character {src[start]!r}", self._bytes(start))
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.tokens.append(("end", "", len(src)))
        self.i = 0

    def _bytes(self, index):
        return len(self.source[:index].encode("utf-8"))

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, expected, what=None):
        kind, text, pos = self.tok
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(what or f"unexpected {found}", self._bytes(pos), expected)

    def expect(self, text):
        if self.tok[1] != text or self.tok[0] == "end":
            self.fail({repr(text)})
        self.i += 1

    def map(self):
        if self.tok[0] != "ident":
            self.fail({"identifier"})
        name = self.tok[1]
        self.i += 1
        self.expect("(")
        inputs = [self.ident()]
        while self.tok[1] == ",":
            self.i += 1
            inputs.append(self.ident())
        self.expect(")")
        self.expect("=")
        self.known = {}
        for v in inputs:
            if v[0] in self.known:
                raise ParseError(f"duplicate input {v[0]!r}", self._bytes(v[1]))
            self.known[v[0]] = v[1]
        outputs = [self.expr()]
        while self.tok[1] == ",":
            self.i += 1
            outputs.append(self.expr())
        if self.tok[0] != "end":
            expected = {"'+'", "'-'", "'*'", "'/'", "','", "end of input"}
            if self.tokens[self.i - 2][1] != "^":
                expected.add("'^'")
            self.fail(expected)
        return MapExpr(tuple(v[0] for v in inputs), tuple(outputs), name)

    def ident(self):
        kind, text, pos = self.tok
        if kind != "ident":
            self.fail({"identifier"})
        self.i += 1
        return text, pos

    def expr(self):
        node = self.term()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            op = self.tok[1]
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok[0] == "op" and self.tok[1] in "*/":
            op = self.tok[1]
            self.i += 1
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        negate = False
        if self.tok[1] == "-" and self.tok[0] == "op":
            negate = True
            self.i += 1
        node = self.base()
        if self.tok[1] == "^" and self.tok[0] == "op":
            self.i += 1
            if self.tok[0] != "num":
                self.fail({"natural number"})
            node = Pow(node, int(self.tok[1]))
            self.i += 1
        return Neg(node) if negate else node

    def base(self):
        kind, text, pos = self.tok
        if kind == "num":
            self.i += 1
            return Num(int(text))
        if kind == "ident":
            if text not in self.known:
                raise ParseError(f"unknown variable {text!r}", self._bytes(pos),
                                 {repr(v) for v in self.known})
            self.i += 1
            return Var(text)
        if text == "(" and kind == "op":
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        self.fail({"natural number", "identifier", "'('"})


def parse(source):
    """Parse a map definition such as ``"f(x, y) = x*y + 3/y"``."""
    return _Parser(source).map()
