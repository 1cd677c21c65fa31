"""Polynomial values over GF(q): expression parsing, evaluation,
composition, reduction modulo x^q - x, Lagrange interpolation, and
linearized-polynomial inversion.

Expression grammar (whitespace insignificant)::

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' int)?
    base   := int | 'x' | 'Tr' '{' int '}' '(' expr ')' | '(' expr ')'
    int    := '-'? [0-9]+

Integer constants denote elements by packed index; a negative constant is
the additive inverse of its absolute value.  A negative exponent ``-k`` is
sugar for the exponent ``(q-1-(k mod (q-1))) mod (q-1)``, which bakes the
0^-1 = 0 convention into the resulting polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import (BadTraceDegree, ConstantOutOfRange, CtxMismatch,
                     LengthMismatch, PolySyntaxError, Singular)
from .gf_core import FieldCtx


@dataclass(frozen=True)
class PolyFq:
    """Dense polynomial over F_q: coefficients low-to-high, trailing zeros
    trimmed.  After :func:`reduce_mod_field` the degree is below q."""

    ctx: FieldCtx
    coeffs: tuple

    def __repr__(self):
        return f"PolyFq({print_poly(self)!r})"

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def make_poly(ctx: FieldCtx, coeffs: Sequence[int]) -> PolyFq:
    cs = list(coeffs)
    for c in cs:
        if not 0 <= c < ctx.q:
            raise ValueError(f"coefficient {c} out of range for q = {ctx.q}")
    while cs and cs[-1] == 0:
        cs.pop()
    return PolyFq(ctx, tuple(cs))


def zero(ctx: FieldCtx) -> PolyFq:
    return PolyFq(ctx, ())


def constant(ctx: FieldCtx, c: int) -> PolyFq:
    return make_poly(ctx, [c])


def xvar(ctx: FieldCtx) -> PolyFq:
    return make_poly(ctx, [0, 1])


def monomial(ctx: FieldCtx, e: int, c: int = 1) -> PolyFq:
    return make_poly(ctx, [0] * e + [c])


def _require_same_ctx(a: PolyFq, b: PolyFq):
    if a.ctx != b.ctx:
        raise CtxMismatch("polynomials belong to different fields")


def poly_add(a: PolyFq, b: PolyFq) -> PolyFq:
    _require_same_ctx(a, b)
    ctx = a.ctx
    la, lb = len(a.coeffs), len(b.coeffs)
    out = []
    for i in range(max(la, lb)):
        u = a.coeffs[i] if i < la else 0
        v = b.coeffs[i] if i < lb else 0
        out.append(ctx.add(u, v))
    return make_poly(ctx, out)


def poly_sub(a: PolyFq, b: PolyFq) -> PolyFq:
    _require_same_ctx(a, b)
    ctx = a.ctx
    la, lb = len(a.coeffs), len(b.coeffs)
    out = []
    for i in range(max(la, lb)):
        u = a.coeffs[i] if i < la else 0
        v = b.coeffs[i] if i < lb else 0
        out.append(ctx.sub(u, v))
    return make_poly(ctx, out)


def poly_mul(a: PolyFq, b: PolyFq) -> PolyFq:
    _require_same_ctx(a, b)
    ctx = a.ctx
    if not a.coeffs or not b.coeffs:
        return zero(ctx)
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if ai:
            for j, bj in enumerate(b.coeffs):
                if bj:
                    out[i + j] = ctx.add(out[i + j], ctx.mul(ai, bj))
    return make_poly(ctx, out)


def _fold_exponent(e: int, q: int) -> int:
    # x^q = x on F_q, so exponents >= q fold into [1, q-1].
    return e if e < q else (e - 1) % (q - 1) + 1


def reduce_mod_field(p: PolyFq) -> PolyFq:
    """The unique degree < q polynomial with the same evaluation map."""
    q = p.ctx.q
    if len(p.coeffs) <= q:
        return make_poly(p.ctx, p.coeffs)
    acc = [0] * q
    ctx = p.ctx
    for e, c in enumerate(p.coeffs):
        if c:
            e2 = _fold_exponent(e, q)
            acc[e2] = ctx.add(acc[e2], c)
    return make_poly(ctx, acc)


def poly_pow(p: PolyFq, e: int) -> PolyFq:
    """p^e reduced mod x^q - x; e must be nonnegative (the parser rewrites
    negative exponents before calling)."""
    if e < 0:
        raise ValueError("poly_pow expects a nonnegative exponent")
    ctx = p.ctx
    if e == 0:
        return constant(ctx, 1)
    e = _fold_exponent(e, ctx.q) if e >= ctx.q else e
    acc = constant(ctx, 1)
    base = reduce_mod_field(p)
    while e:
        if e & 1:
            acc = reduce_mod_field(poly_mul(acc, base))
        e >>= 1
        if e:
            base = reduce_mod_field(poly_mul(base, base))
    return acc


def poly_frob(p: PolyFq, k: int) -> PolyFq:
    """p^(p^k) via the additive Frobenius: coefficientwise p-power and
    exponent scaling, reduced mod x^q - x.  O(deg) per application."""
    ctx = p.ctx
    out = p
    for _ in range(k):
        acc = {}
        for e, c in enumerate(out.coeffs):
            if c:
                e2 = _fold_exponent(e * ctx.p, ctx.q)
                cp = ctx.pow(c, ctx.p)
                acc[e2] = ctx.add(acc.get(e2, 0), cp)
        cs = [0] * (max(acc) + 1 if acc else 0)
        for e2, c in acc.items():
            cs[e2] = c
        out = make_poly(ctx, cs)
    return out


def eval_poly(p: PolyFq, x: int) -> int:
    """Horner evaluation (a term-by-term power path is used for very sparse
    polynomials; the value is identical)."""
    ctx = p.ctx
    coeffs = p.coeffs
    if not coeffs:
        return 0
    nonzero = [(e, c) for e, c in enumerate(coeffs) if c]
    if len(nonzero) * 6 < len(coeffs):
        acc = 0
        for e, c in nonzero:
            acc = ctx.add(acc, ctx.mul(c, ctx.pow(x, e)))
        return acc
    acc = 0
    for c in reversed(coeffs):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def tabulate(p: PolyFq) -> list:
    return [eval_poly(p, x) for x in p.ctx.elements()]


def compose(outer: PolyFq, inner: PolyFq) -> PolyFq:
    """outer(inner(x)) reduced mod x^q - x."""
    _require_same_ctx(outer, inner)
    ctx = outer.ctx
    acc = zero(ctx)
    inner = reduce_mod_field(inner)
    for c in reversed(outer.coeffs):
        acc = reduce_mod_field(poly_add(poly_mul(acc, inner), constant(ctx, c)))
    return acc


def interpolate(ctx: FieldCtx, table: Sequence[int]) -> PolyFq:
    """The unique polynomial of degree < q through a full value table
    (Lagrange with on-the-fly denominators; O(q^2))."""
    q = ctx.q
    if len(table) != q:
        raise LengthMismatch(f"table has length {len(table)}, expected q = {q}")
    for v in table:
        if not 0 <= v < q:
            raise ValueError(f"table value {v} out of range")
    # master polynomial M = x^q - x; basis numerators by synthetic division
    m = [0] * (q + 1)
    m[q] = 1
    m[1] = ctx.neg(1)
    acc = [0] * q
    for a, target in enumerate(table):
        if target == 0:
            continue
        quot = [0] * q
        quot[q - 1] = m[q]
        for k in range(q - 1, 0, -1):
            quot[k - 1] = ctx.add(m[k], ctx.mul(a, quot[k]))
        den = 0
        for c in reversed(quot):
            den = ctx.add(ctx.mul(den, a), c)
        scale = ctx.div(target, den)
        for j in range(q):
            if quot[j]:
                acc[j] = ctx.add(acc[j], ctx.mul(scale, quot[j]))
    return make_poly(ctx, acc)


def print_poly(p: PolyFq) -> str:
    """Low-to-high printed form, e.g. ``2 + x + 5*x^3``; parses back to the
    same polynomial."""
    terms = []
    for e, c in enumerate(p.coeffs):
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
            continue
        base = "x" if e == 1 else f"x^{e}"
        terms.append(base if c == 1 else f"{c}*{base}")
    return " + ".join(terms) if terms else "0"


# expression AST

@dataclass(frozen=True)
class Const:
    value: int
    pos: int = 0


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class PowNode:
    base: "ExprAst"
    exponent: int


@dataclass(frozen=True)
class TraceNode:
    degree: int
    arg: "ExprAst"
    pos: int = 0


ExprAst = Union[Const, Var, BinOp, PowNode, TraceNode]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise PolySyntaxError(f"{message} at position {self.pos}", self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        self.skip_ws()
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> ExprAst:
        node = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.fail("unexpected trailing input")
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while True:
            self.skip_ws()
            op = self.peek()
            if op not in ("+", "-"):
                return node
            self.pos += 1
            node = BinOp(op, node, self.term())

    def term(self) -> ExprAst:
        node = self.factor()
        while True:
            self.skip_ws()
            if self.peek() != "*":
                return node
            self.pos += 1
            node = BinOp("*", node, self.factor())

    def factor(self) -> ExprAst:
        node = self.base()
        self.skip_ws()
        if self.peek() == "^":
            self.pos += 1
            node = PowNode(node, self.int_literal())
        return node

    def base(self) -> ExprAst:
        self.skip_ws()
        ch = self.peek()
        if ch.isdigit() or ch == "-":
            start = self.pos
            return Const(self.int_literal(), start)
        if ch == "x":
            self.pos += 1
            return Var()
        if ch == "T":
            start = self.pos
            if not self.text.startswith("Tr", self.pos):
                self.fail("expected 'Tr'")
            self.pos += 2
            self.expect("{")
            d = self.int_literal()
            self.expect("}")
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return TraceNode(d, arg, start)
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        self.fail("expected a constant, 'x', 'Tr{d}(...)' or '('")

    def int_literal(self) -> int:
        self.skip_ws()
        sign = 1
        if self.peek() == "-":
            sign = -1
            self.pos += 1
            self.skip_ws()
        if not self.peek().isdigit():
            self.fail("expected an integer")
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        return sign * int(self.text[start:self.pos])


def _ast_to_poly(node: ExprAst, ctx: FieldCtx) -> PolyFq:
    q = ctx.q
    if isinstance(node, Const):
        v = node.value
        if abs(v) >= q:
            raise ConstantOutOfRange(
                f"constant {v} out of range for q = {q} (position {node.pos})",
                witness=v)
        return constant(ctx, v if v >= 0 else ctx.neg(-v))
    if isinstance(node, Var):
        return xvar(ctx)
    if isinstance(node, BinOp):
        left = _ast_to_poly(node.left, ctx)
        right = _ast_to_poly(node.right, ctx)
        if node.op == "+":
            return poly_add(left, right)
        if node.op == "-":
            return poly_sub(left, right)
        return reduce_mod_field(poly_mul(left, right))
    if isinstance(node, PowNode):
        e = node.exponent
        if e < 0:
            e = (q - 1 - ((-e) % (q - 1))) % (q - 1)
        if isinstance(node.base, Var):
            return monomial(ctx, _fold_exponent(e, q)) if e else constant(ctx, 1)
        return poly_pow(_ast_to_poly(node.base, ctx), e)
    if isinstance(node, TraceNode):
        d = node.degree
        if d < 1 or ctx.n % d != 0:
            raise BadTraceDegree(
                f"trace degree {d} does not divide n = {ctx.n} "
                f"(position {node.pos})", witness=d)
        arg = reduce_mod_field(_ast_to_poly(node.arg, ctx))
        acc = zero(ctx)
        for i in range(ctx.n // d):
            acc = poly_add(acc, poly_frob(arg, d * i))
        return acc
    raise AssertionError(f"unknown AST node {node!r}")


def parse_poly_expr(text: str, ctx: FieldCtx) -> PolyFq:
    """Parse an expression into the fully reduced polynomial it denotes as a
    function on F_q."""
    ast = _Parser(text).parse()
    return reduce_mod_field(_ast_to_poly(ast, ctx))


# linearized (q0-)polynomials

@dataclass(frozen=True)
class LinearizedPoly:
    """L(x) = sum of c_i * x^(q0^i) over GF(q0^m); additive as a map."""

    ctx: FieldCtx
    base: int
    coeffs: tuple

    @property
    def base_degree(self) -> int:
        """d with q0 = p^d."""
        d = 0
        b = self.base
        while b > 1:
            b //= self.ctx.p
            d += 1
        return d


def linearized(ctx: FieldCtx, base: int, coeffs: Sequence[int]) -> LinearizedPoly:
    p, n = ctx.p, ctx.n
    d = 0
    b = base
    while b > 1 and b % p == 0:
        b //= p
        d += 1
    if b != 1 or d == 0 or n % d != 0:
        raise ValueError(f"base {base} is not a power of p = {p} whose degree divides n = {n}")
    m = n // d
    cs = list(coeffs)
    if len(cs) > m:
        raise ValueError(f"at most {m} coefficients allowed over base {base}")
    cs += [0] * (m - len(cs))
    for c in cs:
        if not 0 <= c < ctx.q:
            raise ValueError(f"coefficient {c} out of range")
    return LinearizedPoly(ctx, base, tuple(cs))


def linearized_eval(L: LinearizedPoly, x: int) -> int:
    ctx = L.ctx
    d = L.base_degree
    acc = 0
    cur = x
    for c in L.coeffs:
        if c:
            acc = ctx.add(acc, ctx.mul(c, cur))
        cur = ctx.frob(cur, d)
    return acc


def linearized_to_poly(L: LinearizedPoly) -> PolyFq:
    ctx = L.ctx
    acc = zero(ctx)
    for i, c in enumerate(L.coeffs):
        if c:
            acc = poly_add(acc, monomial(ctx, L.base ** i, c))
    return reduce_mod_field(acc)


def linearized_tabulate(L: LinearizedPoly) -> list:
    return [linearized_eval(L, x) for x in L.ctx.elements()]


def _fp_matrix_inverse(mat: list, p: int):
    """Gauss-Jordan inverse of a square matrix over F_p, or None if singular."""
    n = len(mat)
    a = [row[:] + [1 if i == j else 0 for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] % p), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv_p = pow(a[col][col], -1, p)
        a[col] = [(v * inv_p) % p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [(u - f * v) % p for u, v in zip(a[r], a[col])]
    return [row[n:] for row in a]


def linearized_inverse(L: LinearizedPoly) -> LinearizedPoly:
    """The linearized compositional inverse of a bijective L, obtained by
    inverting the matrix of L over F_p and reading coefficients back off a
    Moore-matrix linear system over the big field."""
    ctx = L.ctx
    p, n = ctx.p, ctx.n
    d = L.base_degree
    m = n // d
    basis = [p ** j for j in range(n)]  # packed single-digit elements
    # matrix of L on digit vectors, columns = images of basis elements
    mat = [[0] * n for _ in range(n)]
    for j, e in enumerate(basis):
        for row, digit in enumerate(ctx.digits(linearized_eval(L, e))):
            mat[row][j] = digit
    inv = _fp_matrix_inverse(mat, p)
    if inv is None:
        raise Singular("the linearized polynomial is not a bijection")
    # images of the basis under L^{-1}
    w = [ctx.pack([inv[row][j] for row in range(n)]) for j in range(n)]
    # solve sum_i c_i * e_j^(q0^i) = w_j for the inverse's coefficients
    rows = []
    for j, e in enumerate(basis):
        row = []
        cur = e
        for _ in range(m):
            row.append(cur)
            cur = ctx.frob(cur, d)
        row.append(w[j])
        rows.append(row)
    sol = _field_solve(ctx, rows, m)
    out = linearized(ctx, L.base, sol)
    for j, e in enumerate(basis):  # defensive: system must be consistent
        assert linearized_eval(out, e) == w[j]
    return out


def _field_solve(ctx: FieldCtx, rows: list, m: int) -> list:
    """Solve an overdetermined, consistent linear system over F_q by
    Gaussian elimination; rows are [a_0 .. a_{m-1} | rhs]."""
    rows = [row[:] for row in rows]
    pivots = []
    for col in range(m):
        piv = next((r for r in range(len(pivots), len(rows)) if rows[r][col]), None)
        assert piv is not None, "Moore system lost rank"
        k = len(pivots)
        rows[k], rows[piv] = rows[piv], rows[k]
        inv = ctx.inv(rows[k][col])
        rows[k] = [ctx.mul(v, inv) for v in rows[k]]
        for r in range(len(rows)):
            if r != k and rows[r][col]:
                f = rows[r][col]
                rows[r] = [ctx.sub(u, ctx.mul(f, v))
                           for u, v in zip(rows[r], rows[k])]
        pivots.append(col)
    for r in range(m, len(rows)):  # leftover rows must have vanished
        assert all(v == 0 for v in rows[r])
    return [rows[i][m] for i in range(m)]
