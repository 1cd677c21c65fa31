"""Inverse construction for the four closed-form families of AGW
permutation polynomials, plus the generic commutative-square pipeline the
closed forms specialize.

Each family constructor validates its hypotheses exhaustively and freezes a
record holding the forward map and the induced small-set map g; the
``invert_*`` operations return the inverse as a :class:`PermTable`.  The
small-set inverse g^{-1} is found by brute force over the small set, which
is the whole point of the reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

from .errors import (BPlusOneZero, ConditionFail, GammaZero, HVanishes,
                     HVanishesOnImage, LambdaZero, NotCoprime, NotDivisor,
                     NotInjectivePhi, NotInSubfield, NotPermutation,
                     NotTranslator, SquareDoesNotCommute)
from .gf_core import (FieldCtx, MuSubgroup, ext_gcd, field_from_json,
                      mu_subgroup)
from .perm_core import MapLike, PermTable, _materialize, brute_inverse
from .poly_expr import (PolyFq, eval_poly, interpolate, parse_poly_expr,
                        tabulate)


def _small_inverse(mapping: Mapping, label: str) -> dict:
    """Brute-force inverse of a map on a small set; rejects collisions."""
    inv: dict = {}
    for k in sorted(mapping):
        v = mapping[k]
        if v in inv:
            raise NotPermutation(
                f"{label} is not a bijection: {inv[v]} and {k} both map to {v}",
                witness=(inv[v], k))
        inv[v] = k
    return inv


# multiplicative family: f(x) = x^r h(x^s)

@dataclass(frozen=True)
class MulFamily:
    """Parameters of f(x) = x^r h(x^s) with s | q-1 and gcd(r, s) = 1,
    together with g(z) = z^r h(z)^s on the (q-1)/s-th roots of unity and the
    Bezout pair a*s + b*r = 1 normalized to 0 <= a < r."""

    ctx: FieldCtx
    r: int
    s: int
    h: PolyFq
    ell: int
    mu: MuSubgroup
    a: int
    b: int
    h_on_mu: Mapping
    g_map: Mapping
    g_inv: Mapping
    f_table: tuple


def mul_family(ctx: FieldCtx, r: int, s: int, h: PolyFq) -> MulFamily:
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"r must be a positive integer, got {r}")
    if not isinstance(s, int) or s < 1 or (ctx.q - 1) % s != 0:
        raise NotDivisor(f"s = {s} does not divide q - 1 = {ctx.q - 1}")
    if math.gcd(r, s) != 1:
        raise NotCoprime(f"gcd(r = {r}, s = {s}) != 1")
    ell = (ctx.q - 1) // s
    mu = mu_subgroup(ctx, ell)
    h_on_mu = {}
    for z in mu.elements:
        v = eval_poly(h, z)
        if v == 0:
            raise HVanishes(f"h vanishes at {z} on mu_{ell}", witness=z)
        h_on_mu[z] = v
    g_map = {z: ctx.mul(ctx.pow(z, r), ctx.pow(h_on_mu[z], s))
             for z in mu.elements}
    g_inv = _small_inverse(g_map, f"g on mu_{ell}")
    a, b = ext_gcd(s, r)
    f = [0] * ctx.q
    for x in ctx.units():
        f[x] = ctx.mul(ctx.pow(x, r), h_on_mu[ctx.pow(x, s)])
    return MulFamily(ctx, r, s, h, ell, mu, a, b, h_on_mu, g_map, g_inv,
                     tuple(f))


def invert_multiplicative(fam: MulFamily) -> PermTable:
    """f^{-1}(x) = g^{-1}(x^s)^a * x^b * h(g^{-1}(x^s))^{-b}, with 0 -> 0."""
    ctx = fam.ctx
    images = [0] * ctx.q
    for x in ctx.units():
        y = fam.g_inv[ctx.pow(x, fam.s)]
        images[x] = ctx.mul(ctx.mul(ctx.pow(y, fam.a), ctx.pow(x, fam.b)),
                            ctx.pow(fam.h_on_mu[y], -fam.b))
    return PermTable(ctx, tuple(images))


@dataclass(frozen=True)
class MulClosedForm:
    """Symbolic inverse f^{-1} = x^(a*s*t+b) h(x^(s*t))^(-b), valid when
    h(z)^s = z^n on the root-of-unity subgroup and (r+n)t = 1 mod (q-1)/s."""

    a: int
    b: int
    t: int
    n_exp: int
    x_exponent: int
    inner_exponent: int
    h_exponent: int
    table: PermTable


def closed_form_mul(fam: MulFamily, n_exp: int, t: int) -> MulClosedForm:
    ctx = fam.ctx
    for z in fam.mu.elements:
        if ctx.pow(fam.h_on_mu[z], fam.s) != ctx.pow(z, n_exp):
            raise ConditionFail(
                f"h(z)^s != z^{n_exp} at z = {z}", witness=z)
    if math.gcd(fam.r + n_exp, fam.ell) != 1:
        raise NotCoprime(
            f"gcd(r + n = {fam.r + n_exp}, (q-1)/s = {fam.ell}) != 1")
    if ((fam.r + n_exp) * t - 1) % fam.ell != 0:
        raise ConditionFail(
            f"t = {t} does not satisfy (r+n)t = 1 mod {fam.ell}")
    x_exp = fam.a * fam.s * t + fam.b
    inner = fam.s * t
    images = [0] * ctx.q
    for x in ctx.units():
        w = ctx.pow(x, inner)  # (x^(st))^ell = x^(t(q-1)) = 1, so w is a root of unity
        images[x] = ctx.mul(ctx.pow(x, x_exp),
                            ctx.pow(fam.h_on_mu[w], -fam.b))
    reference = invert_multiplicative(fam)
    assert tuple(images) == reference.images
    return MulClosedForm(fam.a, fam.b, t, n_exp, x_exp, inner, -fam.b,
                         PermTable(ctx, tuple(images)))


# additive family: f(x) = g(x) + g0(lambda(x))

@dataclass(frozen=True)
class AddFamily:
    """f = g + g0 o lam with lam_bar additive, lam_bar(g0(lam(x))) = 0, and
    the square lam_bar o f = g o lam commuting; g is stored as a total map
    on F (it need not be bijective until inversion is requested)."""

    ctx: FieldCtx
    g: tuple
    g0: Mapping
    lam: tuple
    lam_bar: tuple
    S: tuple
    S_bar: tuple
    f_table: tuple


def add_family(ctx: FieldCtx, g: MapLike, g0: Mapping, lam: MapLike,
               lam_bar: MapLike) -> AddFamily:
    g_t = tuple(_materialize(ctx, g))
    lam_t = tuple(_materialize(ctx, lam))
    bar_t = tuple(_materialize(ctx, lam_bar))
    S = tuple(sorted(set(lam_t)))
    S_bar = tuple(sorted(set(bar_t)))
    g0_d = {int(k): int(v) for k, v in g0.items()}
    missing = [s for s in S if s not in g0_d]
    if missing:
        raise ValueError(f"g0 is undefined on {missing[0]} in S")
    for x in ctx.elements():
        for y in ctx.elements():
            if bar_t[ctx.add(x, y)] != ctx.add(bar_t[x], bar_t[y]):
                raise ConditionFail(
                    f"lambda_bar is not additive at ({x}, {y})",
                    witness=(x, y))
    f = tuple(ctx.add(g_t[x], g0_d[lam_t[x]]) for x in ctx.elements())
    for x in ctx.elements():
        if bar_t[g0_d[lam_t[x]]] != 0:
            raise ConditionFail(
                f"lambda_bar(g0(lambda({x}))) != 0", witness=x)
        if bar_t[f[x]] != g_t[lam_t[x]]:
            raise ConditionFail(
                f"square does not commute at {x}: "
                f"lambda_bar(f(x)) != g(lambda(x))", witness=x)
    if {g_t[s] for s in S} != set(S_bar):
        raise ConditionFail("g(S) != S_bar")
    return AddFamily(ctx, g_t, g0_d, lam_t, bar_t, S, S_bar, f)


def invert_additive(fam: AddFamily) -> PermTable:
    """f^{-1}(x) = g^{-1}(x - g0(g^{-1}(lambda_bar(x))))."""
    ctx = fam.ctx
    g_inv = _small_inverse(dict(enumerate(fam.g)), "g on F")
    images = []
    for x in ctx.elements():
        s = g_inv[fam.lam_bar[x]]
        images.append(g_inv[ctx.sub(x, fam.g0[s])])
    return PermTable(ctx, tuple(images))


# hybrid scaling family: f(x) = x * h(lambda(x))

@dataclass(frozen=True)
class HybridScaleFamily:
    """f(x) = x h(lam(x)) where h(0) != 0, k(0) = 0, h(lam(F)) lies in S,
    and lam(a*x) = k(a) lam(x) for a in S; g(y) = y k(h(y)) acts on the
    lambda image L, with theta(y) = k(h(y))."""

    ctx: FieldCtx
    h: PolyFq
    k: PolyFq
    lam: tuple
    S: tuple
    L: tuple
    h_on_L: Mapping
    theta: Mapping
    g_map: Mapping
    g_inv: Optional[Mapping]
    f_table: tuple


def hybrid_family(ctx: FieldCtx, h: PolyFq, k: PolyFq, lam: MapLike,
                  S: Sequence[int]) -> HybridScaleFamily:
    lam_t = tuple(_materialize(ctx, lam))
    S_t = tuple(sorted(set(int(s) for s in S)))
    if 0 not in S_t:
        raise ConditionFail("S must contain 0")
    if eval_poly(h, 0) == 0:
        raise ConditionFail("h(0) = 0")
    if eval_poly(k, 0) != 0:
        raise ConditionFail("k(0) != 0")
    L = tuple(sorted(set(lam_t)))
    S_set = set(S_t)
    h_on_L = {}
    for y in L:
        v = eval_poly(h, y)
        if v not in S_set:
            raise ConditionFail(
                f"h(lambda image) leaves S at y = {y}", witness=y)
        h_on_L[y] = v
    k_on_S = {a: eval_poly(k, a) for a in S_t}
    for a in S_t:
        ka = k_on_S[a]
        for x in ctx.elements():
            if lam_t[ctx.mul(a, x)] != ctx.mul(ka, lam_t[x]):
                raise ConditionFail(
                    f"lambda(a*x) != k(a)*lambda(x) at (a, x) = ({a}, {x})",
                    witness=(a, x))
    for y in L:
        if h_on_L[y] == 0:
            raise HVanishesOnImage(
                f"h vanishes at {y} on the lambda image", witness=y)
    theta = {y: k_on_S[h_on_L[y]] for y in L}
    g_map = {y: ctx.mul(y, theta[y]) for y in L}
    try:
        g_inv = _small_inverse(g_map, "g on the lambda image")
    except NotPermutation:
        g_inv = None
    f = tuple(ctx.mul(x, h_on_L[lam_t[x]]) for x in ctx.elements())
    return HybridScaleFamily(ctx, h, k, lam_t, S_t, L, h_on_L, theta, g_map,
                             g_inv, f)


def invert_hybrid_scale(fam: HybridScaleFamily) -> PermTable:
    """f^{-1}(x) = (x - lam(x) + k(h(y))*y) / h(y) with y = g^{-1}(lam(x))."""
    ctx = fam.ctx
    if fam.g_inv is None:
        raise NotPermutation("g(y) = y*k(h(y)) is not a bijection on the "
                             "lambda image")
    images = []
    for x in ctx.elements():
        y = fam.g_inv[fam.lam[x]]
        num = ctx.add(ctx.sub(x, fam.lam[x]), ctx.mul(fam.theta[y], y))
        images.append(ctx.div(num, fam.h_on_L[y]))
    return PermTable(ctx, tuple(images))


# translator family: f(x) = x + gamma * G(lambda(x))

@dataclass(frozen=True)
class TranslatorFamily:
    """f(x) = x + gamma G(lam(x)) where gamma is a b-linear translator of
    lam with respect to S = lam(F): lam(x + u*gamma) = lam(x) + u*b for all
    x and all u in S."""

    ctx: FieldCtx
    lam: tuple
    gamma: int
    b: int
    G: PolyFq
    S: tuple
    G_on_S: Mapping
    g_map: Mapping
    g_inv: Optional[Mapping]
    f_table: tuple


def translator_family(ctx: FieldCtx, lam: MapLike, gamma: int, b: int,
                      G: PolyFq) -> TranslatorFamily:
    if gamma == 0:
        raise GammaZero("gamma must be nonzero")
    lam_t = tuple(_materialize(ctx, lam))
    S = tuple(sorted(set(lam_t)))
    S_set = set(S)
    G_on_S = {}
    for y in S:
        v = eval_poly(G, y)
        if v not in S_set:
            raise ConditionFail(f"G does not map S into S at {y}", witness=y)
        G_on_S[y] = v
    for u in S:
        ug = ctx.mul(u, gamma)
        ub = ctx.mul(u, b)
        for x in ctx.elements():
            if lam_t[ctx.add(x, ug)] != ctx.add(lam_t[x], ub):
                raise NotTranslator(
                    f"lambda(x + u*gamma) != lambda(x) + u*b at "
                    f"(x, u) = ({x}, {u})", witness=(x, u))
    g_map = {y: ctx.add(y, ctx.mul(b, G_on_S[y])) for y in S}
    assert all(v in S_set for v in g_map.values())  # forced by translator law
    try:
        g_inv = _small_inverse(g_map, "g on S")
    except NotPermutation:
        g_inv = None
    f = tuple(ctx.add(x, ctx.mul(gamma, G_on_S[lam_t[x]]))
              for x in ctx.elements())
    return TranslatorFamily(ctx, lam_t, gamma, b, G, S, G_on_S, g_map, g_inv,
                            f)


def invert_translator(fam: TranslatorFamily) -> PermTable:
    """f^{-1}(x) = (b-gamma) G(y) + y - lam(x) + x with y = g^{-1}(lam(x))."""
    ctx = fam.ctx
    if fam.g_inv is None:
        raise NotPermutation("g(y) = y + b*G(y) is not a bijection on S")
    coeff = ctx.sub(fam.b, fam.gamma)
    images = []
    for x in ctx.elements():
        y = fam.g_inv[fam.lam[x]]
        val = ctx.add(ctx.mul(coeff, fam.G_on_S[y]), y)
        images.append(ctx.add(val, ctx.sub(x, fam.lam[x])))
    return PermTable(ctx, tuple(images))


def invert_translator_linear(fam: TranslatorFamily) -> PermTable:
    """Specialization for G = identity: f^{-1}(x) = x - gamma/(b+1) lam(x),
    requiring b != -1; agrees with :func:`invert_translator` exactly."""
    ctx = fam.ctx
    if any(fam.G_on_S[y] != y for y in fam.S):
        raise ValueError("family G is not the identity on S")
    b1 = ctx.add(fam.b, 1)
    if b1 == 0:
        raise BPlusOneZero("b = -1, the linear-translator inverse formula "
                           "does not apply")
    coeff = ctx.neg(ctx.div(fam.gamma, b1))
    images = tuple(ctx.add(x, ctx.mul(coeff, fam.lam[x]))
                   for x in ctx.elements())
    assert images == invert_translator(fam).images
    return PermTable(ctx, images)


# generic pipeline: f^{-1} = phi^{-1} o psi^{-1} o phi_bar

@dataclass(frozen=True)
class PhiMap:
    """A bijection x -> (first[x], second[x]) into a pair set, with its
    inverse supplied as a callable on pairs."""

    first: tuple
    second: tuple
    inverse: Callable


@dataclass(frozen=True)
class GenericDiagram:
    """phi, phi_bar with phi's inverse, and psi^{-1} split into its two
    component maps: g_inv on first components and M on pairs."""

    phi: PhiMap
    phi_bar: PhiMap
    g_inv: Mapping
    M: Callable


def build_phi_add(P: PermTable, lam: MapLike) -> PhiMap:
    """phi(x) = (lam(x), P(x) - lam(x)); phi^{-1}(y, z) = P^{-1}(y + z)."""
    ctx = P.ctx
    lam_t = tuple(_materialize(ctx, lam))
    P_inv = brute_inverse(P)
    second = tuple(ctx.sub(P[x], lam_t[x]) for x in ctx.elements())
    return PhiMap(lam_t, second,
                  lambda y, z: P_inv[ctx.add(y, z)])


def build_phi_mul(P: PermTable, lam: MapLike) -> PhiMap:
    """phi(x) = (lam(x), P(x / lam(x))) for nowhere-zero lam;
    phi^{-1}(y, z) = y * P^{-1}(z)."""
    ctx = P.ctx
    lam_t = tuple(_materialize(ctx, lam))
    for x in ctx.elements():
        if lam_t[x] == 0:
            raise LambdaZero(f"lambda vanishes at {x}", witness=x)
    P_inv = brute_inverse(P)
    second = tuple(P[ctx.div(x, lam_t[x])] for x in ctx.elements())
    return PhiMap(lam_t, second,
                  lambda y, z: ctx.mul(y, P_inv[z]))


def _check_injective(phi: PhiMap, q: int, label: str):
    seen: dict = {}
    for x in range(q):
        pair = (phi.first[x], phi.second[x])
        if pair in seen:
            raise NotInjectivePhi(
                f"{label} is not injective: {seen[pair]} and {x} share "
                f"the pair {pair}", witness=(seen[pair], x))
        seen[pair] = x


def generic_inverse(d: GenericDiagram, f: PermTable) -> PermTable:
    """Table of phi^{-1} o psi^{-1} o phi_bar, after checking that phi and
    phi_bar are injective and that the supplied psi^{-1} inverts the square
    psi = phi_bar o f o phi^{-1} pointwise."""
    ctx = f.ctx
    q = ctx.q
    _check_injective(d.phi, q, "phi")
    _check_injective(d.phi_bar, q, "phi_bar")
    for x in ctx.elements():
        fx = f[x]
        alpha, beta = d.phi_bar.first[fx], d.phi_bar.second[fx]
        if alpha not in d.g_inv or (
                (d.g_inv[alpha], d.M(alpha, beta))
                != (d.phi.first[x], d.phi.second[x])):
            raise SquareDoesNotCommute(
                f"psi_inv does not invert the square at x = {x}", witness=x)
    images = []
    for x in ctx.elements():
        alpha, beta = d.phi_bar.first[x], d.phi_bar.second[x]
        images.append(d.phi.inverse(d.g_inv[alpha], d.M(alpha, beta)))
    out = PermTable(ctx, tuple(images))
    assert all(out[f[x]] == x for x in ctx.elements())
    return out


# the difference-plus-scaling class f(x) = g(x^{q^i} - x + delta) + c x

def _subfield_degree(ctx: FieldCtx, q: int) -> int:
    """The e with q = p^e, requiring e | n; identifies a subfield tower."""
    p = ctx.p
    e = 0
    b = q
    while b > 1 and b % p == 0:
        b //= p
        e += 1
    if b != 1 or e == 0 or ctx.n % e != 0:
        raise ValueError(
            f"q = {q} is not a power of p = {p} with degree dividing {ctx.n}")
    return e


def niu_forward(ctx: FieldCtx, q: int, g: PolyFq, i: int, c: int,
                delta: int) -> tuple:
    """Forward table of f(x) = g(x^{q^i} - x + delta) + c*x."""
    e = _subfield_degree(ctx, q)
    return tuple(
        ctx.add(eval_poly(g, ctx.add(ctx.sub(ctx.frob(x, e * i), x), delta)),
                ctx.mul(c, x))
        for x in ctx.elements())


def invert_niu(ctx: FieldCtx, q: int, g: PolyFq, i: int, c: int,
               delta: int) -> PermTable:
    """Inverse of f(x) = g(x^{q^i} - x + delta) + c*x over GF(q^m), given
    c in the subfield GF(q^gcd(i,m))^*:

        f^{-1}(x) = c^{-1} x^{q^i} - c^{-1} g(H(w))^{q^i} - H(w) + delta,

    where w = x^{q^i} - x + delta and H is the (brute-forced) inverse of
    h(x) = g(x)^{q^i} - g(x) + c*x + (1-c)*delta.
    """
    e = _subfield_degree(ctx, q)
    m = ctx.n // e
    if not 1 <= i <= m - 1:
        raise ValueError(f"i must satisfy 1 <= i <= m-1 = {m - 1}")
    d = math.gcd(i, m)
    if c == 0 or ctx.frob(c, e * d) != c:
        raise NotInSubfield(
            f"c = {c} is not in GF({q}^{d})^*", witness=c)
    g_vals = [eval_poly(g, x) for x in ctx.elements()]
    shift = ctx.mul(ctx.sub(1, c), delta)
    h_table = [0] * ctx.q
    for x in ctx.elements():
        gx = g_vals[x]
        h_table[x] = ctx.add(
            ctx.add(ctx.sub(ctx.frob(gx, e * i), gx), ctx.mul(c, x)), shift)
    seen: dict = {}
    for x, v in enumerate(h_table):
        if v in seen:
            raise NotPermutation(
                f"h(x) = g(x)^(q^i) - g(x) + c*x + (1-c)*delta is not a "
                f"bijection: {seen[v]} and {x} collide", witness=(seen[v], x))
        seen[v] = x
    H = [seen[v] for v in range(ctx.q)]
    c_inv = ctx.inv(c)
    images = []
    for x in ctx.elements():
        w = ctx.add(ctx.sub(ctx.frob(x, e * i), x), delta)
        Hw = H[w]
        t1 = ctx.mul(c_inv, ctx.frob(x, e * i))
        t2 = ctx.mul(c_inv, ctx.frob(eval_poly(g, Hw), e * i))
        images.append(ctx.add(ctx.sub(ctx.sub(t1, t2), Hw), delta))
    out = PermTable(ctx, tuple(images))
    f = niu_forward(ctx, q, g, i, c, delta)
    assert all(out[f[x]] == x for x in ctx.elements())
    return out


# family descriptor files

def _poly_param(ctx: FieldCtx, value) -> PolyFq:
    if isinstance(value, str):
        return parse_poly_expr(value, ctx)
    return interpolate(ctx, list(value))


def _map_param(ctx: FieldCtx, value) -> list:
    if isinstance(value, str):
        return tabulate(parse_poly_expr(value, ctx))
    return _materialize(ctx, list(value))


def family_from_descriptor(doc: dict):
    """Build a family from a JSON descriptor document
    ``{"family": ..., "field": {...}, parameters by name}``; polynomials are
    grammar strings (or value tables), maps are tables.  Returns
    ``(kind, family)`` where ``kind`` is the descriptor's family string; the
    "niu" kind returns the parameter tuple ``(ctx, q, g, i, c, delta)``.
    """
    kind = doc["family"]
    ctx = field_from_json(doc["field"])
    if kind == "mul":
        h = _poly_param(ctx, doc["h"])
        return kind, mul_family(ctx, int(doc["r"]), int(doc["s"]), h)
    if kind == "add":
        g = _map_param(ctx, doc["g"])
        lam = _map_param(ctx, doc["lambda"])
        lam_bar = _map_param(ctx, doc.get("lambda_bar", doc["lambda"]))
        g0_doc = doc["g0"]
        if isinstance(g0_doc, str):
            g0_poly = parse_poly_expr(g0_doc, ctx)
            g0 = {s: eval_poly(g0_poly, s) for s in set(lam)}
        else:
            g0 = {int(k): int(v) for k, v in g0_doc.items()}
        return kind, add_family(ctx, g, g0, lam, lam_bar)
    if kind == "hybrid":
        h = _poly_param(ctx, doc["h"])
        k = _poly_param(ctx, doc["k"])
        lam = _map_param(ctx, doc["lambda"])
        return kind, hybrid_family(ctx, h, k, lam, [int(s) for s in doc["S"]])
    if kind == "translator":
        lam = _map_param(ctx, doc["lambda"])
        G = _poly_param(ctx, doc["G"])
        return kind, translator_family(ctx, lam, int(doc["gamma"]),
                                       int(doc["b"]), G)
    if kind == "niu":
        g = _poly_param(ctx, doc["g"])
        return kind, (ctx, int(doc["q"]), g, int(doc["i"]), int(doc["c"]),
                      int(doc["delta"]))
    raise ValueError(f"unknown family kind {kind!r}")
