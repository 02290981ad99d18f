"""Kazhdan-Lusztig type decompositions of standard elements.

Every element of the kernel intersection is a unique combination of the
F_t(m') (one per dominant monomial m'), and the coefficient of F_t(m') in
E_t(m) is simply the coefficient of m' in E_t(m).  Writing

    E_t(m) = sum_{m'} P_{m',m} L(m'),   L(m') = sum_{m''} mu_{m'',m'} F_t(m''),

with P_{m,m} = 1, P_{m',m} in t^-1 Z[t^-1] and mu bar-symmetric, the pairs
(mu, P) are peeled off one dominant monomial at a time by ``split_sym_neg``.
All monomials are taken in their bar-invariant normalization t^alpha b(e).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

import sympy

from .charalg import CharacterSeries, e_t
from .errors import ConditionUnverified, HypothesisViolated, TruncationInsufficient
from .laurent import IntLaurent, split_sym_neg
from .yalgebra import AlgebraElement, ExponentVector, format_vector

ZERO = IntLaurent()
ONE = IntLaurent(1)


def below(x, z):
    """z < x in the partial order: same y-part, v(z) >= v(x), z != x."""
    if z == x or z.y != x.y:
        return False
    return all(z.v.get(k, 0) >= c for k, c in x.v.items())


def order_key(e, tie_break="lex"):
    k = e.order_key()
    if tie_break == "revlex":
        return (k[0], tuple(reversed(k[1])))
    return k


def degree_bound(ctx, m):
    """For finite type: the largest degree a dominant monomial below m can
    have, from V <= C^-1 U componentwise (U the node sums of u(m))."""
    cd = ctx.cd
    if not cd.flags["finite_type"]:
        return None
    U = [0] * cd.n
    for (i, _), x in ctx.u(m).items():
        U[i - 1] += x
    Cinv = sympy.Matrix(cd.C).inv()
    V = Cinv * sympy.Matrix(U)
    return m.deg + sum(floor(Fraction(int(x.p), int(x.q))) for x in V)


def dominant_closure(ctx, m, max_degree, cache=None):
    """Dominant monomials reachable from m through standard elements.

    Returns (ordered list, dict x -> E_t(b(x)) series, complete flag).
    """
    cache = {} if cache is None else cache
    seen = {m}
    queue = [m]
    complete = True
    while queue:
        x = queue.pop()
        if x not in cache:
            cache[x] = e_t(ctx, x, max_degree)
        E = cache[x]
        complete = complete and E.complete
        for y in E.element.terms:
            if y not in seen and ctx.is_dominant(y):
                seen.add(y)
                queue.append(y)
    bound = degree_bound(ctx, m)
    if bound is not None:
        over = [x for x in seen if x.deg > bound]
        if over:
            raise TruncationInsufficient(
                f"dominant monomial {format_vector(over[0])} violates the finite bound"
            )
        if not complete and bound > max_degree:
            raise TruncationInsufficient(
                f"dominant monomials may exist up to degree {bound} > {max_degree}"
            )
        if bound <= max_degree:
            complete = True
    return sorted(seen, key=ExponentVector.order_key), cache, complete


@dataclass
class KLResult:
    ctx: object
    seed: ExponentVector
    basis: list
    P: dict
    mu: dict
    L: dict
    E: dict
    G: dict
    max_degree: int
    complete: bool
    alpha: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    @property
    def status(self):
        return "Complete" if self.complete else "Truncated"

    def lower(self, m=None):
        m = self.seed if m is None else m
        return [x for x in self.basis if below(m, x)]

    def p(self, mprime, m=None):
        m = self.seed if m is None else m
        if mprime == m:
            return ONE
        return self.P.get((mprime, m), ZERO)

    def bar_fixed_monomial(self, e):
        return AlgebraElement(self.ctx, {e: IntLaurent.monomial(self.alpha[e])})

    def to_json(self):
        m = self.seed
        return {
            "seed": format_vector(m),
            "status": self.status,
            "max_degree": self.max_degree,
            "basis": [
                {"monomial": format_vector(x), "alpha": self.alpha[x]} for x in self.basis
            ],
            "P": [
                {"from": format_vector(x), "to": format_vector(m), "poly": self.p(x, m).to_json()}
                for x in self.basis
                if x == m or below(m, x)
            ],
            "L": [
                {"monomial": format_vector(x), "terms": self.L[x].to_json()}
                for x in self.basis
                if x == m or below(m, x)
            ],
        }


def kl_decompose(ctx, m, max_degree, tie_break="lex"):
    """Decompose E_t(m) over the bar-invariant family L for every dominant
    monomial of the closure of m (generic, or finite type at a root of unity)."""
    if ctx.s and not ctx.cd.flags["finite_type"]:
        raise HypothesisViolated("use kl_nonfinite for non-finite matrices at s >= 1")
    return _kl(ctx, m, max_degree, tie_break)


def _kl(ctx, m, max_degree, tie_break="lex"):
    basis, Ecache, complete = dominant_closure(ctx, m, max_degree)
    alpha = {x: ctx.normalize_invariant(x) for x in basis}
    # bar-invariant standard elements and their dominant coefficients
    Ebi = {}
    G = {}
    for x in basis:
        Ebi[x] = Ecache[x].element * IntLaurent.monomial(alpha[x])
        G[x] = {
            y: c.shift(-alpha[y]) for y, c in Ebi[x].terms.items() if y in alpha
        }
    order = sorted(basis, key=lambda e: order_key(e, tie_break))
    P, mu, L = {}, {}, {}
    for x in reversed(order):
        lower = [z for z in order if below(x, z)]
        for z in lower:
            c = G[x].get(z, ZERO)
            for y in lower:
                if below(y, z) and (y, x) in P:
                    c = c - P[(y, x)] * mu.get((z, y), ZERO)
            a, p = split_sym_neg(c)
            if a:
                mu[(z, x)] = a
            if p:
                P[(z, x)] = p
        acc = Ebi[x]
        for z in lower:
            if (z, x) in P:
                acc = acc - L[z] * P[(z, x)]
        L[x] = acc
    return KLResult(ctx, m, order, P, mu, L, Ecache, G, max_degree, complete, alpha)


def ft_s_nonfinite(ctx, m, max_degree, cache=None, corrections=None):
    """F_t(m) = E_t(m) - sum lambda_k E_t(m_k), peeling dominant monomials
    other than m in increasing order.  Returns the element for b(m).

    If ``corrections`` is a list, the pairs (m_k, lambda_k) are appended with
    both sides in the bar-invariant normalization.
    """
    cache = {} if cache is None else cache

    def E(x):
        if x not in cache:
            cache[x] = e_t(ctx, x, max_degree)
        return cache[x]

    first = E(m)
    rest = dict(first.element.terms)
    complete = first.complete
    done = set()
    while True:
        dom = sorted(
            (y for y, c in rest.items() if c and y != m and ctx.is_dominant(y)),
            key=ExponentVector.order_key,
        )
        if not dom:
            break
        y = dom[0]
        if y in done:
            raise TruncationInsufficient("dominant monomial reappeared", witness=y)
        done.add(y)
        lam = rest[y]
        if corrections is not None:
            a = ctx.normalize_invariant(m)
            corrections.append((y, lam.shift(a - ctx.normalize_invariant(y))))
        Ey = E(y)
        complete = complete and Ey.complete
        for f, c in Ey.element.terms.items():
            rest[f] = rest.get(f, ZERO) - lam * c
        rest = {f: c for f, c in rest.items() if c}
    return CharacterSeries(AlgebraElement(ctx, rest), max_degree, complete, m)


def collapsed_P(result, target_key):
    """Sum of P over the minimal-degree lifts x of the commutative monomial
    ``target_key`` (sorted tuple of ((i,l), u)), together with k(m, m')."""
    ctx = result.ctx
    m = result.seed
    lifts = [
        x for x in result.basis
        if (x == m or below(m, x)) and ctx.pi_hat_monomial(x) == target_key
    ]
    if not lifts:
        return None, ZERO
    k = min(x.deg for x in lifts) - m.deg
    tot = ZERO
    for x in lifts:
        if x.deg - m.deg == k:
            tot = tot + result.p(x, m)
    return k, tot


def kl_nonfinite(ctx, m, max_degree, tie_break="lex"):
    """Degree-by-degree decomposition for matrices whose dominant closure is
    infinite; P and mu below the truncation degree are final."""
    from .cartan import positive_null_vector

    res = _kl(ctx, m, max_degree, tie_break)
    if not ctx.cd.flags["finite_type"]:
        res.complete = False
        if positive_null_vector(ctx.cd) is None:
            res.warnings.append(ConditionUnverified("no positive null vector found"))
    return res
