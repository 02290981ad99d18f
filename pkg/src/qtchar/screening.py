"""Deformed screening operators and their kernels.

For a fixed node i the screening module has generators S_{i,l} subject to

    S_{i,l-r_i} = t^-1 A_{i,l}^-1 S_{i,l+r_i},

and the operator acts on a monomial by

    S_{i,t}(m) = sum_l t^(u-1) [u]_t  m S_{i,l},   u = u_{i,l}(m).

The kernel is spanned by the elements E_i(M) built from the sl2 blocks
Y_{i,l}(1 + t A_{i,l+r_i}^-1).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .errors import NotIDominant, PeriodicTorsion
from .laurent import IntLaurent, quantum_integer, t_power
from .yalgebra import AlgebraElement, ExponentVector, YPoly


class ScreeningElement:
    """sum c(t) b(e) S_{i,l}, stored as (e, l) -> c."""

    __slots__ = ("ctx", "i", "terms")

    def __init__(self, ctx, i, terms):
        self.ctx = ctx
        self.i = i
        self.terms = {k: c for k, c in terms.items() if c}

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return ScreeningElement(self.ctx, self.i, out)

    def __neg__(self):
        return ScreeningElement(self.ctx, self.i, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not normal_form(self).terms

    def __eq__(self, other):
        if not isinstance(other, ScreeningElement):
            return NotImplemented
        return (self - other).is_zero()

    def left_mul(self, a):
        """a * self for an algebra element a."""
        ctx = self.ctx
        out = {}
        for f, c0 in a.terms.items():
            for (e, l), c in self.terms.items():
                key = (f + e, l)
                val = (c0 * c).shift(ctx.phase(f, e))
                out[key] = out[key] + val if key in out else val
        return ScreeningElement(ctx, self.i, out)

    def right_mul(self, a):
        """self * a, using S_{i,l} b(f) = t^(2 u_{i,l}(f)) b(f) S_{i,l}."""
        ctx = self.ctx
        out = {}
        for (e, l), c in self.terms.items():
            for f, c0 in a.terms.items():
                key = (e + f, l)
                ph = ctx.phase(e, f) + 2 * ctx.u_char(f, self.i, l)
                val = (c * c0).shift(ph)
                out[key] = out[key] + val if key in out else val
        return ScreeningElement(ctx, self.i, out)

    def to_json(self):
        from .yalgebra import format_vector

        items = sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0].order_key()))
        return [
            {"monomial": format_vector(e), "s_index": l, "coeff": c.to_json()}
            for (e, l), c in items
        ]

    def __repr__(self):
        from .yalgebra import format_vector

        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})*b[{format_vector(e)}]*S[{self.i},{l}]" for (e, l), c in self.terms.items()
        )


def normal_form(x):
    """Rewrite every S index up to the largest index of its residue class
    mod 2 r_i present in the support.  Only meaningful for s = 0."""
    ctx, i = x.ctx, x.i
    if ctx.s:
        raise PeriodicTorsion("normal forms are not faithful at s >= 1")
    step = 2 * ctx.cd.ri(i)
    r = ctx.cd.ri(i)
    target = {}
    for (_, l) in x.terms:
        cls = l % step
        target[cls] = max(target.get(cls, l), l)
    out = {}
    for (e, l), c in x.terms.items():
        L = target[l % step]
        while l < L:
            a = ctx.Avec(i, l + r)
            c = c.shift(-1 + ctx.d1(a, a) + ctx.phase(e, a))
            e = e + a
            l += step
        key = (e, l)
        out[key] = out[key] + c if key in out else c
    return ScreeningElement(ctx, i, {k: c for k, c in out.items() if c})


def apply_screening(ctx, a, i):
    if ctx.s:
        raise PeriodicTorsion("use kernel_decompose at roots of unity")
    out = {}
    for e, c in a.terms.items():
        for (j, l), u in ctx.u(e).items():
            if j != i:
                continue
            val = c * quantum_integer(u).shift(u - 1)
            key = (e, l)
            out[key] = out[key] + val if key in out else val
    return normal_form(ScreeningElement(ctx, i, out))


# --------------------------------------------------------------------------
# the classical shadow at t = 1

def classical_screening(ctx, p, i):
    """S_i on a commutative Y-polynomial, normal-formed with
    S_{i,l-r_i} = A_{i,l}^-1 S_{i,l+r_i}."""
    out = {}
    for key, x in p.terms.items():
        for (j, l), u in key:
            if j == i:
                k = (key, l)
                out[k] = out.get(k, 0) + x * u
    return classical_normal_form(ctx, i, out)


def classical_normal_form(ctx, i, terms):
    step = 2 * ctx.cd.ri(i)
    r = ctx.cd.ri(i)
    target = {}
    for (_, l), x in terms.items():
        if x:
            target[l % step] = max(target.get(l % step, l), l)
    out = {}
    for (key, l), x in terms.items():
        if not x:
            continue
        L = target[l % step]
        while l < L:
            key = YPoly.mono_mul(key, ctx.pi_hat_monomial(ctx.Avec(i, l + r)))
            l += step
        out[(key, l)] = out.get((key, l), 0) + x
    return {k: x for k, x in out.items() if x}


def pi_hat_screening(x):
    ctx = x.ctx
    out = {}
    for (e, l), c in x.terms.items():
        k = (ctx.pi_hat_monomial(e), l)
        out[k] = out.get(k, 0) + c.at_one()
    return {k: v for k, v in out.items() if v}


# --------------------------------------------------------------------------
# kernel generators

def e_it(ctx, M, i, max_degree=None):
    """E_i(M) = M (prod Y_{i,l}^u)^-1 <-prod_l (Y_{i,l}(1 + t A_{i,l+r_i}^-1))^u,
    the product taken over descending l."""
    u = {l: x for (j, l), x in ctx.u(M).items() if j == i}
    if any(x < 0 for x in u.values()):
        raise NotIDominant(f"monomial is not {i}-dominant", witness=M)
    ri = ctx.cd.ri(i)
    ypart = ExponentVector({(i, l): x for l, x in u.items()})
    pre = -ypart
    acc = AlgebraElement(ctx, {M + pre: IntLaurent.monomial(ctx.phase(M, pre))})
    for l in sorted(u, reverse=True):
        block = ctx.Y(i, l) + ctx.multiply(ctx.Y(i, l), ctx.Ainv(i, l + ri)) * t_power(1)
        for _ in range(u[l]):
            acc = ctx.multiply(acc, block, max_degree)
    return acc


@dataclass
class KernelDecomposition:
    ok: bool
    coeffs: dict = field(default_factory=dict)
    witness: object = None

    def __bool__(self):
        return self.ok


def kernel_decompose(ctx, a, i, max_degree=None):
    """Greedy elimination against the E_i basis, highest monomial first."""
    if hasattr(a, "element"):
        if max_degree is None:
            max_degree = a.max_degree
        a = a.element
    rest = dict(a.terms)
    if max_degree is not None:
        rest = {e: c for e, c in rest.items() if e.deg <= max_degree}
    heap = [(e.order_key(), e) for e in rest]
    heapq.heapify(heap)
    coeffs = {}
    while heap:
        _, e = heapq.heappop(heap)
        c = rest.get(e)
        if not c:
            rest.pop(e, None)
            continue
        if not ctx.is_dominant(e, i):
            return KernelDecomposition(False, coeffs, e)
        coeffs[e] = c
        for f, d in e_it(ctx, e, i, max_degree).terms.items():
            new = rest.get(f, IntLaurent()) - c * d
            if f not in rest:
                heapq.heappush(heap, (f.order_key(), f))
            rest[f] = new
        rest.pop(e, None)
    return KernelDecomposition(True, coeffs, None)
