"""The deformed Frenkel-Mukhin algorithm and the characters built from it.

``ft_algorithm`` sweeps monomials by degree.  For every node i it keeps the
running sum K_i = sum_M a_i[M] E_i(M); a monomial that is not i-dominant for
some i must receive the coefficient K_i has already forced on it, and for
every i where it is i-dominant a new E_i block absorbs the difference.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product as iproduct
from math import comb

from .cartan import positive_null_vector
from .errors import (
    GenericContext,
    Inconsistent,
    NotIDominant,
    PreconditionCCLe3,
    TruncationInsufficient,
)
from .laurent import IntLaurent
from .screening import e_it
from .yalgebra import (
    AlgebraElement,
    ExponentVector,
    YPoly,
    fold,
    format_vector,
    parse_word,
    shift,
    tau_st,
)

ONE = IntLaurent(1)
ZERO = IntLaurent()


@dataclass
class CharacterSeries:
    element: AlgebraElement
    max_degree: int
    complete: bool
    seed: ExponentVector
    collisions: list = field(default_factory=list)

    @property
    def status(self):
        return "Complete" if self.complete else "Truncated"

    @property
    def ctx(self):
        return self.element.ctx

    def top_degree(self):
        return self.element.max_degree()

    def to_json(self):
        return {
            "seed": format_vector(self.seed),
            "status": self.status,
            "max_degree": self.max_degree,
            "terms": self.element.to_json(),
        }


# --------------------------------------------------------------------------
# Rep monomials

def parse_rep(text, n=None):
    """'X[1,0]*X[1,2]' (or 'X[0]*X[1]' in rank one) -> {(i, l): exponent}."""
    word = text.replace("X[", "Y[")
    out = {}
    for kind, i, l, p in parse_word(word, n):
        if kind != "Y" or p < 0:
            from .errors import ParseError

            raise ParseError(f"bad Rep monomial {text!r}")
        out[(i, l)] = out.get((i, l), 0) + p
    return out


def format_rep(x):
    if not x:
        return "1"
    parts = []
    for (i, l), p in sorted(x.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        parts.append(f"X[{i},{l}]" + (f"^{p}" if p != 1 else ""))
    return "*".join(parts)


# --------------------------------------------------------------------------
# the deformed algorithm

def ft_algorithm(ctx, seed, max_degree, *, allow_any_cartan=False):
    """F_t(seed): the element of the kernel intersection whose only dominant
    monomial is b(seed), computed up to ``max_degree``."""
    if ctx.s:
        raise GenericContext("the algorithm runs at generic q; use e_t / kl for s >= 1")
    if not ctx.cd.flags["cc_le3"] and not allow_any_cartan:
        raise PreconditionCCLe3("some C_ij C_ji > 3; pass allow_any_cartan to try anyway")
    if not ctx.is_dominant(seed):
        raise NotIDominant("seed is not dominant", witness=seed)
    nodes = list(ctx.cd.nodes)
    D = {}
    K = {i: {} for i in nodes}
    buckets = defaultdict(set)
    buckets[seed.deg].add(seed)
    collisions = []
    d = seed.deg
    while d <= max_degree and any(k >= d for k in buckets):
        todo = buckets.pop(d, ())
        for m in sorted(todo, key=ExponentVector.order_key):
            forced = None
            for i in nodes:
                if not ctx.is_dominant(m, i):
                    c = K[i].get(m, ZERO)
                    if forced is None:
                        forced = c
                    elif forced != c:
                        raise Inconsistent(
                            f"directions disagree on {format_vector(m)}", witness=m
                        )
            if forced is None:
                val = ONE if m == seed else ZERO
                if m != seed and any(K[i].get(m) for i in nodes):
                    collisions.append(m)
            else:
                val = forced
            if val:
                D[m] = val
            for i in nodes:
                if not ctx.is_dominant(m, i):
                    continue
                a = val - K[i].get(m, ZERO)
                if not a:
                    continue
                for f, c in e_it(ctx, m, i).terms.items():
                    K[i][f] = K[i].get(f, ZERO) + a * c
                    if f != m and f.deg <= max_degree:
                        buckets[f.deg].add(f)
        d += 1
    complete = not any(
        c and f.deg > max_degree for i in nodes for f, c in K[i].items()
    )
    return CharacterSeries(AlgebraElement(ctx, D), max_degree, complete, seed, collisions)


_FUND_CACHE = {}


def fundamental(ctx, i, l, max_degree):
    """F_t(Y_{i,l}), computed once at l = 0 and translated."""
    key = (ctx.signature(), i)
    got = _FUND_CACHE.get(key)
    if got is None or (got.max_degree < max_degree and not got.complete):
        got = ft_algorithm(ctx, ctx.Yvec(i, 0), max_degree)
        _FUND_CACHE[key] = got
    terms = {
        shift(e, -l): c for e, c in got.element.terms.items() if e.deg <= max_degree
    }
    complete = got.complete and (got.top_degree() <= max_degree)
    return CharacterSeries(
        AlgebraElement(ctx, terms), max_degree, complete, ctx.Yvec(i, l)
    )


def chi_qt(ctx, x, max_degree):
    """Ordered product over ascending l of F_t(Y_{i,l})^{x_{i,l}}."""
    if ctx.s:
        raise GenericContext("chi_qt is the generic character; use chi_eps_t")
    acc = ctx.one()
    complete = True
    for (i, l), p in sorted(x.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        f = fundamental(ctx, i, l, max_degree)
        complete = complete and f.complete
        for _ in range(p):
            acc = ctx.multiply(acc, f.element, max_degree)
    seed = ExponentVector(dict(x))
    return CharacterSeries(acc, max_degree, complete, seed)


def e_t(ctx, m, max_degree, route="closed"):
    """Standard element E_t(m) = m (prod Y^u)^-1 ->prod F_t(Y_{i,l})^{u_{i,l}(m)}.

    At s >= 1 the window lift M (l = 0..s-1) is pushed through tau:
    E_t(m) = m tau(M)^-1 tau(E_t(M)).
    """
    if not ctx.is_dominant(m):
        raise NotIDominant("E_t needs a dominant monomial", witness=m)
    u = ctx.u(m)
    ypart = ExponentVector(dict(u))
    pre = AlgebraElement(ctx, {m - ypart: IntLaurent.monomial(ctx.phase(m, -ypart))})
    rel = max_degree - m.deg
    if ctx.s == 0:
        ch = chi_qt(ctx, u, rel)
        body = ch.element
    else:
        ctx.check_root_of_unity()
        ch = chi_qt(ctx.generic(), u, rel)
        body = tau_st(ctx, ch.element, method="ordered" if route == "tau" else "closed")
    out = ctx.multiply(pre, body)
    return CharacterSeries(out, max_degree, ch.complete, m)


def chi_eps_t(ctx, x, max_degree, route="tau"):
    """Character at a primitive s-th root of unity of a Rep monomial over Z/sZ.

    route 'tau' applies the ordered-word definition of tau to chi_qt of the
    window lift; route 'axquat' attaches t^(D1^- + D2^-) to each folded basis
    element.
    """
    ctx.check_root_of_unity()
    if not ctx.cd.flags["cc_le3"]:
        raise PreconditionCCLe3("some C_ij C_ji > 3")
    lift = {(i, l % ctx.s): p for (i, l), p in x.items()}
    ch = chi_qt(ctx.generic(), lift, max_degree)
    method = "ordered" if route == "tau" else "closed"
    out = tau_st(ctx, ch.element, method=method)
    return CharacterSeries(out, max_degree, ch.complete, fold(ch.seed, ctx.s))


# --------------------------------------------------------------------------
# classical shadow on commutative Y-monomials

@dataclass
class ClassicalResult:
    poly: YPoly
    degrees: dict
    complete: bool
    inconsistent: object = None


def classical_fm(ctx, seed_key, max_degree):
    """Classical algorithm on Y-monomials (sorted tuple keys) at t = 1.

    Reports ``inconsistent`` with a witness when two directions disagree or a
    monomial is regenerated at a different degree (the algorithm then has no
    well-defined sweep order).
    """
    nodes = list(ctx.cd.nodes)
    ainv = {}

    def A(i, l):
        key = (i, l)
        if key not in ainv:
            ainv[key] = ctx.pi_hat_monomial(ctx.Avec(i, l))
        return ainv[key]

    def udict(key):
        return dict(key)

    def dominant(key, i):
        return all(x >= 0 for (j, _), x in key if j == i)

    def expand(key, i):
        ri = ctx.cd.ri(i)
        us = [(l, x) for (j, l), x in key if j == i]
        out = {key: 1}
        for l, x in us:
            new = {}
            for k2, c in out.items():
                mono = k2
                for p in range(x + 1):
                    if p:
                        mono = YPoly.mono_mul(mono, A(i, l + ri))
                    new[mono] = new.get(mono, 0) + c * comb(x, p)
            out = new
        return out

    D = {}
    K = {i: {} for i in nodes}
    degree = {seed_key: 0}
    processed = set()
    buckets = defaultdict(list)
    buckets[0].append(seed_key)
    d = 0
    while d <= max_degree and any(k >= d for k in buckets):
        for m in sorted(set(buckets.pop(d, ()))):
            forced = None
            for i in nodes:
                if not dominant(m, i):
                    c = K[i].get(m, 0)
                    if forced is None:
                        forced = c
                    elif forced != c:
                        return ClassicalResult(YPoly(D), degree, False, m)
            val = (1 if m == seed_key else 0) if forced is None else forced
            if val:
                D[m] = val
            processed.add(m)
            for i in nodes:
                if not dominant(m, i):
                    continue
                a = val - K[i].get(m, 0)
                if not a:
                    continue
                for f, c in expand(m, i).items():
                    K[i][f] = K[i].get(f, 0) + a * c
                    if f == m:
                        continue
                    nd = d + _deg_gap(m, f, i)
                    if f in processed or degree.get(f, nd) != nd:
                        return ClassicalResult(YPoly(D), degree, False, f)
                    degree[f] = nd
                    if nd <= max_degree:
                        buckets[nd].append(f)
        d += 1
    complete = not any(
        c and degree.get(f, 0) > max_degree for i in nodes for f, c in K[i].items()
    )
    return ClassicalResult(YPoly(D), degree, complete, None)


def _deg_gap(m, f, i):
    # number of A_i^-1 factors: each one lowers the total Y_i-exponent by 2
    wm = sum(x for (j, _), x in m if j == i)
    wf = sum(x for (j, _), x in f if j == i)
    return (wm - wf) // 2


# --------------------------------------------------------------------------
# probes

@dataclass
class ProbeResult:
    outcome: str
    degree: int
    series: object = None
    antidominant: list = field(default_factory=list)
    invariant_values: set = field(default_factory=set)
    invariant_ok: bool = None
    null_vector: tuple = None
    witness: object = None

    def label(self):
        if self.outcome == "StoppedAt":
            return f"StoppedAt({self.degree})"
        if self.outcome == "NotStoppedBy":
            return f"NotStoppedBy({self.degree})"
        return f"Inconsistent({format_vector(self.witness) if isinstance(self.witness, ExponentVector) else self.witness})"


def stops_probe(ctx, seed, max_degree, *, allow_any_cartan=False):
    """Run the algorithm and report whether it stops, plus the obstruction
    sum_i alpha_i u_i on every monomial for matrices with a positive null
    vector alpha."""
    try:
        ch = ft_algorithm(ctx, seed, max_degree, allow_any_cartan=allow_any_cartan)
    except Inconsistent as exc:
        return ProbeResult("Inconsistent", max_degree, witness=exc.witness)
    anti = [e for e in ch.element.terms if ctx.is_antidominant(e)]
    alpha = positive_null_vector(ctx.cd)
    values = set()
    ok = None
    if alpha is not None:

        def weight(e):
            return sum(alpha[i - 1] * x for (i, _), x in ctx.u(e).items())

        base = weight(seed)
        values = {weight(e) for e in ch.element.terms}
        ok = values == {base}
    if ch.complete:
        out = ProbeResult("StoppedAt", ch.top_degree(), ch, anti, values, ok, alpha)
    else:
        out = ProbeResult("NotStoppedBy", max_degree, ch, anti, values, ok, alpha)
    return out


# --------------------------------------------------------------------------
# star product on Rep_t

def _dominant_coeffs(el, normalize=None):
    ctx = el.ctx
    return {e: c for e, c in el.terms.items() if ctx.is_dominant(e)}


def star_product(ctx, A, B, max_degree):
    """alpha * beta = chi^-1(pi(chi(alpha) chi(beta))) for Rep_t elements given
    as dicts {frozen Rep monomial: IntLaurent}.  Rep monomials are tuples of
    ((i, l), exponent)."""
    if ctx.s:
        raise GenericContext("star_product is implemented at generic q")

    def chi(elem):
        out = ctx.element()
        complete = True
        for key, c in elem.items():
            ch = chi_qt(ctx, dict(key), max_degree)
            complete = complete and ch.complete
            out = out + ch.element * c
        return out, complete

    a, ca = chi(A)
    b, cb = chi(B)
    prod = ctx.multiply(a, b, max_degree)
    # peel off E_t(b(m)) for the dominant monomials, highest first
    rest = dict(prod.terms)
    result = {}
    cache = {}
    while True:
        dom = sorted((e for e, c in rest.items() if c and ctx.is_dominant(e)),
                     key=ExponentVector.order_key)
        if not dom:
            break
        m = dom[0]
        c = rest[m]
        if m not in cache:
            cache[m] = e_t(ctx, m, max_degree)
        Em = cache[m]
        if not Em.complete and not (ca and cb):
            raise TruncationInsufficient("dominant heads beyond max_degree")
        key = tuple(sorted(ctx.u(m).items()))
        result[key] = result.get(key, ZERO) + c
        for f, d in Em.element.terms.items():
            rest[f] = rest.get(f, ZERO) - c * d
        rest = {f: x for f, x in rest.items() if x}
    return {k: c for k, c in result.items() if c}


def rep_key(x):
    return tuple(sorted(x.items()))
