from itertools import product

import pytest

from qtchar.cartan import named_matrix, validate_cartan
from qtchar.charalg import (
    chi_eps_t,
    chi_qt,
    classical_fm,
    e_t,
    format_rep,
    ft_algorithm,
    fundamental,
    parse_rep,
    rep_key,
    star_product,
    stops_probe,
)
from qtchar.errors import GenericContext, NotIDominant, ParseError, PreconditionCCLe3
from qtchar.laurent import IntLaurent, t_power
from qtchar.screening import kernel_decompose
from qtchar.yalgebra import AlgebraContext, ExponentVector, YPoly, fold

ONE = IntLaurent(1)


def ctx_of(C, s=0, **kw):
    return AlgebraContext(validate_cartan(C, **kw), s)


def test_sl2_fundamental():
    ctx = ctx_of([[2]])
    F = ft_algorithm(ctx, ExponentVector.Y(1, 0), 5)
    assert F.complete
    assert F.element == ctx.Y(1, 0) * (ctx.one() + ctx.Ainv(1, 1) * t_power(1))
    assert F.top_degree() == 1


def test_b2_fundamental_closed_form():
    ctx = ctx_of([[2, -2], [-1, 2]])
    one, t = ctx.one(), t_power(1)
    F = ft_algorithm(ctx, ExponentVector.Y(1, 0), 10)
    want = ctx.Y(1, 0) * (
        one + ctx.Ainv(1, 1) * (one + ctx.Ainv(2, 3) * (one + ctx.Ainv(1, 5) * t) * t) * t
    )
    assert F.complete and F.element == want


def test_decoupled_blocks():
    ctx = ctx_of([[2, 0], [0, 2]], allow_decomposable=True)
    F = ft_algorithm(ctx, ExponentVector.Y(1, 0), 5)
    assert F.element == ctx.Y(1, 0) * (ctx.one() + ctx.Ainv(1, 1) * t_power(1))


def test_algorithm_preconditions():
    ctx = ctx_of([[2, -2], [-2, 2]])
    with pytest.raises(PreconditionCCLe3):
        ft_algorithm(ctx, ExponentVector.Y(1, 0), 4)
    with pytest.raises(NotIDominant):
        ft_algorithm(ctx_of([[2]]), ExponentVector.A(1, 1), 4)
    with pytest.raises(GenericContext):
        ft_algorithm(ctx_of([[2]], 3), ExponentVector.Y(1, 0), 4)


def test_chi_qt_examples():
    ctx = ctx_of(named_matrix("A", 2))
    assert chi_qt(ctx, {(2, 3): 1}, 6).element == fundamental(ctx, 2, 3, 6).element
    sl2 = ctx_of([[2]])
    ch = chi_qt(sl2, {(1, 0): 1, (1, 1): 1, (1, 2): 1}, 6)
    assert ch.complete and len(ch.element.terms) == 8
    head = ExponentVector({(1, 0): 1, (1, 1): 1, (1, 2): 1})
    assert ch.element.coeff(head) == ONE


def test_chi_qt_at_t_one_is_classical():
    for C, x in (
        ([[2]], {(1, 0): 1}),
        ([[2]], {(1, 0): 1, (1, 2): 1}),
        ([[2, -2], [-1, 2]], {(1, 0): 1}),
        (named_matrix("A", 2), {(1, 0): 1, (2, 1): 1}),
        (named_matrix("G2"), {(2, 0): 1}),
    ):
        ctx = ctx_of(C)
        ch = chi_qt(ctx, x, 12)
        assert ch.complete
        if len(x) == 1:
            cl = classical_fm(ctx, rep_key(x), 12)
            assert cl.complete and ctx.pi_hat(ch.element) == cl.poly
        else:
            prod = YPoly({(): 1})
            for k in x:
                prod = prod * ctx.pi_hat(fundamental(ctx, k[0], k[1], 12).element)
            assert ctx.pi_hat(ch.element) == prod


def test_sl2_classical_character():
    ctx = ctx_of([[2]])
    cl = classical_fm(ctx, (((1, 0), 1),), 5)
    assert cl.poly == YPoly({(((1, 0), 1),): 1, (((1, 2), -1),): 1})


def test_complete_characters_lie_in_every_kernel():
    for C in ([[2]], named_matrix("A", 2), [[2, -2], [-1, 2]], named_matrix("G2")):
        ctx = ctx_of(C)
        ch = chi_qt(ctx, {(1, 0): 1, (ctx.cd.n, 1): 1}, 12)
        assert ch.complete
        assert all(kernel_decompose(ctx, ch, i).ok for i in ctx.cd.nodes)


def test_e_t_of_generator_is_fundamental():
    ctx = ctx_of([[2, -2], [-1, 2]])
    assert e_t(ctx, ExponentVector.Y(2, 4), 10).element == fundamental(ctx, 2, 4, 10).element


def _word(ctx, bits, step):
    w = ctx.Y(1, 0)
    for k, b in enumerate(bits, start=1):
        if b:
            w = w * ctx.Ainv(1, k * step)
        w = w * ctx.Y(1, k * step) if k < len(bits) else w
    return w


def test_sl2_root_of_unity_standard_element():
    ctx = ctx_of([[2]], 3)
    m = ExponentVector({(1, 0): 1, (1, 1): 1, (1, 2): 1})
    E = e_t(ctx, m, 10)
    assert E.complete and len(E.element.terms) == 8
    # ratios of E's coefficients to the words Y0 [A1] Y1 [A2] Y2 [A3] at s = 3
    ratios = {
        (0, 0, 0): 0, (0, 0, 1): -1, (0, 1, 0): -1, (0, 1, 1): 0,
        (1, 0, 0): 1, (1, 0, 1): 0, (1, 1, 0): 2, (1, 1, 1): 3,
    }
    for bits in product((0, 1), repeat=3):
        w = _word(ctx, bits, 1)
        ((e, c),) = w.terms.items()
        assert E.element.coeff(e) == c.shift(ratios[bits])
    # the antidominant wrap-around monomial has alpha = 0 and only L(m) reaches
    # it, so its coefficient must be bar-symmetric
    wrap = ExponentVector(m.y, {(1, 0): 1, (1, 1): 1, (1, 2): 1})
    assert ctx.normalize_invariant(wrap) == 0
    assert ctx.is_antidominant(wrap)
    assert E.element.coeff(wrap).is_bar_symmetric()


def test_far_from_wrap_matches_folded_generic():
    g = ctx_of([[2]])
    big = ctx_of([[2]], 40)
    m = ExponentVector({(1, 3): 1, (1, 5): 1})
    gen = e_t(g, m, 6).element
    rou = e_t(big, m, 6).element
    assert rou.terms == {fold(e, 40): c for e, c in gen.terms.items()}


def test_eps_characters():
    ctx = ctx_of([[2]], 3)
    x = {(1, 0): 1, (1, 1): 1, (1, 2): 1}
    a = chi_eps_t(ctx, x, 8)
    assert a.element == chi_eps_t(ctx, x, 8, route="axquat").element
    assert a.element == e_t(ctx, ExponentVector(x), 8).element
    # t = 1 shadow is the folded classical character of the window lift
    lift = chi_qt(ctx.generic(), x, 8).element
    folded = YPoly()
    for k, c in ctx.generic().pi_hat(lift).terms.items():
        key = {}
        for (i, l), u in k:
            key[(i, l % 3)] = key.get((i, l % 3), 0) + u
        folded = folded + YPoly({tuple(sorted((q, u) for q, u in key.items() if u)): c})
    assert ctx.pi_hat(a.element) == folded


def test_eps_characters_lie_in_every_kernel():
    for C, s in (([[2]], 3), (named_matrix("A", 2), 5), ([[2, -2], [-1, 2]], 5)):
        ctx = ctx_of(C, s)
        ch = chi_eps_t(ctx, {(1, 0): 1, (1, 1): 1}, 6)
        assert all(kernel_decompose(ctx, ch, i).ok for i in ctx.cd.nodes)


def test_rep_parsing():
    assert parse_rep("X[1,0]*X[1,2]") == {(1, 0): 1, (1, 2): 1}
    assert parse_rep("X[0] X[0]", 1) == {(1, 0): 2}
    assert format_rep({(1, 2): 1, (2, 0): 2}) == "X[2,0]^2*X[1,2]"
    with pytest.raises(ParseError):
        parse_rep("X[1,0]^-1")


def test_star_product():
    ctx = ctx_of([[2]])
    X0, X2 = rep_key({(1, 0): 1}), rep_key({(1, 2): 1})
    assert star_product(ctx, {X0: ONE}, {(): ONE}, 6) == {X0: ONE}
    assert star_product(ctx, {X0: ONE}, {X2: ONE}, 6) == {rep_key({(1, 0): 1, (1, 2): 1}): ONE}
    assert star_product(ctx, {X2: ONE}, {X0: ONE}, 6) == {
        rep_key({(1, 0): 1, (1, 2): 1}): ONE,
        (): IntLaurent({2: 1, 0: -1}),
    }
    diag = ctx_of([[2, 0], [0, 2]], allow_decomposable=True)
    a, b = rep_key({(1, 0): 1}), rep_key({(2, 1): 1})
    assert star_product(diag, {a: ONE}, {b: ONE}, 6) == star_product(diag, {b: ONE}, {a: ONE}, 6)


def test_stops_probe_outcomes():
    assert stops_probe(ctx_of([[2]]), ExponentVector.Y(1, 0), 10).label() == "StoppedAt(1)"
    assert stops_probe(ctx_of([[2, -2], [-1, 2]]), ExponentVector.Y(1, 0), 10).label() == "StoppedAt(3)"
    assert stops_probe(ctx_of(named_matrix("G2")), ExponentVector.Y(1, 0), 12).outcome == "StoppedAt"


def test_multiplicativity_spot_check():
    ctx = ctx_of(named_matrix("B", 2))
    m1, m2 = {(1, 0): 1, (2, 1): 1}, {(1, 1): 1, (2, 3): 1}
    both = {**m1, **m2}
    lhs = chi_qt(ctx, both, 6).element
    rhs = ctx.multiply(chi_qt(ctx, m1, 6).element, chi_qt(ctx, m2, 6).element, 6)
    assert lhs == rhs
