import pytest

from qtchar.cartan import named_matrix, validate_cartan
from qtchar.charalg import e_t
from qtchar.errors import HypothesisViolated, TruncationInsufficient
from qtchar.kl import (
    below,
    collapsed_P,
    degree_bound,
    dominant_closure,
    ft_s_nonfinite,
    kl_decompose,
    kl_nonfinite,
)
from qtchar.laurent import IntLaurent, t_power
from qtchar.yalgebra import AlgebraContext, ExponentVector, parse_vector

T_INV = IntLaurent({-1: 1})
SEED = {(1, 0): 1, (1, 1): 1, (1, 2): 1}


def ctx_of(C, s=0):
    return AlgebraContext(validate_cartan(C), s)


def check_invariants(res):
    """Reassembly, bar-invariance of L, and the shape of P and mu."""
    ctx = res.ctx
    for x in res.basis:
        lower = [z for z in res.basis if below(x, z)]
        total = res.L[x]
        for z in lower:
            total = total + res.L[z] * res.p(z, x)
        E = res.E[x].element * t_power(res.alpha[x])
        assert total == E
        assert res.L[x].bar() == res.L[x]
        assert res.L[x].coeff(x) == t_power(res.alpha[x])
    for p in res.P.values():
        assert p.max_exp() < 0
    for mu in res.mu.values():
        assert mu.is_bar_symmetric()
    assert all(ctx.is_dominant(x) for x in res.basis)


def test_sl2_generic():
    ctx = ctx_of([[2]])
    res = kl_decompose(ctx, ExponentVector(SEED), 10)
    assert res.status == "Complete"
    m, mp = res.basis
    assert mp == parse_vector("Y[0] A[1]^-1 Y[1] Y[2]", 1)
    assert res.p(mp) == T_INV
    one, t = ctx.one(), t_power(1)
    Y, A = (lambda l: ctx.Y(1, l)), (lambda l: ctx.Ainv(1, l))
    Lm = Y(0) * Y(1) * Y(2) * (one + A(3) * (one + A(1) * t) * t) * (one + A(2) * t)
    assert res.L[m] == Lm and len(Lm.terms) == 6
    Lmp = ctx.word_to_element("t^2 Y[0] A[1]^-1 Y[1] Y[2]") * (one + A(2) * t)
    assert res.L[mp] == Lmp and len(Lmp.terms) == 2
    check_invariants(res)


def test_sl2_root_of_unity():
    ctx = ctx_of([[2]], 3)
    res = kl_decompose(ctx, ExponentVector(SEED), 10)
    assert len(res.basis) == 4
    lower = res.lower()
    assert len(lower) == 3 and all(res.p(x) == T_INV for x in lower)
    m = res.seed
    Lm = ctx.basis(m) + ctx.word_to_element("Y[0] A[1]^-1 Y[2] A[3]^-1 Y[4] A[5]^-1") * t_power(3)
    assert res.L[m] == Lm and len(Lm.terms) == 2
    check_invariants(res)


def test_b2_root_of_unity():
    cd = validate_cartan([[2, -2], [-1, 2]])
    m = ExponentVector({(1, 0): 1, (1, 1): 1})
    res0 = kl_decompose(AlgebraContext(cd, 0), m, 12)
    assert res0.basis == [m]
    ctx = AlgebraContext(cd, 5)
    res = kl_decompose(ctx, m, 12)
    assert len(res.basis) == 2
    (low,) = res.lower()
    assert ctx.pi_hat_monomial(low) == ()
    assert res.p(low) == T_INV
    # the lower L is the bar-invariant monomial projecting to 1
    assert res.L[low] == ctx.bar_fixed(low)
    check_invariants(res)


def test_a2_affine_root_of_unity():
    ctx = ctx_of(named_matrix("A_1", 3), 3)
    res = kl_nonfinite(ctx, ExponentVector({(1, 0): 1, (1, 2): 1}), 6)
    assert res.status == "Truncated"
    mp = ExponentVector({(1, 0): 1, (1, 2): 1}, {(1, 1): 1})
    assert res.p(mp) == T_INV
    assert collapsed_P(res, (((1, 0), 1), ((1, 2), 1))) == (0, IntLaurent(1))
    assert collapsed_P(res, (((2, 1), 1), ((3, 1), 1))) == (1, T_INV)
    res2 = kl_nonfinite(ctx, ExponentVector({(2, 1): 1, (3, 1): 1}), 6)
    assert collapsed_P(res2, (((1, 0), 1), ((1, 2), 1))) == (2, IntLaurent({-1: 2}))
    check_invariants(res)


def test_nonfinite_requires_its_own_entry_point():
    ctx = ctx_of(named_matrix("A_1", 3), 3)
    with pytest.raises(HypothesisViolated):
        kl_decompose(ctx, ExponentVector.Y(1, 0), 4)


def test_ft_s_nonfinite_corrections():
    ctx = ctx_of(named_matrix("A_1", 3), 3)
    corr = []
    m = ExponentVector({(1, 0): 1, (1, 2): 1})
    F = ft_s_nonfinite(ctx, m, 5, corrections=corr)
    y, lam = corr[0]
    assert y == ExponentVector({(1, 0): 1, (1, 2): 1}, {(1, 1): 1})
    assert lam == T_INV
    assert [e for e in F.element.terms if ctx.is_dominant(e)] == [m]
    Fb = F.element * t_power(ctx.normalize_invariant(m))
    assert Fb.bar() == Fb
    corr = []
    ft_s_nonfinite(ctx, ExponentVector({(2, 1): 1, (3, 1): 1}), 5, corrections=corr)
    deg2 = [lam for y, lam in corr if y.deg == 2]
    assert deg2 == [T_INV, T_INV]


def test_ft_s_agrees_with_finite_case():
    ctx = ctx_of([[2]], 3)
    m = ExponentVector(SEED)
    res = kl_decompose(ctx, m, 10)
    F = ft_s_nonfinite(ctx, m, 10)
    doms = [e for e in F.element.terms if ctx.is_dominant(e)]
    assert doms == [m]
    assert res.E[m].complete


def test_finite_bound_and_truncation():
    ctx = ctx_of([[2]])
    m = ExponentVector(SEED)
    assert degree_bound(ctx, m) == 1
    with pytest.raises(TruncationInsufficient):
        kl_decompose(ctx, m, 0)
    basis, _, complete = dominant_closure(ctx, ExponentVector.Y(1, 4), 5)
    assert basis == [ExponentVector.Y(1, 4)] and complete


def test_tie_break_audit():
    ctx = ctx_of(named_matrix("A", 2))
    m = ExponentVector({(1, 0): 1, (2, 1): 1, (1, 2): 1, (2, 3): 1})
    a = kl_decompose(ctx, m, 12)
    b = kl_decompose(ctx, m, 12, tie_break="revlex")
    assert a.P == b.P
    assert all(a.L[x] == b.L[x] for x in a.basis)
    check_invariants(a)


def test_battery_invariants():
    cases = [
        ([[2]], 0, {(1, 0): 2, (1, 2): 1}),
        (named_matrix("A", 2), 0, {(1, 0): 1, (1, 2): 1}),
        (named_matrix("A", 2), 5, {(1, 0): 1, (2, 1): 1}),
        ([[2, -2], [-1, 2]], 0, {(1, 0): 1, (1, 2): 1}),
        ([[2]], 3, {(1, 0): 2}),
    ]
    for C, s, seed in cases:
        res = kl_decompose(ctx_of(C, s), ExponentVector(seed), 10)
        check_invariants(res)


def test_json_shape():
    res = kl_decompose(ctx_of([[2]], 3), ExponentVector(SEED), 10)
    out = res.to_json()
    assert out["status"] == "Complete"
    assert len(out["P"]) == 4 and len(out["L"]) == 4
    assert {IntLaurent.from_json(p["poly"]) for p in out["P"]} == {IntLaurent(1), T_INV}


def test_e_t_matches_kl_cache():
    ctx = ctx_of([[2]])
    m = ExponentVector(SEED)
    res = kl_decompose(ctx, m, 10)
    assert res.E[m].element == e_t(ctx, m, 10).element
