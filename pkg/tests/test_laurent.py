import pytest

from qtchar.laurent import IntLaurent, quantum_integer, split_sym_neg, t_power

from strategies import random_laurent, rng


def test_arithmetic_basics():
    a = IntLaurent({1: 1, -1: 1})
    assert a * a == IntLaurent({2: 1, 0: 2, -2: 1})
    assert a - a == IntLaurent()
    assert (a ** 0) == IntLaurent(1)
    assert a.shift(2) == IntLaurent({3: 1, 1: 1})
    assert not IntLaurent({3: 0})


def test_zero_coefficients_are_dropped():
    p = IntLaurent({2: 1}) + IntLaurent({2: -1, 0: 5})
    assert p.coeffs == {0: 5}
    assert len(p) == 1


def test_quantum_integers():
    assert quantum_integer(0) == IntLaurent()
    assert quantum_integer(1) == IntLaurent(1)
    assert quantum_integer(2) == IntLaurent({1: 1, -1: 1})
    assert quantum_integer(-2) == -quantum_integer(2)
    assert quantum_integer(3) == IntLaurent({2: 1, 0: 1, -2: 1})


def test_bar_and_substitution():
    p = IntLaurent({3: 2, -1: -1})
    assert p.bar() == IntLaurent({-3: 2, 1: -1})
    assert p.bar().bar() == p
    assert p.substitute_power(2) == IntLaurent({6: 2, -2: -1})
    assert p.at_one() == 1


def test_format_and_parse_round_trip():
    p = IntLaurent({2: 1, 0: -3, -1: 2})
    assert p.format() == "t^2 - 3 + 2*t^-1"
    assert IntLaurent.parse(p.format()) == p
    assert IntLaurent.parse("z^3 - 2 + z^-3", var="z") == IntLaurent({3: 1, 0: -2, -3: 1})
    assert str(IntLaurent()) == "0"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        IntLaurent.parse("t^^2")
    with pytest.raises(ValueError):
        IntLaurent.parse("")


def test_json_round_trip():
    p = IntLaurent({-4: 7, 1: -1})
    assert IntLaurent.from_json(p.to_json()) == p


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        t_power(1) ** -1


def test_split_sym_neg_examples():
    mu, p = split_sym_neg(IntLaurent({-1: 1}))
    assert mu == IntLaurent() and p == IntLaurent({-1: 1})
    mu, p = split_sym_neg(IntLaurent({1: 1}))
    assert mu == IntLaurent({1: 1, -1: 1}) and p == IntLaurent({-1: -1})


def test_ring_laws_random():
    r = rng(11)
    for _ in range(200):
        a, b, c = (random_laurent(r) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert (a * b).bar() == a.bar() * b.bar()
        assert (a * b).at_one() == a.at_one() * b.at_one()
