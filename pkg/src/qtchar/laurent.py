"""Sparse Laurent polynomials in one variable with exact integer coefficients.

The same class serves the deformation parameter ``t`` and the spectral
variable ``z``; only the printed variable name differs.
"""

from __future__ import annotations

import re


class IntLaurent:
    """Immutable map exponent -> nonzero integer."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            c = {}
        elif isinstance(coeffs, IntLaurent):
            c = coeffs._c
        elif isinstance(coeffs, int):
            c = {0: coeffs} if coeffs else {}
        else:
            c = {int(k): int(v) for k, v in dict(coeffs).items() if v}
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls._raw({exp: coeff} if coeff else {})

    # -- basic access ------------------------------------------------------
    @property
    def coeffs(self):
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, k):
        return self._c.get(k, 0)

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def is_zero(self):
        return not self._c

    def max_exp(self):
        return max(self._c) if self._c else None

    def min_exp(self):
        return min(self._c) if self._c else None

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntLaurent(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = IntLaurent(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        c = dict(self._c)
        for k, v in other._c.items():
            w = c.get(k, 0) + v
            if w:
                c[k] = w
            else:
                c.pop(k, None)
        return IntLaurent._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return IntLaurent._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntLaurent(other)
        return self + (-other)

    def __rsub__(self, other):
        return IntLaurent(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return IntLaurent._raw({})
            return IntLaurent._raw({k: v * other for k, v in self._c.items()})
        if not isinstance(other, IntLaurent):
            return NotImplemented
        c = {}
        for a, x in self._c.items():
            for b, y in other._c.items():
                c[a + b] = c.get(a + b, 0) + x * y
        return IntLaurent._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = IntLaurent(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k):
        """Multiply by the monomial of exponent ``k``."""
        if not k:
            return self
        return IntLaurent._raw({e + k: v for e, v in self._c.items()})

    def bar(self):
        """Exponent negation t -> 1/t."""
        return IntLaurent._raw({-k: v for k, v in self._c.items()})

    def substitute_power(self, r):
        """Return p(z^r)."""
        return IntLaurent._raw({k * r: v for k, v in self._c.items()})

    def at_one(self):
        return sum(self._c.values())

    def is_bar_symmetric(self):
        return self == self.bar()

    # -- display -----------------------------------------------------------
    def format(self, var="t"):
        if not self._c:
            return "0"
        parts = []
        for k, v in sorted(self._c.items(), reverse=True):
            if k == 0:
                mono = ""
            elif k == 1:
                mono = var
            else:
                mono = f"{var}^{k}"
            if mono:
                if v == 1:
                    term = mono
                elif v == -1:
                    term = "-" + mono
                else:
                    term = f"{v}*{mono}"
            else:
                term = str(v)
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __str__(self):
        return self.format("t")

    def __repr__(self):
        return f"IntLaurent({dict(sorted(self._c.items()))})"

    # -- serialization -----------------------------------------------------
    def to_json(self):
        return {str(k): v for k, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, obj):
        return cls({int(k): int(v) for k, v in obj.items()})

    @classmethod
    def parse(cls, text, var="t"):
        """Parse strings such as ``t^2 - 3 + 2*t^-1``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial")
        term_re = re.compile(
            rf"([+-]?)(\d+)?(?:\*?({re.escape(var)})(?:\^(-?\d+))?)?"
        )
        out = IntLaurent()
        pos = 0
        while pos < len(s):
            m = term_re.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            coeff = int(m.group(2)) if m.group(2) is not None else 1
            exp = 0
            if m.group(3):
                exp = int(m.group(4)) if m.group(4) is not None else 1
            out = out + IntLaurent.monomial(exp, sign * coeff)
            pos = m.end()
        return out


ZERO = IntLaurent()
ONE = IntLaurent(1)


def t_power(k):
    return IntLaurent.monomial(k)


def quantum_integer(l):
    """[l] = (z^l - z^-l)/(z - z^-1); [0] = 0 and [-l] = -[l]."""
    if l == 0:
        return IntLaurent()
    sign = 1 if l > 0 else -1
    n = abs(l)
    return IntLaurent({k: sign for k in range(-n + 1, n, 2)})


def bar(p):
    return p.bar()


def split_sym_neg(c):
    """Split ``c`` as mu + p with mu bar-symmetric and p in t^-1 Z[t^-1].

    mu_k = c_k for k >= 0, mu_-k = c_k, p_-k = c_-k - c_k for k > 0.
    """
    mu = {}
    p = {}
    for k in {abs(e) for e in c.coeffs}:
        if k == 0:
            mu[0] = c[0]
            continue
        mu[k] = mu[-k] = c[k]
        p[-k] = c[-k] - c[k]
    return IntLaurent(mu), IntLaurent(p)
