"""Generalized Cartan matrices, symmetrizers and their z-deformations.

Nodes are numbered 1..n in every public function, matching the usual
notation Y[i,l]; matrices are stored 0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import sympy

from .errors import (
    Decomposable,
    HypothesisViolated,
    NotCartan,
    NotSymmetrizable,
    OverrideInconsistent,
    SingularCz,
)
from .laurent import IntLaurent, quantum_integer

FLAG_NAMES = (
    "symmetric",
    "symmetrizable",
    "indecomposable",
    "bz_symmetric",
    "b_symmetric",
    "q_symmetrizable",
    "cc_le3",
    "det_cz_nonzero",
    "finite_type",
    "affine_type",
)


@dataclass(frozen=True)
class CartanData:
    C: tuple
    r: tuple
    rvee: int
    flags: dict = field(compare=False)
    name: str = field(default="", compare=False)

    @property
    def n(self):
        return len(self.C)

    @property
    def nodes(self):
        return range(1, self.n + 1)

    def c(self, i, j):
        return self.C[i - 1][j - 1]

    def ri(self, i):
        return self.r[i - 1]

    def to_json(self):
        return {
            "name": self.name,
            "matrix": [list(row) for row in self.C],
            "symmetrizer": list(self.r),
            "rvee": self.rvee,
            "flags": {k: bool(self.flags[k]) for k in FLAG_NAMES},
        }


# --------------------------------------------------------------------------
# validation

def _check_cartan(C):
    n = len(C)
    for row in C:
        if len(row) != n:
            raise NotCartan("matrix is not square")
    for i in range(n):
        if C[i][i] != 2:
            raise NotCartan(f"diagonal entry ({i + 1},{i + 1}) is {C[i][i]}")
        for j in range(n):
            if i == j:
                continue
            if C[i][j] > 0:
                raise NotCartan(f"positive off-diagonal entry at ({i + 1},{j + 1})")
            if (C[i][j] == 0) != (C[j][i] == 0):
                raise NotCartan(f"zero pattern not symmetric at ({i + 1},{j + 1})")


def components(C):
    """Connected components of the nonzero-entry graph (0-based)."""
    n = len(C)
    seen = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            a = stack.pop()
            for b in range(n):
                if b not in seen and C[a][b] != 0:
                    seen.add(b)
                    comp.append(b)
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def find_symmetrizer(C):
    """Gcd-normalized positive r with r_i C_ij = r_j C_ji, or None."""
    n = len(C)
    r = [None] * n
    for comp in components(C):
        root = comp[0]
        r[root] = Fraction(1)
        queue = [root]
        while queue:
            a = queue.pop(0)
            for b in range(n):
                if b == a or C[a][b] == 0:
                    continue
                val = r[a] * C[a][b] / C[b][a]
                if r[b] is None:
                    r[b] = val
                    queue.append(b)
                elif r[b] != val:
                    return None
    den = lcm(*(x.denominator for x in r))
    ints = [int(x * den) for x in r]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def is_symmetrized_by(C, r):
    n = len(C)
    return all(r[i] * C[i][j] == r[j] * C[j][i] for i in range(n) for j in range(n))


def compute_rvee(C, r):
    """max({1} u {r_i - 1 - C_ij : i != j, C_ij != 0}).

    This is the largest |l-k| for which two generators A_{i,l}, A_{j,k} with
    i != j fail to commute, and it equals max r_i on finite types.
    """
    n = len(C)
    best = 1
    for i in range(n):
        for j in range(n):
            if i != j and C[i][j] != 0:
                best = max(best, r[i] - 1 - C[i][j])
    return best


def validate_cartan(matrix, r_override=None, *, allow_decomposable=False, name=""):
    """Validate a generalized Cartan matrix and compute all derived data."""
    try:
        C = tuple(tuple(int(x) for x in row) for row in matrix)
    except (TypeError, ValueError) as exc:
        raise NotCartan(f"not an integer matrix: {exc}") from None
    if not C:
        raise NotCartan("empty matrix")
    _check_cartan(C)
    indecomposable = len(components(C)) == 1
    if not indecomposable and not allow_decomposable:
        raise Decomposable("matrix is decomposable; pass allow_decomposable to proceed")
    natural = find_symmetrizer(C)
    if r_override is not None:
        r = tuple(int(x) for x in r_override)
        if len(r) != len(C) or any(x <= 0 for x in r) or not is_symmetrized_by(C, r):
            raise OverrideInconsistent(f"{r} does not symmetrize the matrix")
    elif natural is None:
        raise NotSymmetrizable("no positive symmetrizer")
    else:
        r = natural
    flags = {
        "symmetric": all(C[i][j] == C[j][i] for i in range(len(C)) for j in range(len(C))),
        "symmetrizable": natural is not None,
        "indecomposable": indecomposable,
        "b_symmetric": is_symmetrized_by(C, r),
        "cc_le3": all(
            C[i][j] * C[j][i] <= 3 for i in range(len(C)) for j in range(len(C)) if i != j
        ),
    }
    cd = CartanData(C=C, r=r, rvee=compute_rvee(C, r), flags=flags, name=name)
    zm = z_matrices(cd)
    flags["bz_symmetric"] = _is_symmetric_matrix(zm["B(z)"])
    flags["q_symmetrizable"] = flags["b_symmetric"] and zm["C'(z)"] == zm["C(z)"]
    flags["det_cz_nonzero"] = not det_cz(cd).is_zero()
    kind = classify_type(C, r)
    flags["finite_type"] = kind == "finite"
    flags["affine_type"] = kind == "affine"
    return cd


def _is_symmetric_matrix(M):
    n = len(M)
    return all(M[i][j] == M[j][i] for i in range(n) for j in range(n))


# --------------------------------------------------------------------------
# z-matrices

def z_matrices(cd):
    """C(z), B(z), C'(z), B'(z) as tuples of tuples of IntLaurent."""
    n = cd.n
    C, r = cd.C, cd.r
    Cz, Cp = [], []
    for i in range(n):
        row, rowp = [], []
        for j in range(n):
            if i == j:
                e = IntLaurent({r[i]: 1, -r[i]: 1})
                row.append(e)
                rowp.append(e)
            else:
                row.append(quantum_integer(C[i][j]))
                rowp.append(quantum_integer(C[i][j]).substitute_power(r[i]))
        Cz.append(tuple(row))
        Cp.append(tuple(rowp))
    Bz = tuple(tuple(quantum_integer(r[i]) * Cz[i][j] for j in range(n)) for i in range(n))
    Bp = tuple(tuple(quantum_integer(r[i]) * Cp[i][j] for j in range(n)) for i in range(n))
    return {"C(z)": tuple(Cz), "B(z)": Bz, "C'(z)": tuple(Cp), "B'(z)": Bp}


def bz_condition(cd):
    """Entrywise condition: B symmetric and C_ij != C_ji => r_i = -C_ji, r_j = -C_ij."""
    n, C, r = cd.n, cd.C, cd.r
    if not is_symmetrized_by(C, r):
        return False
    for i in range(n):
        for j in range(n):
            if i != j and C[i][j] != C[j][i]:
                if r[i] != -C[j][i] or r[j] != -C[i][j]:
                    return False
    return True


def primed_condition(cd):
    """Entrywise condition: for i != j, r_i = 1 or C_ij in {-1, 0}."""
    n, C, r = cd.n, cd.C, cd.r
    return all(
        r[i] == 1 or C[i][j] in (-1, 0) for i in range(n) for j in range(n) if i != j
    )


# --------------------------------------------------------------------------
# determinants and inverse series

_z = sympy.Symbol("z")


def _to_sympy(p):
    return sum((sympy.Integer(v) * _z ** k for k, v in p.coeffs.items()), sympy.Integer(0))


def _from_sympy(expr):
    expr = sympy.expand(expr)
    if expr == 0:
        return IntLaurent()
    num, den = sympy.fraction(sympy.together(expr))
    dpoly = sympy.Poly(den, _z)
    if len(dpoly.terms()) != 1:
        raise ValueError("not a Laurent polynomial")
    (dexp,), dcoef = dpoly.terms()[0]
    out = {}
    for (k,), v in sympy.Poly(num, _z).terms():
        q = sympy.Rational(v, dcoef)
        out[k - dexp] = int(q)
    return IntLaurent(out)


def _laurent_det(M):
    n = len(M)
    if n == 0:
        return IntLaurent(1)
    S = sympy.Matrix(n, n, lambda i, j: _to_sympy(M[i][j]))
    return _from_sympy(S.det(method="berkowitz"))


def det_cz(cd):
    return _laurent_det(z_matrices(cd)["C(z)"])


def det_report(cd):
    """Determinant, shape check and the orders s of roots of unity killing it."""
    d = det_cz(cd)
    R = sum(cd.r)
    hyp = lemma_hypothesis(cd)
    shape = (
        not d.is_zero()
        and d.max_exp() == R
        and d.min_exp() == -R
        and d[R] == 1
        and d[-R] == 1
        and d == d.bar()
    )
    roots = []
    if not d.is_zero():
        poly = sympy.Poly(_to_sympy(d.shift(-d.min_exp())), _z)
        for s in range(1, 4 * max(R, 1) + 1):
            cyc = sympy.Poly(sympy.cyclotomic_poly(s, _z), _z)
            if poly.rem(cyc).is_zero:
                roots.append(s)
    return {
        "det": d,
        "identically_zero": d.is_zero(),
        "lemma_hypothesis": hyp,
        "shape_ok": shape,
        "vanishing_orders": roots,
    }


def lemma_hypothesis(cd):
    """C_ij < -1 => -C_ji <= r_i."""
    n, C, r = cd.n, cd.C, cd.r
    return all(
        -C[j][i] <= r[i] for i in range(n) for j in range(n) if i != j and C[i][j] < -1
    )


class InverseSeries:
    """Entries of C(z)^-1 expanded in decreasing powers of z."""

    def __init__(self, coeffs, order):
        self._coeffs = coeffs
        self.order = order

    def coeff(self, i, j, r):
        """pi_r of entry (i, j), nodes 1-based."""
        if r < -self.order:
            raise ValueError(f"exponent {r} beyond the computed order {self.order}")
        return self._coeffs[i - 1][j - 1].get(r, 0)

    def entry(self, i, j):
        return IntLaurent(self._coeffs[i - 1][j - 1])


def inverse_cz_series(cd, order):
    """Expand C(z)^-1 in Z((z^-1)) keeping exponents >= -order."""
    n = cd.n
    Cz = z_matrices(cd)["C(z)"]
    d = _laurent_det(Cz)
    if d.is_zero():
        raise SingularCz("det C(z) = 0")
    top = d.max_exp()
    lead = d[top]
    if lead not in (1, -1):
        raise HypothesisViolated(f"leading coefficient {lead} of det C(z) is not a unit")
    S = sympy.Matrix(n, n, lambda i, j: _to_sympy(Cz[i][j]))
    adj = [[_from_sympy(x) for x in row] for row in S.adjugate().tolist()]
    # 1/det = z^-top * sum_k b_k z^-k with sum_k a_k z^-k * sum b_k z^-k = 1
    a = {top - e: v for e, v in d.coeffs.items()}
    span = max(
        (p.max_exp() for row in adj for p in row if not p.is_zero()), default=0
    )
    depth = span - top + order + 1
    b = [0] * (depth + 1)
    for k in range(depth + 1):
        acc = 1 if k == 0 else 0
        for m in range(1, k + 1):
            acc -= a.get(m, 0) * b[k - m]
        b[k] = acc * lead  # lead is +-1
    inv = IntLaurent({-top - k: b[k] for k in range(depth + 1)})
    coeffs = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = adj[i][j] * inv
            row.append({e: v for e, v in prod.coeffs.items() if e >= -order})
        coeffs.append(row)
    return InverseSeries(coeffs, order)


def gamma_commutator(cd, i, l, j, k, series=None):
    """Exponent gamma with Y_{i,l} Y_{j,k} = t^gamma Y_{j,k} Y_{i,l} in the
    Heisenberg-type realization where C(z) is invertible."""
    rj = cd.ri(j)
    d = l - k
    need = abs(d) + rj + 1
    if series is None or series.order < need:
        series = inverse_cz_series(cd, need)

    def c(r):
        return series.coeff(j, i, r)

    return -c(-d - rj) - c(d + rj) + c(rj - d) + c(d - rj)


# --------------------------------------------------------------------------
# finite / affine classification

def _principal_minor(M, idx):
    if not idx:
        return 1
    return int(sympy.Matrix([[M[a][b] for b in idx] for a in idx]).det())


def classify_type(C, r):
    """'finite', 'affine' or 'other' for indecomposable symmetrizable C."""
    n = len(C)
    if len(components(C)) != 1 or not is_symmetrized_by(C, r):
        return "other"
    B = [[r[i] * C[i][j] for j in range(n)] for i in range(n)]
    leading = [_principal_minor(B, list(range(k))) for k in range(1, n + 1)]
    if all(x > 0 for x in leading):
        return "finite"
    if _principal_minor(B, list(range(n))) != 0:
        return "other"
    for drop in range(n):
        idx = [a for a in range(n) if a != drop]
        sub = [_principal_minor(B, idx[:k]) for k in range(1, len(idx) + 1)]
        if not all(x > 0 for x in sub):
            return "other"
    return "affine"


def positive_null_vector(cd, bound=12):
    """Positive integer alpha with sum_j alpha_j C_jk = 0 for all k, or None."""
    M = sympy.Matrix(cd.C).T
    ns = M.nullspace()
    if len(ns) == 1:
        v = ns[0]
        den = lcm(*(sympy.fraction(x)[1] for x in v))
        ints = [int(x * den) for x in v]
        if all(x < 0 for x in ints):
            ints = [-x for x in ints]
        g = 0
        for x in ints:
            g = gcd(g, x)
        ints = [x // g for x in ints]
        if all(x > 0 for x in ints):
            return tuple(ints)
    for alpha in itertools.product(range(1, bound + 1), repeat=cd.n):
        if all(sum(alpha[j] * cd.C[j][k] for j in range(cd.n)) == 0 for k in range(cd.n)):
            return alpha
    return None


# --------------------------------------------------------------------------
# named matrices

def named_matrix(kind, rank=None):
    """A few standard matrices in the convention r_i C_ij symmetric with r
    equal to 1 on short roots: 'A','B','C','D','E','F4','G2' finite, and
    affine 'A1','A2','F4_1','E6_2','A2_2','A4_2','A6_2','G2_1'."""
    if kind == "A":
        return _chain(rank)
    if kind == "B":
        M = _chain(rank)
        if rank >= 2:
            M[rank - 1][rank - 2] = -2
        return M
    if kind == "C":
        M = _chain(rank)
        if rank >= 2:
            M[rank - 2][rank - 1] = -2
        return M
    if kind == "D":
        M = _chain(rank)
        M[rank - 2][rank - 1] = M[rank - 1][rank - 2] = 0
        M[rank - 3][rank - 1] = M[rank - 1][rank - 3] = -1
        return M
    if kind == "E":
        M = _chain(rank - 1)
        M = [row + [0] for row in M] + [[0] * rank]
        M[rank - 1][rank - 1] = 2
        M[2][rank - 1] = M[rank - 1][2] = -1
        return M
    if kind == "F4":
        return [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    if kind == "G2":
        return [[2, -1], [-3, 2]]
    if kind == "A1_1":
        return [[2, -2], [-2, 2]]
    if kind == "A_1":
        M = _chain(rank)
        M[0][rank - 1] = M[rank - 1][0] = -1
        return M
    if kind == "F4_1":
        return [
            [2, -1, 0, 0, 0],
            [-1, 2, -1, 0, 0],
            [0, -1, 2, -1, 0],
            [0, 0, -2, 2, -1],
            [0, 0, 0, -1, 2],
        ]
    if kind == "E6_2":
        return [
            [2, -1, 0, 0, 0],
            [-1, 2, -1, 0, 0],
            [0, -1, 2, -2, 0],
            [0, 0, -1, 2, -1],
            [0, 0, 0, -1, 2],
        ]
    if kind == "G2_1":
        return [[2, -1, 0], [-1, 2, -1], [0, -3, 2]]
    if kind == "A2_2":
        return [[2, -4], [-1, 2]]
    if kind == "A_2":
        # twisted A_{2l}^(2), l = rank - 1 >= 2
        M = _chain(rank)
        M[0][1] = -2
        M[rank - 2][rank - 1] = -2
        return M
    raise ValueError(f"unknown matrix kind {kind!r}")


def _chain(n):
    M = [[0] * n for _ in range(n)]
    for i in range(n):
        M[i][i] = 2
        if i + 1 < n:
            M[i][i + 1] = M[i + 1][i] = -1
    return M
