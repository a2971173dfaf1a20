"""Fox calculus on Wirtinger presentations and Alexander polynomials.

Relator x_i x_j1 x_i^-1 x_j2^-1 contributes the row with (1 - u_t') in
column i, u_t in column j1 and -1 in column j2 (summed when indices
coincide). Generators beyond the relator count get zero rows so the matrix
is always N x N.

Convention for the polynomial: for knots, Delta is the normalized
determinant of the matrix with one row and one column deleted. For links
(d >= 2) that determinant equals (u_c - 1) Delta up to units, where c is
the component of the deleted column, and we divide the factor out.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .laurent import (DimensionError, LaurentPoly, NotDivisible, lp_exact_div,
                      lp_normalize, uni_gcd)
from .linkio import WirtingerPresentation

Matrix = list[list[LaurentPoly]]


class ConventionError(ArithmeticError):
    """No column choice gives a determinant divisible by (u_c - 1)."""


@dataclass(frozen=True)
class AlexanderMatrix:
    entries: tuple[tuple[LaurentPoly, ...], ...]
    t: tuple[int, ...]
    d: int

    @property
    def size(self) -> int:
        return len(self.entries)

    def rows(self) -> Matrix:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class BasedMatrix:
    entries: tuple[tuple[LaurentPoly, ...], ...]
    deleted_row: int  # 1-based
    deleted_col: int  # 1-based

    @property
    def size(self) -> int:
        return len(self.entries)

    def rows(self) -> Matrix:
        return [list(r) for r in self.entries]


def fox_matrix(pres: WirtingerPresentation) -> AlexanderMatrix:
    d, N = pres.d, pres.N
    one = LaurentPoly.const(d, 1)
    zero = LaurentPoly.zero(d)
    u = [LaurentPoly.var(d, k) for k in range(1, d + 1)]
    rows: Matrix = []
    for r in pres.relators:
        row = [zero] * N
        row[r.i - 1] = row[r.i - 1] + (one - u[r.t_prime - 1])
        row[r.j1 - 1] = row[r.j1 - 1] + u[r.t - 1]
        row[r.j2 - 1] = row[r.j2 - 1] - one
        rows.append(row)
    while len(rows) < N:
        rows.append([zero] * N)
    return AlexanderMatrix(tuple(tuple(r) for r in rows), pres.t, d)


def based_matrix(m: AlexanderMatrix, i0: int = 1, j0: int = 1) -> BasedMatrix:
    """Delete row i0 and column j0 (1-based)."""
    n = m.size
    if n < 2:
        raise ValueError("based matrix needs N >= 2 (its determinant is 1 by convention)")
    if not (1 <= i0 <= n and 1 <= j0 <= n):
        raise IndexError(f"deletion indices ({i0}, {j0}) out of range for N = {n}")
    rows = [tuple(x for j, x in enumerate(row, 1) if j != j0)
            for i, row in enumerate(m.entries, 1) if i != i0]
    return BasedMatrix(tuple(rows), i0, j0)


def det_bareiss(rows: Matrix, dim: int) -> LaurentPoly:
    """Fraction-free determinant over Z[u^+-1]; every division is exact."""
    n = len(rows)
    if n == 0:
        return LaurentPoly.const(dim, 1)
    M = [list(r) for r in rows]
    sign = 1
    prev = LaurentPoly.const(dim, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly.zero(dim)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * pk - M[i][k] * M[k][j]
                M[i][j] = lp_exact_div(num, prev)
        prev = pk
    return M[-1][-1] if sign > 0 else -M[-1][-1]


def det_cofactor(rows: Matrix, dim: int) -> LaurentPoly:
    """Laplace expansion along the first row; only sensible for tiny matrices."""
    n = len(rows)
    if n == 0:
        return LaurentPoly.const(dim, 1)
    if n == 1:
        return rows[0][0]
    total = LaurentPoly.zero(dim)
    for j, a in enumerate(rows[0]):
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * det_cofactor(minor, dim)
        total = total + term if j % 2 == 0 else total - term
    return total


def determinant(rows: Matrix, dim: int) -> LaurentPoly:
    n = len(rows)
    if n <= 4:
        try:
            return det_bareiss(rows, dim)
        except NotDivisible:  # cannot happen over a domain; kept as a guard
            return det_cofactor(rows, dim)
    return det_bareiss(rows, dim)


@dataclass(frozen=True)
class AlexanderResult:
    delta: LaurentPoly
    det_R: LaurentPoly
    deleted_row: int
    deleted_col: int
    convention_note: str


def alexander_data(pres: WirtingerPresentation, i0: int = 1, j0: int | None = None) -> AlexanderResult:
    d = pres.d
    if pres.N == 1:
        one = LaurentPoly.const(d, 1)
        if d >= 2:
            raise ConventionError("a one-arc diagram cannot carry two components")
        return AlexanderResult(one, one, 1, 1, "single generator: based matrix is empty, det = 1")
    m = fox_matrix(pres)
    cols = [j0] if j0 is not None else list(range(1, pres.N + 1))
    last_det = None
    for j in cols:
        R = based_matrix(m, i0, j)
        D = determinant(R.rows(), d)
        last_det = D
        if d == 1:
            return AlexanderResult(lp_normalize(D), D, i0, j,
                                   "d = 1: Delta = det R up to units")
        c = pres.t[j - 1]
        if D.is_zero():
            return AlexanderResult(D, D, i0, j, "det R = 0: zero Alexander polynomial")
        try:
            q = lp_exact_div(D, LaurentPoly.var(d, c) - 1)
        except NotDivisible:
            continue
        return AlexanderResult(lp_normalize(q), D, i0, j,
                               f"d >= 2: det R = (u{c} - 1) * Delta up to units "
                               f"(column {j} on component {c} deleted)")
    raise ConventionError(f"det R = {last_det} is not divisible by (u_c - 1) for any "
                          f"deleted column; choose another deleted row")


def alexander_polynomial(pres: WirtingerPresentation) -> LaurentPoly:
    return alexander_data(pres).delta


def minors(rows: Matrix, k: int):
    n = len(rows)
    for rs in itertools.combinations(range(n), k):
        for cs in itertools.combinations(range(len(rows[0]) if rows else 0), k):
            yield [[rows[r][c] for c in cs] for r in rs]


def higher_alexander_univariate(pres: WirtingerPresentation, i: int) -> LaurentPoly:
    """Delta_i of a knot: gcd of the (N - i) x (N - i) minors of the based matrix."""
    if pres.d != 1:
        raise DimensionError("higher Alexander polynomials are implemented for knots only")
    if i < 1:
        raise ValueError("i must be positive")
    one = LaurentPoly.const(1, 1)
    if pres.N == 1:
        return one
    R = based_matrix(fox_matrix(pres)).rows()
    k = pres.N - i
    if k <= 0:
        return one
    g = LaurentPoly.zero(1)
    for sub in minors(R, k):
        g = uni_gcd(g, determinant(sub, 1))
        if g == one:
            break
    return g
