"""Homology of finite abelian branched covers of links.

The complex Q for a lattice Lambda has one vertex per element g of
G = Z^d / Lambda, an edge (i, g) from g to g + u_t(i) for every arc i, one
2-cell per crossing and group element (the lifted Wirtinger loop), and one
branching 2-cell per arc and per coset of <u_t(i)> in G, running once
around the orbit of lifts.

H1(Q) = H1(M_Lambda) is computed two ways:

* direct: ker d1 / im d2, by writing im d2 in a Z-basis of ker d1;
* relative: coker d2 = H1(Q, Q^0), whose torsion is the torsion of H1(Q)
  and whose free rank exceeds the Betti number by m - 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath

from .laurent import LaurentPoly, to_coeffs
from .lattices import (IntMatrix, Lattice, QuotientGroup, column_reduce, quotient_group,
                       shortest_vector, snf_sparse)
from .linkio import WirtingerPresentation

SparseCol = dict[int, int]


class CoverError(ArithmeticError):
    pass


@dataclass
class ChainComplexQ:
    group: QuotientGroup
    N: int
    d1_cols: list[SparseCol]  # m x (N m)
    d2_cols: list[SparseCol]  # (N m) x (wirtinger + branch)
    n_wirtinger: int
    n_branch: int
    c1_labels: list[tuple[int, tuple[int, ...]]] = field(repr=False)
    branch_labels: list[tuple[int, tuple[int, ...]]] = field(repr=False)

    @property
    def m(self) -> int:
        return self.group.order

    @property
    def c1_rank(self) -> int:
        return self.N * self.m

    def d1(self) -> IntMatrix:
        return IntMatrix.from_sparse_columns(self.d1_cols, self.m)

    def d2(self) -> IntMatrix:
        return IntMatrix.from_sparse_columns(self.d2_cols, self.c1_rank)

    def boundary_squared_is_zero(self) -> bool:
        for col in self.d2_cols:
            acc: dict[int, int] = {}
            for e, v in col.items():
                for vert, w in self.d1_cols[e].items():
                    acc[vert] = acc.get(vert, 0) + v * w
            if any(acc.values()):
                return False
        return True


@dataclass
class HomologySummary:
    betti: int
    invariant_factors: list[int]
    torsion_order: int
    method: str
    lattice: str
    index: int
    shortest_vector: float | None = None
    sfix_dim: int | None = None

    def same_group(self, other: HomologySummary) -> bool:
        return self.betti == other.betti and self.invariant_factors == other.invariant_factors

    def to_dict(self) -> dict:
        out = {"betti": self.betti,
               "invariant_factors": [str(x) for x in self.invariant_factors],
               "torsion_order": str(self.torsion_order),
               "method": self.method, "lattice": self.lattice, "index": self.index,
               "shortest_vector": self.shortest_vector}
        if self.sfix_dim is not None:
            out["sfix_dim"] = self.sfix_dim
        return out


def _check_dims(pres: WirtingerPresentation, lam: Lattice) -> None:
    if pres.d != lam.d:
        raise CoverError(f"lattice lives in Z^{lam.d} but the link has {pres.d} components")


def build_complex(pres: WirtingerPresentation, lam: Lattice) -> ChainComplexQ:
    _check_dims(pres, lam)
    G = quotient_group(lam)
    m = G.order
    elems = G.elements()
    idx = {g: k for k, g in enumerate(elems)}
    u = [G.generator(k) for k in range(1, pres.d + 1)]
    shift = [[idx[G.add(g, u[k])] for g in elems] for k in range(pres.d)]  # g -> g + u_k

    def edge(i, gi):  # C1 index of the lift of arc i (1-based) starting at element gi
        return (i - 1) * m + gi

    d1_cols, labels = [], []
    for i in range(1, pres.N + 1):
        t = pres.t[i - 1] - 1
        for gi, g in enumerate(elems):
            col: SparseCol = {}
            head = shift[t][gi]
            if head != gi:
                col[head] = 1
                col[gi] = -1
            d1_cols.append(col)
            labels.append((i, g))

    d2_cols: list[SparseCol] = []
    for r in pres.relators:
        t, tp = r.t - 1, r.t_prime - 1
        for gi in range(m):
            col: SparseCol = {}
            for e, v in ((edge(r.i, gi), 1), (edge(r.j1, shift[t][gi]), 1),
                         (edge(r.i, shift[tp][gi]), -1), (edge(r.j2, gi), -1)):
                col[e] = col.get(e, 0) + v
            d2_cols.append({e: v for e, v in col.items() if v})
    n_wirt = len(d2_cols)

    branch_labels = []
    for i in range(1, pres.N + 1):
        t = pres.t[i - 1] - 1
        seen = [False] * m
        for gi in range(m):
            if seen[gi]:
                continue
            col: SparseCol = {}
            h = gi
            while not seen[h]:
                seen[h] = True
                col[edge(i, h)] = 1
                h = shift[t][h]
            d2_cols.append(col)
            branch_labels.append((i, elems[gi]))
    return ChainComplexQ(G, pres.N, d1_cols, d2_cols, n_wirt, len(d2_cols) - n_wirt,
                         labels, branch_labels)


def _summary(betti, diag, method, q: ChainComplexQ, sfix=None) -> HomologySummary:
    tors = [x for x in diag if x > 1]
    lam = q.group.lattice
    sv = shortest_vector(lam) if lam.d <= 4 else None
    return HomologySummary(betti, tors, math.prod(tors), method, lam.label(), q.m, sv, sfix)


def homology_direct(q: ChainComplexQ) -> HomologySummary:
    """H1 = ker d1 / im d2 with ker d1 taken in a saturated Z-basis."""
    red = column_reduce(q.d1())
    n = q.c1_rank
    rank = red.rank
    Vi = red.Vinv_rows
    # coordinates of each d2 column in the basis given by the columns of V
    rows: list[dict[int, int]] = [dict() for _ in range(n)]
    for c, col in enumerate(q.d2_cols):
        for p in range(n):
            row = Vi[p]
            s = 0
            for k, v in col.items():
                x = row[k]
                if x:
                    s += v * x
            if s:
                if p < rank:
                    raise CoverError("im d2 is not inside ker d1 (kernel solve inconsistent)")
                rows[p][c] = s
    X = rows[rank:]
    res = snf_sparse(X, len(q.d2_cols))
    betti = (n - rank) - res.rank
    return _summary(betti, res.diagonal, "direct", q)


def homology_relative(pres_or_q, lam: Lattice | None = None) -> HomologySummary:
    """Torsion and Betti number from coker d2 = H1(Q, Q^0)."""
    q = pres_or_q if isinstance(pres_or_q, ChainComplexQ) else build_complex(pres_or_q, lam)
    rows: list[dict[int, int]] = [dict() for _ in range(q.c1_rank)]
    for c, col in enumerate(q.d2_cols):
        for e, v in col.items():
            rows[e][c] = v
    res = snf_sparse(rows, len(q.d2_cols))
    sfix = q.c1_rank - res.rank
    betti = sfix - q.m + 1
    if betti < 0:
        raise CoverError(f"negative Betti number {betti}: dim SFix = {sfix} < m - 1 = {q.m - 1}")
    return _summary(betti, res.diagonal, "relative", q, sfix)


def cover_homology(pres: WirtingerPresentation, lam: Lattice, method: str = "relative"):
    q = build_complex(pres, lam)
    if method == "direct":
        return homology_direct(q)
    if method == "relative":
        return homology_relative(q)
    raise ValueError(f"unknown method {method!r}")


def sigma_prime_rank(pres: WirtingerPresentation, lam: Lattice) -> int:
    """Number of freely assignable second coordinates: sum over arcs 2..N of m / n(t(i))."""
    _check_dims(pres, lam)
    G = quotient_group(lam)
    m = G.order
    orders = [G.element_order(G.generator(k)) for k in range(1, pres.d + 1)]
    return sum(m // orders[pres.t[i - 1] - 1] for i in range(2, pres.N + 1))


def branch_column_count(pres: WirtingerPresentation, lam: Lattice) -> int:
    G = quotient_group(lam)
    orders = [G.element_order(G.generator(k)) for k in range(1, pres.d + 1)]
    return sum(G.order // orders[t - 1] for t in pres.t)


def knot_resultant_oracle(delta: LaurentPoly, r: int, zero_tol: float = 1e-9) -> tuple[int, int]:
    """|prod_j Delta(zeta_r^j)| over the factors that do not vanish, rounded.

    Returns (rounded product, number of vanishing factors).
    """
    if delta.dim != 1 or delta.is_zero():
        raise ValueError("oracle needs a nonzero one-variable polynomial")
    if r < 1:
        raise ValueError("r must be positive")
    coeffs, _ = to_coeffs(delta)
    norm1 = sum(abs(c) for c in coeffs)
    digits = int(r * math.log10(max(norm1, 2))) + 30
    for attempt in range(3):
        with mpmath.workdps(digits):
            prod = mpmath.mpf(1)
            zeros = 0
            for j in range(r):
                z = mpmath.expjpi(mpmath.mpf(2 * j) / r)
                val = abs(mpmath.polyval(coeffs[::-1], z))
                if val < zero_tol:
                    zeros += 1
                    continue
                prod *= val
            n = int(mpmath.nint(prod))
            if abs(prod - n) < mpmath.mpf(10) ** -6 * max(prod, 1):
                return n, zeros
        digits *= 2
    raise CoverError(f"resultant for r = {r} could not be rounded reliably")


@dataclass
class BasedBranchReport:
    with_branch: tuple[int, list[int]]  # (free rank, torsion factors)
    without_branch: tuple[int, list[int]]
    agree: bool


def based_branch_equivalence(pres: WirtingerPresentation, lam: Lattice) -> BasedBranchReport:
    """Compare coker of the based relative matrix with and without branch cells (knots)."""
    if pres.d != 1:
        raise CoverError("based/branch equivalence is a statement about knots (d = 1)")
    q = build_complex(pres, lam)
    m = q.m

    def coker(cols):
        rows: list[dict[int, int]] = [dict() for _ in range(q.c1_rank - m)]
        for c, col in enumerate(cols):
            for e, v in col.items():
                if e >= m:  # drop every lift of arc 1
                    rows[e - m][c] = v
        res = snf_sparse(rows, len(cols))
        return (q.c1_rank - m - res.rank, [x for x in res.diagonal if x > 1])

    full = coker(q.d2_cols)
    wirt = coker(q.d2_cols[:q.n_wirtinger])
    return BasedBranchReport(full, wirt, full == wirt)
