"""Exact integer linear algebra and finite quotients Z^d / Lambda.

Matrices hold Python ints so nothing ever overflows. The Smith normal form
has two engines: a dense one that tracks unimodular transforms (used for
small lattice bases and in tests), and a sparse diagonalizer for the large,
very sparse boundary matrices of cover complexes.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence


class IntMatrix:
    """Dense rectangular matrix of Python ints."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence[int]], cols: int | None = None):
        self.data = [[int(x) for x in row] for row in data]
        self.rows = len(self.data)
        if cols is None:
            cols = len(self.data[0]) if self.data else 0
        if any(len(r) != cols for r in self.data):
            raise ValueError("matrix rows have unequal lengths")
        self.cols = cols

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        out = cls.zeros(rows, len(columns))
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                out.data[i][j] = int(v)
        return out

    @classmethod
    def from_sparse_columns(cls, columns: Sequence[dict[int, int]], rows: int) -> IntMatrix:
        out = cls.zeros(rows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                out.data[i][j] += v
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> list[int]:
        return [row[j] for row in self.data]

    def transpose(self) -> IntMatrix:
        return IntMatrix([list(c) for c in zip(*self.data)] if self.rows else [], self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ot = [other.column(j) for j in range(other.cols)]
        return IntMatrix([[sum(a * b for a, b in zip(row, c) if a) for c in ot]
                          for row in self.data], other.cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.data == other.data

    def __repr__(self) -> str:
        return f"IntMatrix({self.data!r})"

    def sparse_rows(self) -> list[dict[int, int]]:
        return [{j: v for j, v in enumerate(row) if v} for row in self.data]


def det(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = a.rows
    if n != a.cols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [list(r) for r in a.data]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


# --- Smith normal form ------------------------------------------------------------

@dataclass
class SNFResult:
    diagonal: list[int]  # nonzero invariant factors d_1 | d_2 | ...
    rank: int
    shape: tuple[int, int]
    U: IntMatrix | None = None
    V: IntMatrix | None = None

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.diagonal if d > 1]

    def diagonal_matrix(self) -> IntMatrix:
        out = IntMatrix.zeros(*self.shape)
        for k, d in enumerate(self.diagonal):
            out.data[k][k] = d
        return out


def _chain(diag: Iterable[int]) -> list[int]:
    """Turn a list of nonzero diagonal entries into a divisibility chain."""
    d = sorted(abs(x) for x in diag if x)
    n = len(d)
    for i in range(n):
        for j in range(i + 1, n):
            g = math.gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] // g * d[j]
    return d


def snf(a: IntMatrix, want_transforms: bool = False) -> SNFResult:
    """Smith normal form of an integer matrix.

    With ``want_transforms`` the result carries unimodular U, V such that
    U @ a @ V equals the diagonal matrix.
    """
    if want_transforms:
        return _snf_dense(a)
    diag = _diagonalize_sparse(a.sparse_rows())
    chain = _chain(diag)
    return SNFResult(chain, len(chain), a.shape)


def snf_sparse(rows: list[dict[int, int]], ncols: int) -> SNFResult:
    """Smith form of a matrix given as sparse rows; the input is consumed."""
    chain = _chain(_diagonalize_sparse(rows))
    return SNFResult(chain, len(chain), (len(rows), ncols))


def _diagonalize_sparse(rows: list[dict[int, int]]) -> list[int]:
    """Reduce to diagonal form with row and column operations.

    Pivot choice: smallest absolute value, ties broken by Markowitz cost.
    Returns the nonzero diagonal entries (not yet a divisibility chain).
    """
    rows = [dict(r) for r in rows if r]
    live = {i: r for i, r in enumerate(rows)}
    cols: dict[int, set[int]] = {}
    for i, r in live.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    diag: list[int] = []

    def axpy(dst_i: int, src: dict[int, int], q: int) -> None:
        dst = live[dst_i]
        for j, v in src.items():
            nv = dst.get(j, 0) - q * v
            if nv:
                if j not in dst:
                    cols.setdefault(j, set()).add(dst_i)
                dst[j] = nv
            elif j in dst:
                del dst[j]
                cols[j].discard(dst_i)

    while live:
        # pivot search
        best = None
        for i, r in live.items():
            rn = len(r)
            for j, v in r.items():
                key = (abs(v), (rn - 1) * (len(cols[j]) - 1))
                if best is None or key < best[0]:
                    best = (key, i, j)
                    if key == (1, 0):
                        break
            if best is not None and best[0] == (1, 0):
                break
        _, pi, pj = best
        while True:
            prow = live[pi]
            p = prow[pj]
            dirty = False
            for i in list(cols[pj]):
                if i == pi:
                    continue
                q = live[i][pj] // p
                axpy(i, prow, q)
                if pj in live[i]:
                    dirty = True
            # column operations on the pivot row; column pj is clean elsewhere
            # unless dirty, so only apply them once the column is clear
            if not dirty:
                for j in list(prow):
                    if j == pj:
                        continue
                    q = prow[j] // p
                    if q:
                        # col_j -= q col_pj touches only row pi
                        nv = prow[j] - q * p
                        if nv:
                            prow[j] = nv
                        else:
                            del prow[j]
                            cols[j].discard(pi)
                    if j in prow:
                        dirty = True
            if not dirty:
                diag.append(p)
                del live[pi]
                cols[pj].discard(pi)
                for i in [i for i, r in live.items() if not r]:
                    del live[i]
                break
            # pick a smaller pivot among the remainders in this row/column
            cand = [(abs(live[i][pj]), i, pj) for i in cols[pj]]
            cand += [(abs(v), pi, j) for j, v in prow.items()]
            _, pi, pj = min(cand)
    return diag


def _snf_dense(a: IntMatrix) -> SNFResult:
    m, n = a.shape
    A = [list(r) for r in a.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_add(dst, src, q):  # row_dst -= q row_src
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x - q * y for x, y in zip(U[dst], U[src])]

    def col_add(dst, src, q):  # col_dst -= q col_src
        for M in (A, V):
            for r in M:
                r[dst] -= q * r[src]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_add(i, t, A[i][t] // p)
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    col_add(j, t, A[t][j] // p)
                    if A[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                # fold the offending row into the pivot row and retry
                row_add(t, bad[0], -1)
                continue
            nz = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            nz += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = [A[k][k] for k in range(t)]
    return SNFResult(diag, len(diag), (m, n), IntMatrix(U, m), IntMatrix(V, n))


def minor_gcd_invariants(a: IntMatrix, kmax: int | None = None) -> list[int]:
    """Invariant factors from gcds of k x k minors (brute force, small matrices)."""
    kmax = min(a.shape) if kmax is None else kmax
    dets = [1]
    for k in range(1, kmax + 1):
        g = 0
        for rs in itertools.combinations(range(a.rows), k):
            for cs in itertools.combinations(range(a.cols), k):
                g = math.gcd(g, det(IntMatrix([[a.data[r][c] for c in cs] for r in rs])))
        if g == 0:
            break
        dets.append(g)
    return [dets[k] // dets[k - 1] for k in range(1, len(dets))]


# --- kernels and solving -------------------------------------------------------------

@dataclass
class ColumnReduction:
    """a @ V = [H | 0] with V unimodular; Vinv is its exact inverse."""
    rank: int
    V_cols: list[list[int]]
    Vinv_rows: list[list[int]]

    def kernel_columns(self) -> list[list[int]]:
        return self.V_cols[self.rank:]


def column_reduce(a: IntMatrix) -> ColumnReduction:
    m, n = a.shape
    A = [a.column(j) for j in range(n)]
    V = [[int(i == j) for i in range(n)] for j in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def add(dst, src, q):  # col_dst -= q col_src
        A[dst] = [x - q * y for x, y in zip(A[dst], A[src])]
        V[dst] = [x - q * y for x, y in zip(V[dst], V[src])]
        Vi[src] = [x + q * y for x, y in zip(Vi[src], Vi[dst])]

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        V[i], V[j] = V[j], V[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    r = 0
    for i in range(m):
        if r == n:
            break
        while True:
            nz = [(abs(A[j][i]), j) for j in range(r, n) if A[j][i]]
            if not nz:
                break
            _, jp = min(nz)
            swap(r, jp)
            p = A[r][i]
            for j in range(r + 1, n):
                if A[j][i]:
                    add(j, r, A[j][i] // p)
            if all(A[j][i] == 0 for j in range(r + 1, n)):
                r += 1
                break
    return ColumnReduction(r, V, Vi)


def int_kernel(a: IntMatrix) -> IntMatrix:
    """Columns form a Z-basis of {x : a x = 0}."""
    red = column_reduce(a)
    return IntMatrix.from_columns(red.kernel_columns(), a.cols)


# --- lattices and quotient groups --------------------------------------------------------

class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    """Finite-index subgroup of Z^d spanned by the columns of ``basis``."""
    basis: tuple[tuple[int, ...], ...]  # row-major d x d
    spec: str = ""

    def __post_init__(self):
        d = len(self.basis)
        if d < 1 or any(len(r) != d for r in self.basis):
            raise LatticeError("lattice basis must be a square d x d matrix")
        if det(IntMatrix(self.basis)) == 0:
            raise LatticeError("singular lattice basis (infinite index)")

    @property
    def d(self) -> int:
        return len(self.basis)

    @property
    def index(self) -> int:
        return abs(det(IntMatrix(self.basis)))

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(r[j] for r in self.basis) for j in range(self.d)]

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], spec: str = "") -> Lattice:
        d = len(cols)
        return cls(tuple(tuple(int(cols[j][i]) for j in range(d)) for i in range(d)), spec)

    @classmethod
    def diag(cls, *entries: int) -> Lattice:
        d = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(d)) for i in range(d)),
                   "diag:" + ",".join(map(str, entries)))

    @classmethod
    def cyclic(cls, r: int) -> Lattice:
        return cls(((r,),), f"cyclic:{r}")

    @classmethod
    def scalar(cls, n: int, d: int) -> Lattice:
        return cls.diag(*([n] * d))

    def scaled(self, c: int) -> Lattice:
        return Lattice(tuple(tuple(c * x for x in r) for r in self.basis))

    def label(self) -> str:
        if self.spec:
            return self.spec
        return "cols:" + ";".join(",".join(map(str, c)) for c in self.columns())


def parse_lattice(text: str, d: int | None = None) -> Lattice:
    """Parse ``diag:3,2``, ``cyclic:7``, ``scalar:5`` (needs d) or ``cols:2,1;-1,2``."""
    m = re.fullmatch(r"\s*(\w+)\s*:\s*(.+?)\s*", text)
    if not m:
        raise LatticeError(f"bad lattice spec {text!r}")
    kind, body = m.group(1), m.group(2)
    try:
        if kind == "diag":
            return Lattice.diag(*[int(x) for x in body.split(",")])
        if kind == "cyclic":
            return Lattice.cyclic(int(body))
        if kind == "scalar":
            if d is None:
                raise LatticeError("scalar lattice needs a dimension")
            lat = Lattice.scalar(int(body), d)
            return Lattice(lat.basis, text.strip())
        if kind == "cols":
            cols = [[int(x) for x in c.split(",")] for c in body.split(";")]
            return Lattice.from_columns(cols, text.strip().replace(" ", ""))
    except ValueError as exc:
        raise LatticeError(f"bad lattice spec {text!r}: {exc}") from None
    raise LatticeError(f"unknown lattice kind {kind!r}")


Element = tuple[int, ...]


@dataclass
class QuotientGroup:
    """G = Z^d / Lambda in SNF coordinates, Z/d_1 x ... x Z/d_k with d_i | d_{i+1}."""
    lattice: Lattice
    invariant_factors: list[int]
    _proj: list[list[int]] = field(repr=False)  # rows of U for nontrivial factors

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def d(self) -> int:
        return self.lattice.d

    def project(self, x: Sequence[int]) -> Element:
        """Image of an integer vector of Z^d."""
        return tuple(sum(a * b for a, b in zip(row, x)) % n
                     for row, n in zip(self._proj, self.invariant_factors))

    def generator(self, k: int) -> Element:
        """Image of the standard basis vector e_k (1-based), i.e. of u_k."""
        e = [0] * self.d
        e[k - 1] = 1
        return self.project(e)

    def zero(self) -> Element:
        return (0,) * len(self.invariant_factors)

    def add(self, x: Element, y: Element) -> Element:
        return tuple((a + b) % n for a, b, n in zip(x, y, self.invariant_factors))

    def neg(self, x: Element) -> Element:
        return tuple(-a % n for a, n in zip(x, self.invariant_factors))

    def scale(self, k: int, x: Element) -> Element:
        return tuple(k * a % n for a, n in zip(x, self.invariant_factors))

    def index_of(self, x: Element) -> int:
        idx = 0
        for a, n in zip(x, self.invariant_factors):
            idx = idx * n + a
        return idx

    def element(self, idx: int) -> Element:
        out = []
        for n in reversed(self.invariant_factors):
            idx, a = divmod(idx, n)
            out.append(a)
        return tuple(reversed(out))

    def elements(self) -> list[Element]:
        return [tuple(x) for x in itertools.product(*[range(n) for n in self.invariant_factors])]

    def element_order(self, x: Element) -> int:
        return element_order(self, x)


def quotient_group(lam: Lattice) -> QuotientGroup:
    res = _snf_dense(IntMatrix(lam.basis))
    if res.rank < lam.d:
        raise LatticeError("singular lattice basis")
    proj, facs = [], []
    for k, dk in enumerate(res.diagonal):
        if dk > 1:
            facs.append(dk)
            proj.append(res.U.data[k])
    return QuotientGroup(lam, facs, proj)


def element_order(g: QuotientGroup, x: Element) -> int:
    return reduce(math.lcm, (n // math.gcd(n, a) for a, n in zip(x, g.invariant_factors)), 1)


def shortest_vector(lam: Lattice) -> float:
    """Euclidean length of the shortest nonzero vector of a lattice (d <= 4)."""
    d = lam.d
    if d > 4:
        raise LatticeError("shortest_vector supports d <= 4 only")
    cols = [list(c) for c in lam.columns()]
    norm2 = lambda v: sum(x * x for x in v)
    # pairwise size reduction sweeps (Lagrange-Gauss when d == 2)
    changed = True
    while changed:
        changed = False
        for i in range(d):
            for j in range(d):
                if i == j:
                    continue
                nj = norm2(cols[j])
                q = round(Fraction(sum(a * b for a, b in zip(cols[i], cols[j])), nj))
                if q:
                    cand = [a - q * b for a, b in zip(cols[i], cols[j])]
                    if norm2(cand) < norm2(cols[i]):
                        cols[i] = cand
                        changed = True
    best = min(norm2(c) for c in cols)
    # any v = B c with |v|^2 <= best has |c_i| <= sqrt(best) * |row_i(B^-1)|
    B = IntMatrix.from_columns(cols, d)
    D = det(B)
    inv_rows = _adjugate(B)
    bounds = []
    for row in inv_rows:
        r2 = Fraction(sum(x * x for x in row), D * D)
        bounds.append(math.isqrt(int(best * r2)) + 1)
    for c in itertools.product(*[range(-b, b + 1) for b in bounds]):
        if not any(c):
            continue
        v = [sum(cols[j][i] * c[j] for j in range(d)) for i in range(d)]
        n2 = norm2(v)
        if n2 < best:
            best = n2
    return math.sqrt(best)


def _adjugate(a: IntMatrix) -> list[list[int]]:
    n = a.rows
    if n == 1:
        return [[1]]
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = IntMatrix([[a.data[r][c] for c in range(n) if c != j]
                               for r in range(n) if r != i])
            out[j][i] = (-1) ** (i + j) * det(minor)
    return out
