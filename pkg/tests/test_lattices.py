import itertools
import math

import pytest
from hypothesis import given, strategies as st

from linkgrowth.lattices import (IntMatrix, Lattice, LatticeError, column_reduce, det,
                                 int_kernel, parse_lattice, quotient_group, shortest_vector,
                                 snf, snf_sparse)


def laplace_det(m):
    if not m:
        return 1
    return sum((-1) ** j * m[0][j] * laplace_det([r[:j] + r[j + 1:] for r in m[1:]])
               for j in range(len(m)) if m[0][j])


def minor_gcd_oracle(rows):
    """Invariant factors as ratios of successive gcds of k x k minors."""
    nr, nc = len(rows), len(rows[0])
    g_prev, out = 1, []
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rs in itertools.combinations(range(nr), k):
            for cs in itertools.combinations(range(nc), k):
                g = math.gcd(g, laplace_det([[rows[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g // g_prev)
        g_prev = g
    return out


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


def test_snf_examples():
    assert snf(IntMatrix([[2, 0], [0, 3]])).diagonal == [1, 6]
    assert snf(IntMatrix([[2, 4], [6, 8]])).diagonal == [2, 4]
    z = snf(IntMatrix.zeros(3, 2))
    assert z.rank == 0 and z.diagonal == []


def test_int_kernel_examples():
    k = int_kernel(IntMatrix([[1, 1]]))
    assert k.cols == 1 and sorted(map(abs, k.column(0))) == [1, 1]
    assert k.column(0)[0] == -k.column(0)[1]
    assert int_kernel(IntMatrix.identity(3)).cols == 0
    k = int_kernel(IntMatrix([[2, -2], [1, -1]]))
    assert k.cols == 1 and k.column(0) in ([1, 1], [-1, -1])


def test_quotient_group_examples():
    g = quotient_group(Lattice.diag(3, 2))
    assert g.invariant_factors == [6] and g.order == 6
    assert g.element_order(g.generator(1)) == 3
    assert g.element_order(g.generator(2)) == 2
    assert g.element_order(g.zero()) == 1
    assert quotient_group(Lattice.cyclic(7)).invariant_factors == [7]
    h = quotient_group(parse_lattice("cols:2,1;-1,2"))
    assert h.invariant_factors == [5] and h.order == 5


def test_shortest_vector_examples():
    assert shortest_vector(Lattice.diag(3, 2)) == 2
    assert shortest_vector(Lattice.cyclic(9)) == 9
    assert shortest_vector(parse_lattice("cols:2,1;-1,2")) == pytest.approx(math.sqrt(5))
    with pytest.raises(LatticeError):
        shortest_vector(Lattice.scalar(2, 5))


def test_parse_lattice():
    assert parse_lattice("diag:3,2").index == 6
    assert parse_lattice("scalar:4", d=2).index == 16
    assert parse_lattice("cyclic:7").label() == "cyclic:7"
    for bad in ("diag:0,1", "cols:1,2;2,4", "nonsense", "wedge:3"):
        with pytest.raises(LatticeError):
            parse_lattice(bad)


@given(matrices)
def test_snf_matches_minor_gcds(rows):
    assert snf(IntMatrix(rows)).diagonal == minor_gcd_oracle(rows)


@given(matrices)
def test_snf_transforms(rows):
    a = IntMatrix(rows)
    res = snf(a, want_transforms=True)
    assert res.U @ a @ res.V == res.diagonal_matrix()
    assert abs(det(res.U)) == 1 and abs(det(res.V)) == 1
    assert all(y % x == 0 for x, y in zip(res.diagonal, res.diagonal[1:]))
    if res.diagonal:
        g = 0
        for r in rows:
            for x in r:
                g = math.gcd(g, x)
        assert res.diagonal[0] == g


@given(matrices)
def test_sparse_and_dense_agree(rows):
    a = IntMatrix(rows)
    assert snf_sparse(a.sparse_rows(), a.cols).diagonal == snf(a, want_transforms=True).diagonal


@given(matrices)
def test_kernel_is_saturated_basis(rows):
    a = IntMatrix(rows)
    k = int_kernel(a)
    rank = snf(a).rank
    assert k.cols == a.cols - rank
    if k.cols:
        assert (a @ k).is_zero()
        # saturated: the kernel columns have trivial invariant factors
        assert snf(k).diagonal == [1] * k.cols


@given(matrices)
def test_column_reduce_inverse(rows):
    a = IntMatrix(rows)
    red = column_reduce(a)
    V = IntMatrix.from_columns(red.V_cols, a.cols)
    Vi = IntMatrix(red.Vinv_rows)
    assert V @ Vi == IntMatrix.identity(a.cols)


lattice_bases = st.lists(st.lists(st.integers(-5, 5), min_size=2, max_size=2),
                         min_size=2, max_size=2).filter(lambda b: laplace_det(b) != 0)


@given(lattice_bases)
def test_quotient_group_structure(basis):
    lam = Lattice(tuple(map(tuple, basis)))
    g = quotient_group(lam)
    assert g.order == lam.index
    elems = g.elements()
    assert len(set(elems)) == g.order
    for i, x in enumerate(elems):
        assert g.index_of(x) == i and g.element(i) == x
        assert g.scale(g.order, x) == g.zero()
    # lattice columns project to zero
    for c in lam.columns():
        assert g.project(c) == g.zero()


@given(lattice_bases, st.data())
def test_group_laws(basis, data):
    g = quotient_group(Lattice(tuple(map(tuple, basis))))
    pick = st.integers(0, g.order - 1).map(g.element)
    x, y, z = data.draw(pick), data.draw(pick), data.draw(pick)
    assert g.add(x, y) == g.add(y, x)
    assert g.add(g.add(x, y), z) == g.add(x, g.add(y, z))
    assert g.add(x, g.neg(x)) == g.zero()


def brute_shortest(lam):
    # |c_j| <= |v| * |row_j(B^-1)|, and |v| never exceeds the shortest column
    (a, b), (c, d) = lam.basis
    D = abs(a * d - b * c)
    r = min(math.hypot(*col) for col in lam.columns())
    bound = math.ceil(r * max(math.hypot(d, b), math.hypot(c, a)) / D) + 1
    cols = lam.columns()
    best = None
    for c in itertools.product(range(-bound, bound + 1), repeat=lam.d):
        if any(c):
            v = [sum(cols[j][i] * c[j] for j in range(lam.d)) for i in range(lam.d)]
            n = math.sqrt(sum(x * x for x in v))
            best = n if best is None else min(best, n)
    return best


@given(lattice_bases, st.integers(1, 4))
def test_shortest_vector_properties(basis, c):
    lam = Lattice(tuple(map(tuple, basis)))
    sv = shortest_vector(lam)
    assert all(sv <= math.sqrt(sum(x * x for x in col)) + 1e-12 for col in lam.columns())
    assert shortest_vector(lam.scaled(c)) == pytest.approx(c * sv)
    assert sv == pytest.approx(brute_shortest(lam))
