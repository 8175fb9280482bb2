from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from nilweyl.linalg import (Echelon, RatMatrix, inverse, kernel_basis, projection_with_complement,
                            quotient_projection, rank, rref, solve)

small = st.integers(-3, 3)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    return [[Fraction(draw(small), draw(st.sampled_from([1, 1, 2, 3]))) for _ in range(c)] for _ in range(r)], c


def to_sympy(rows, ncols):
    return sympy.Matrix(len(rows), ncols, lambda i, j: sympy.Rational(rows[i][j].numerator, rows[i][j].denominator))


def test_rank_examples():
    assert rank(RatMatrix.zeros(3, 4)) == 0
    assert rank(RatMatrix.identity(5)) == 5
    assert rank(RatMatrix.from_dense([[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(RatMatrix.identity(3)).ncols == 0
    assert kernel_basis(RatMatrix.zeros(2, 2)).ncols == 2
    k = kernel_basis(RatMatrix.from_dense([[1, 1]]))
    assert k.ncols == 1
    a, b = k.column(0).get(0, 0), k.column(0).get(1, 0)
    assert a == -b != 0


def test_solve_examples():
    assert solve(RatMatrix.identity(3), [1, 2, 3]) == [1, 2, 3]
    assert solve(RatMatrix.from_dense([[1, 0], [0, 0]]), [0, 1]) is None
    assert solve(RatMatrix.from_dense([[2]]), [1]) == [Fraction(1, 2)]
    with pytest.raises(ValueError):
        solve(RatMatrix.identity(2), [1, 2, 3])


def test_quotient_projection_examples():
    assert quotient_projection(3, RatMatrix.zeros(3, 0)) == RatMatrix.identity(3)
    assert quotient_projection(2, RatMatrix.identity(2)).nrows == 0
    p = quotient_projection(2, RatMatrix.from_dense([[1], [1]]))
    assert p.shape == (1, 2)
    assert (p @ RatMatrix.from_dense([[1], [1]])).is_zero()


@given(matrices())
def test_rank_and_kernel_against_sympy(mc):
    rows, c = mc
    m = RatMatrix.from_dense(rows, ncols=c)
    s = to_sympy(rows, c)
    assert rank(m) == s.rank()
    k = kernel_basis(m)
    assert k.ncols == c - rank(m) == len(s.nullspace())
    assert (m @ k).is_zero()
    assert rank(k) == k.ncols


@given(matrices())
def test_rref_against_sympy(mc):
    rows, c = mc
    m = RatMatrix.from_dense(rows, ncols=c)
    r, pivots = rref(m)
    sr, spiv = to_sympy(rows, c).rref()
    assert tuple(pivots) == spiv
    assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in r.to_dense()[:len(pivots)]] \
        == [list(sr.row(i)) for i in range(len(spiv))]


@given(matrices(), st.lists(small, min_size=6, max_size=6))
def test_solve_is_exact(mc, rhs):
    rows, c = mc
    m = RatMatrix.from_dense(rows, ncols=c)
    b = rhs[:m.nrows]
    x = solve(m, b)
    consistent = to_sympy(rows, c).row_join(sympy.Matrix(b)).rank() == rank(m) if m.nrows else True
    if x is None:
        assert not consistent
    else:
        assert m.apply_dense(x) == [Fraction(v) for v in b]


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse(rows):
    m = RatMatrix.from_dense(rows)
    if to_sympy([[Fraction(v) for v in r] for r in rows], len(rows)).det() == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
    else:
        assert (m @ inverse(m)).is_identity() and (inverse(m) @ m).is_identity()


@given(matrices(max_rows=5, max_cols=5))
def test_quotient_projection_kills_subspace(mc):
    rows, c = mc
    sub = RatMatrix.from_dense(rows, ncols=c).T if rows else RatMatrix.zeros(c, 0)
    p = quotient_projection(c, sub)
    assert (p @ sub).is_zero()
    assert p.nrows == c - rank(sub)
    P2, comp = projection_with_complement(c, [sub.column(j) for j in range(sub.ncols)])
    assert len(comp) == P2.nrows == p.nrows


def test_echelon_reports_dependency():
    e = Echelon()
    assert e.insert({0: 1}, {0: 1})[0] is not None
    assert e.insert({1: 2}, {1: 1})[0] is not None
    pivot, residual = e.insert({0: 3, 1: 4}, {2: 1})
    assert pivot is None and residual == {0: -3, 1: -2, 2: 1}


def test_matrix_algebra_identities():
    a = RatMatrix.from_dense([[1, 2], [3, 4]])
    b = RatMatrix.from_dense([[0, 1], [1, 0]])
    assert (a @ b).to_dense() == [[2, 1], [4, 3]]
    assert a.kron(RatMatrix.identity(2)).shape == (4, 4)
    assert (a + b - b) == a
    assert a.T.T == a
    assert RatMatrix.block_diag([a, b]).shape == (4, 4)
    assert RatMatrix.hstack([a, b]).shape == (2, 4) and RatMatrix.vstack([a, b]).shape == (4, 2)
