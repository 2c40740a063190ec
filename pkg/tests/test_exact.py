import random
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from wdecomp import exact as ex

small = st.integers(-4, 4).map(Fraction)
matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
)


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_rank_and_rref_match_sympy(m):
    M = sympy.Matrix(m)
    R, piv = M.rref()
    rows, pivots = ex.rref(m)
    assert list(pivots) == list(piv)
    for n, row in enumerate(rows):
        assert [row.get(c, 0) for c in range(M.cols)] == [Fraction(int(x.p), int(x.q)) for x in R.row(n)]
    assert ex.rank(m) == M.rank()


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_nullspace_is_kernel_of_right_dimension(m):
    ncols = len(m[0])
    basis = ex.nullspace(m, ncols)
    assert len(basis) == ncols - ex.rank(m)
    for v in basis:
        assert all(x == 0 for x in ex.matvec(m, v))


def test_solve_consistent_and_inconsistent():
    rng = random.Random(3)
    m = [[Fraction(rng.randint(-3, 3)) for _ in range(4)] for _ in range(3)]
    x0 = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)]
    b = ex.matvec(m, x0)
    x = ex.solve(m, b, 4)
    assert ex.matvec(m, x) == b
    assert ex.solve([[1, 1], [1, 1]], [1, 2], 2) is None


def test_to_fraction():
    assert ex.to_fraction(0.5) == Fraction(1, 2)
    assert ex.to_fraction(3 + 0j) == 3
    assert ex.is_exact_scalar(Fraction(1, 3)) and not ex.is_exact_scalar(0.5) and not ex.is_exact_scalar(True)
