import itertools

import numpy as np
import pytest
import sympy

from wdecomp.borderrank import (
    flattening_labels,
    flattening_matrix,
    flattening_rank,
    jet_convergence,
    jet_family,
    jet_residual,
    proof_rows,
)
from wdecomp.decomposer import decompose_w_product
from wdecomp.indexcomb import DegreeProfile
from wdecomp.tensorcore import eval_decomposition, residual, w_product


def _apply_operator(dims, e):
    # prod_j d/dx_{j,0}^e_j d/dx_{j,1}^(2-e_j) applied to prod_j x_{j,0}^(d_j-1) x_{j,1}
    xs = sympy.symbols(f"x0:{len(dims)}")
    ys = sympy.symbols(f"y0:{len(dims)}")
    W = sympy.Mul(*[x ** (d - 1) * y for x, y, d in zip(xs, ys, dims)])
    for x, y, ej in zip(xs, ys, e):
        W = sympy.diff(W, x, ej, y, 2 - ej) if ej < 2 else sympy.diff(W, x, 2)
    return sympy.Poly(W, *xs, *ys) if W != 0 else None


def test_flattening_matrix_against_symbolic_derivatives():
    for dims in [(3, 3), (3, 4), (4, 3, 3)]:
        mat = flattening_matrix(dims)
        rows, cols = flattening_labels(dims)
        assert mat.shape == (3 ** len(dims), int(np.prod([d - 1 for d in dims])))
        for r, e in enumerate(rows):
            poly = _apply_operator(dims, e)
            got = {c: int(mat[r, n]) for n, c in enumerate(cols) if mat[r, n]}
            want = {}
            if poly is not None:
                k = len(dims)
                for mono, coeff in poly.terms():
                    want[tuple(mono[:k])] = int(coeff)
            assert got == want


def test_flattening_rows_small_case():
    mat = flattening_matrix((3, 3))
    rows, _ = flattening_labels((3, 3))
    assert mat.shape == (9, 4)
    assert mat[rows.index((1, 1))].any()
    # a repeated derivative in the single-degree variable kills the form
    for r, e in enumerate(rows):
        if 0 in e:
            assert not mat[r].any()


@pytest.mark.parametrize("dims, expected", [((3, 3), 4), ((3, 3, 3), 8), ((4, 5), 4)])
def test_flattening_rank_examples(dims, expected):
    assert flattening_rank(dims) == expected
    assert sympy.Matrix(flattening_matrix(dims).tolist()).rank() == expected


def test_proof_rows_are_independent():
    for dims in [(3, 3), (3, 4, 5), (4, 4, 3, 3)]:
        rows, _ = flattening_labels(dims)
        mat = flattening_matrix(dims)
        sub = sympy.Matrix([mat[rows.index(e)].tolist() for e in proof_rows(dims)])
        assert sub.rank() == 2 ** len(dims)


def test_jet_family():
    for dims in [(3, 3), (3, 4, 5)]:
        assert len(jet_family(dims, 1e-3)) == 2 ** len(dims)
    with pytest.raises(ValueError):
        jet_family((3, 3), 0)
    grid, ratios = jet_convergence((3, 3), 1e-3, steps=2)
    assert 0.4 <= ratios[0] <= 0.6
    res = [r for _, r in jet_convergence((3, 4), 1e-2, steps=5)[0]]
    assert all(a > b for a, b in zip(res, res[1:]))


def test_single_factor_jet_is_first_order():
    # (d eps)^-1 ((x + eps y)^d - x^d) - x^(d-1) y has leading term eps C(d,2)/d x^(d-2) y^2
    for d in (3, 5):
        eps = 1e-4
        coeffs = {m: sympy.binomial(d, m) * sympy.Float(eps) ** (m - 1) / d for m in range(1, d + 1)}
        err = coeffs[2]
        assert abs(float(err) - eps * (d - 1) / 2) < 1e-12


def test_noise_floor_warning():
    with pytest.warns(RuntimeWarning, match="noise floor"):
        jet_residual((3, 3), 1e-20)


def test_border_rank_below_rank():
    for dims in [(3, 3), (3, 4), (3, 3, 3)]:
        assert flattening_rank(dims) <= decompose_w_product(dims).length
