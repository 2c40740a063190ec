"""Border rank 2^k of the W product: flattening lower bound and a rank-2^k epsilon family.

The W product here is ``prod_j x_{j,0}^(d_j - 1) x_{j,1}``, the same orientation as
:func:`wdecomp.tensorcore.w_product`.  Its apolar ideal is generated by the
``a_{j,1}^2`` and ``a_{j,0}^(d_j)``, where ``a_{j,c}`` differentiates by ``x_{j,c}``.
"""
from __future__ import annotations

import itertools
import math
import sys
import warnings
from functools import reduce

import numpy as np

from . import exact as ex
from .indexcomb import as_profile
from .tensorcore import Decomposition, RankOneTerm, eval_decomposition, residual, w_product

NOISE_FLOOR = 1e3 * sys.float_info.epsilon


def _factor_flattening(d: int) -> np.ndarray:
    """3 x (d - 1) matrix of a_0^e a_1^(2-e) applied to x_0^(d-1) x_1.

    Rows are ``e = 0, 1, 2``; column ``f`` is the monomial ``x_0^f x_1^(d-2-f)``.
    """
    out = np.zeros((3, d - 1), dtype=np.int64)
    for e in range(3):
        b = 2 - e  # derivatives in x_1
        if b > 1 or e > d - 1:
            continue
        coeff = math.perm(d - 1, e) * math.perm(1, b)
        f = d - 1 - e
        out[e, f] = coeff
    return out


def flattening_labels(profile) -> tuple:
    """Row labels (exponent of a_{j,0} per factor) and column labels (exponent of x_{j,0})."""
    profile = as_profile(profile)
    rows = list(itertools.product(range(3), repeat=profile.k))
    cols = list(itertools.product(*(range(d - 1) for d in profile.degrees)))
    return rows, cols


def flattening_matrix(profile) -> np.ndarray:
    """Integer matrix of Sym^2 x ... x Sym^2 (dual operators) -> Sym^(d_1-2) x ... x Sym^(d_k-2).

    Row ``(e_1, ..., e_k)`` is the operator ``prod_j a_{j,0}^(e_j) a_{j,1}^(2-e_j)``;
    column ``(f_1, ..., f_k)`` is ``prod_j x_{j,0}^(f_j) x_{j,1}^(d_j-2-f_j)``.
    The pairing factors over the k factors, hence the Kronecker product.
    """
    profile = as_profile(profile)
    return reduce(np.kron, [_factor_flattening(d) for d in profile.degrees])


def flattening_rank(profile) -> int:
    """Exact rank over the rationals."""
    mat = flattening_matrix(profile)
    rows = [{int(c): int(mat[r, c]) for c in np.flatnonzero(mat[r])} for r in range(mat.shape[0])]
    return len(ex.rref_sparse(rows)[1])


def proof_rows(profile) -> list:
    """Row labels of the 2^k operators a_{j,0}^(2-eps_j) a_{j,1}^(eps_j), eps_j in {0, 1}."""
    k = as_profile(profile).k
    return [tuple(2 - e for e in eps) for eps in itertools.product((0, 1), repeat=k)]


def jet_family(profile, eps: float) -> Decomposition:
    """2^k terms of prod_j (d_j eps)^(-1) ((x_j + eps y_j)^(d_j) - x_j^(d_j)), with x_j = x_{j,0}."""
    profile = as_profile(profile)
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    k = profile.k
    base = 1.0 / math.prod(d * eps for d in profile.degrees)
    terms = []
    for n in range(k + 1):
        for S in itertools.combinations(range(k), n):
            w = (-1) ** (k - n) * base
            vecs = tuple((1.0, eps) if j in S else (1.0, 0.0) for j in range(k))
            terms.append(RankOneTerm(w, vecs))
    return Decomposition(profile, terms, target_scale=1)


def jet_residual(profile, eps: float) -> float:
    res = residual(eval_decomposition(jet_family(profile, eps)), w_product(profile))
    if res < NOISE_FLOOR:
        warnings.warn(
            f"jet residual {res:.2e} at eps={eps:g} is at the floating-point noise floor",
            RuntimeWarning,
            stacklevel=2,
        )
    return res


def jet_convergence(profile, eps: float = 1e-3, steps: int = 3) -> list:
    """Residuals on the grid eps, eps/2, ..., and the successive ratios."""
    grid = [eps / 2**n for n in range(steps)]
    res = [jet_residual(profile, e) for e in grid]
    ratios = [b / a if a else float("nan") for a, b in zip(res, res[1:])]
    return list(zip(grid, res)), ratios
