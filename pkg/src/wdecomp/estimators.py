"""scikit-learn style wrappers over the decomposition routines.

``fit`` takes the object to decompose (a degree profile or a coefficient list);
``transform`` maps evaluation points to the values of the individual rank-one terms
and ``predict`` sums them, so ``predict(X)`` evaluates the decomposed polynomial.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .binwaring import BinaryForm, sylvester_decompose
from .decomposer import DEFAULT_TOL, MODES, decompose_w_product
from .exceptions import InvalidProfileError
from .indexcomb import DegreeProfile


def check_profile(dims) -> DegreeProfile:
    """Accept a DegreeProfile or a sequence of ints, raising InvalidProfileError otherwise."""
    if isinstance(dims, DegreeProfile):
        return dims
    try:
        degrees = tuple(int(d) for d in np.ravel(np.asarray(dims)))
    except (TypeError, ValueError):
        raise InvalidProfileError(f"cannot read a degree profile from {dims!r}") from None
    if any(int(d) != d for d in np.ravel(np.asarray(dims, dtype=float))):
        raise InvalidProfileError(f"degrees must be integers, got {dims!r}")
    return DegreeProfile(degrees)


def check_coefficients(coeffs) -> BinaryForm:
    """Coefficients a_0..a_e as a BinaryForm; rationals stay exact."""
    if isinstance(coeffs, BinaryForm):
        return coeffs
    values = list(coeffs)
    if len(values) < 2:
        raise ValueError("a binary form needs at least two coefficients")
    if all(isinstance(c, (int, Fraction)) and not isinstance(c, bool) for c in values):
        return BinaryForm([Fraction(c) for c in values])
    arr = np.asarray(values, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite")
    return BinaryForm(list(arr))


def _check_points(X, width: int) -> np.ndarray:
    # check_array rejects complex input, so validate by hand
    X = np.atleast_2d(np.asarray(X, dtype=complex))
    if X.ndim != 2 or X.shape[1] != width:
        raise ValueError(f"points must be a 2-d array with {width} columns, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise ValueError("points must be finite")
    return X


class WProductDecomposer(TransformerMixin, BaseEstimator):
    """Waring decomposition of the W product ``prod_j x_{j,0}^(d_j-1) x_{j,1}``.

    Points passed to ``transform``/``predict`` are rows
    ``(x_{1,0}, x_{1,1}, ..., x_{k,0}, x_{k,1})``.
    """

    def __init__(self, tol=DEFAULT_TOL, mode="rational-hybrid", anchors=None, scaled=False, n_jobs=None):
        self.tol = tol
        self.mode = mode
        self.anchors = anchors
        self.scaled = scaled
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        self.profile_ = check_profile(X)
        rep = decompose_w_product(
            self.profile_, tol=self.tol, anchors=self.anchors, mode=self.mode, scaled=self.scaled, n_jobs=self.n_jobs
        )
        self.report_ = rep
        self.decomposition_ = rep.decomposition
        self.length_ = rep.length
        self.residual_ = rep.residual
        dec = rep.decomposition
        self.weights_ = np.array([complex(t.weight) for t in dec.terms])
        self.vectors_ = np.array([[[complex(p), complex(q)] for p, q in t.vectors] for t in dec.terms])
        return self

    def transform(self, X):
        check_is_fitted(self, "decomposition_")
        k = self.profile_.k
        X = _check_points(X, 2 * k).reshape(-1, k, 2)
        # linear forms p x_0 + q x_1 per point, term and factor
        lin = np.einsum("nja,tja->ntj", X, self.vectors_)
        powered = lin ** np.array(self.profile_.degrees)
        return self.weights_ * powered.prod(axis=2)

    def predict(self, X):
        return self.transform(X).sum(axis=1)


class SylvesterDecomposer(TransformerMixin, BaseEstimator):
    """Waring decomposition of a binary form ``sum_i a_i C(e,i) u^(e-i) v^i``.

    Points passed to ``transform``/``predict`` are rows ``(u, v)``.
    """

    def __init__(self, tol=1e-10):
        self.tol = tol

    def fit(self, X, y=None):
        self.form_ = check_coefficients(X)
        W = sylvester_decompose(self.form_, tol=self.tol)
        self.decomposition_ = W
        self.rank_ = len(W)
        self.kernel_element_ = W.kernel_element
        self.roots_ = [(a, b) for _, a, b in W.terms]
        self.weights_ = [lam for lam, _, _ in W.terms]
        return self

    def transform(self, X):
        check_is_fitted(self, "decomposition_")
        X = _check_points(X, 2)
        roots = np.array([[complex(a), complex(b)] for a, b in self.roots_]).reshape(-1, 2)
        lin = X @ roots.T
        return np.array([complex(w) for w in self.weights_]) * lin**self.form_.degree

    def predict(self, X):
        return self.transform(X).sum(axis=1)
