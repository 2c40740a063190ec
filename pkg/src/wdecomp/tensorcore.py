"""Coordinate tensors over A_d, rank-one terms and the W product.

A :class:`CoordTensor` with coefficients ``z`` stands for the multihomogeneous form

    sum_i z[i] * prod_j C(d_j, i_j) x_{j,0}^{i_j} x_{j,1}^{d_j - i_j},

so the binomials live in the basis and a point ``(p_j, q_j)_j`` raised to the
powers ``d_j`` has the pure monomial coordinates ``prod_j p_j^{i_j} q_j^{d_j-i_j}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import is_exact_scalar
from .exceptions import ProfileMismatchError
from .indexcomb import DegreeProfile, as_profile, enumerate_indices


def _is_exact(values) -> bool:
    return all(is_exact_scalar(v) for v in values)


@dataclass(frozen=True)
class CoordTensor:
    """Dense coefficient array of shape ``(d_1 + 1, ..., d_k + 1)``.

    ``coeffs`` has ``dtype=object`` (Fractions) in exact mode, ``complex`` otherwise.
    """

    profile: DegreeProfile
    coeffs: np.ndarray

    def __post_init__(self):
        if self.coeffs.shape != self.profile.shape:
            raise ProfileMismatchError(
                f"coefficient shape {self.coeffs.shape} does not match {self.profile.shape}"
            )
        self.coeffs.setflags(write=False)

    @property
    def exact(self) -> bool:
        return self.coeffs.dtype == object

    def __getitem__(self, i):
        return self.coeffs[tuple(i)]

    def vector(self) -> list:
        """Coefficients listed in :func:`enumerate_indices` order."""
        return [self.coeffs[i] for i in enumerate_indices(self.profile)]

    def to_complex(self) -> "CoordTensor":
        if not self.exact:
            return self
        return CoordTensor(self.profile, self.coeffs.astype(complex))

    def support(self) -> list:
        return [i for i in enumerate_indices(self.profile) if self.coeffs[i] != 0]

    def __add__(self, other: "CoordTensor") -> "CoordTensor":
        _check_same(self, other)
        return CoordTensor(self.profile, self.coeffs + other.coeffs)

    def __sub__(self, other: "CoordTensor") -> "CoordTensor":
        _check_same(self, other)
        return CoordTensor(self.profile, self.coeffs - other.coeffs)

    def scale(self, c) -> "CoordTensor":
        return CoordTensor(self.profile, self.coeffs * c)


def _check_same(a: CoordTensor, b: CoordTensor):
    if a.profile != b.profile:
        raise ProfileMismatchError(f"profiles differ: {a.profile.degrees} vs {b.profile.degrees}")


def zeros(profile, exact: bool = True) -> CoordTensor:
    profile = as_profile(profile)
    if exact:
        arr = np.empty(profile.shape, dtype=object)
        arr.fill(Fraction(0))
    else:
        arr = np.zeros(profile.shape, dtype=complex)
    return CoordTensor(profile, arr)


def w_product(profile, scaled: bool = False) -> CoordTensor:
    """W_{d_1} x ... x W_{d_k}; ``scaled`` multiplies by prod d_j so the entry is 1."""
    profile = as_profile(profile)
    arr = zeros(profile, exact=True).coeffs.copy()
    scale = 1 if scaled else math.prod(profile.degrees)
    arr[profile.w_index] = Fraction(1, scale)
    return CoordTensor(profile, arr)


@dataclass(frozen=True)
class RankOneTerm:
    """``weight * prod_j (p_j x_{j,0} + q_j x_{j,1})^{d_j}``."""

    weight: object
    vectors: tuple  # k pairs (p_j, q_j)

    def __post_init__(self):
        vecs = tuple((p, q) for p, q in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        for p, q in vecs:
            if p == 0 and q == 0:
                raise ValueError("a factor point (p, q) must be nonzero")

    @property
    def exact(self) -> bool:
        return _is_exact([self.weight] + [c for v in self.vectors for c in v])


@dataclass
class Decomposition:
    """A list of weighted rank-one terms aiming at ``target_scale * W``."""

    profile: DegreeProfile
    terms: list = field(default_factory=list)
    target_scale: object = 1

    def __len__(self):
        return len(self.terms)

    @property
    def exact(self) -> bool:
        return all(t.exact for t in self.terms)


def _factor_vector(p, q, d: int, exact: bool):
    if exact:
        return np.array([p**i * q ** (d - i) for i in range(d + 1)], dtype=object)
    i = np.arange(d + 1)
    return np.power(complex(p), i) * np.power(complex(q), d - i)


def term_coords(term: RankOneTerm, profile) -> CoordTensor:
    """Coordinates ``weight * prod_j p_j^{i_j} q_j^{d_j - i_j}``."""
    profile = as_profile(profile)
    if len(term.vectors) != profile.k:
        raise ProfileMismatchError(f"term has {len(term.vectors)} factors, profile has {profile.k}")
    exact = term.exact
    out = np.array(term.weight if exact else complex(term.weight), dtype=object if exact else complex)
    for (p, q), d in zip(term.vectors, profile.degrees):
        out = np.multiply.outer(out, _factor_vector(p, q, d, exact))
    return CoordTensor(profile, out)


def eval_decomposition(dec: Decomposition) -> CoordTensor:
    profile = dec.profile
    if dec.exact:
        total = zeros(profile, exact=True)
        for t in dec.terms:
            total = total + term_coords(t, profile)
        return total
    if not dec.terms:
        return zeros(profile, exact=False)
    # batched outer products: (r, prod so far) x (r, d_j + 1)
    acc = np.array([complex(t.weight) for t in dec.terms])[:, None]
    for j, d in enumerate(profile.degrees):
        p = np.array([complex(t.vectors[j][0]) for t in dec.terms])[:, None]
        q = np.array([complex(t.vectors[j][1]) for t in dec.terms])[:, None]
        i = np.arange(d + 1)[None, :]
        fac = np.power(p, i) * np.power(q, d - i)
        acc = (acc[:, :, None] * fac[:, None, :]).reshape(len(dec.terms), -1)
    return CoordTensor(profile, acc.sum(axis=0).reshape(profile.shape))


def _maxabs(arr: np.ndarray) -> float:
    if arr.size == 0:
        return 0.0
    if arr.dtype == object:
        return float(max(abs(complex(x)) for x in arr.flat))
    return float(np.max(np.abs(arr)))


def residual(a: CoordTensor, b: CoordTensor) -> float:
    """``max|a - b| / max(1, max|b|)``."""
    _check_same(a, b)
    if a.exact and b.exact:
        diff = a.coeffs - b.coeffs
    else:
        diff = a.to_complex().coeffs - b.to_complex().coeffs
    return _maxabs(diff) / max(1.0, _maxabs(b.coeffs))


def evaluate_form(tensor: CoordTensor, points: Sequence) -> np.ndarray:
    """Evaluate the represented polynomial at points ``(x_{1,0}, x_{1,1}, ..., x_{k,0}, x_{k,1})``."""
    profile = tensor.profile
    pts = np.asarray(points, dtype=complex).reshape(-1, 2 * profile.k)
    coeffs = tensor.to_complex().coeffs
    out = np.empty(len(pts), dtype=complex)
    for n, pt in enumerate(pts):
        acc = coeffs
        for j, d in reversed(list(enumerate(profile.degrees))):
            i = np.arange(d + 1)
            basis = np.array([math.comb(d, a) for a in i]) * pt[2 * j] ** i * pt[2 * j + 1] ** (d - i)
            acc = acc @ basis
        out[n] = acc
    return out
