"""Binary forms, catalecticants and Sylvester's algorithm.

A :class:`BinaryForm` with coefficients ``a`` is ``sum_i a_i C(e, i) u^(e-i) v^i``.
An :class:`ApolarOperator` with coefficients ``c`` is ``sum_j c_j du^(m-j) dv^j``;
it annihilates ``F`` iff ``sum_j c_j a_(r+j) = 0`` for every row ``r`` of
``Cat_m(F)``, and its roots ``[alpha : beta]`` give apolar linear forms
``alpha u + beta v``.

Coefficients that are all ints/Fractions run through exact arithmetic (ranks,
kernels, square-free tests); roots and weights fall back to floating point unless
every root is rational.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
import scipy.linalg
import sympy

from . import exact as ex
from .exceptions import (
    IndexRangeError,
    NotSquareFreeError,
    SylvesterFailure,
    ZeroFormError,
)
from .indexcomb import DegreeProfile, as_profile

RANK_TOL = 1e-10
SEPARATION_TOL = 1e-8
RECONSTRUCTION_TOL = 1e-8
RANDOM_TRIES = 64


@dataclass(frozen=True)
class BinaryForm:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.coeffs:
            raise ValueError("a binary form needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(ex.is_exact_scalar(a) for a in self.coeffs)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def monomial_coeffs(self) -> list:
        """Plain coefficients of ``u^(e-i) v^i`` (binomials multiplied in)."""
        e = self.degree
        return [math.comb(e, i) * a for i, a in enumerate(self.coeffs)]

    def __call__(self, u, v):
        e = self.degree
        return sum(c * u ** (e - i) * v**i for i, c in enumerate(self.monomial_coeffs()))


@dataclass(frozen=True)
class ApolarOperator:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def exact(self) -> bool:
        return all(ex.is_exact_scalar(c) for c in self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_binomial(self) -> bool:
        """Only the pure powers du^m and dv^m carry nonzero coefficients."""
        inner = self.coeffs[1:-1]
        return all(c == 0 for c in inner) and self.coeffs[0] != 0 and self.coeffs[-1] != 0

    def __call__(self, x, y):
        m = self.degree
        return sum(c * x ** (m - j) * y**j for j, c in enumerate(self.coeffs))

    def __str__(self):
        m = self.degree
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "*".join(
                p for p in (_pow("du", m - j), _pow("dv", j)) if p
            ) or "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts) or "0"


def _pow(name, n):
    if n == 0:
        return ""
    return name if n == 1 else f"{name}^{n}"


@dataclass
class WaringDecomposition:
    """``sum_m weight_m (alpha_m u + beta_m v)^e``; ``terms`` holds (weight, alpha, beta)."""

    degree: int
    terms: list = field(default_factory=list)
    kernel_element: Optional[ApolarOperator] = None

    def __len__(self):
        return len(self.terms)

    @property
    def exact(self) -> bool:
        return all(ex.is_exact_scalar(x) for t in self.terms for x in t)

    def to_form(self) -> BinaryForm:
        e = self.degree
        coeffs = []
        for s in range(e + 1):
            coeffs.append(sum((lam * a ** (e - s) * b**s for lam, a, b in self.terms), 0))
        return BinaryForm(coeffs)


def _check_order(F: BinaryForm, m: int):
    if not 0 <= m <= F.degree:
        raise IndexRangeError(f"catalecticant order {m} outside [0, {F.degree}]")


def catalecticant(F: BinaryForm, m: int) -> np.ndarray:
    """Hankel matrix ``(e - m + 1) x (m + 1)`` with entries ``a_(r + c)``."""
    _check_order(F, m)
    e = F.degree
    dtype = object if F.exact else complex
    return np.array([[F.coeffs[r + c] for c in range(m + 1)] for r in range(e - m + 1)], dtype=dtype)


def _float_rank(mat: np.ndarray, tol: float) -> int:
    if mat.size == 0:
        return 0
    sv = np.linalg.svd(mat.astype(complex), compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def cat_rank(F: BinaryForm, m: int, tol: float = RANK_TOL) -> int:
    mat = catalecticant(F, m)
    if F.exact:
        return ex.rank(mat.tolist())
    return _float_rank(mat, tol)


def kernel(F: BinaryForm, m: int, tol: float = RANK_TOL) -> list:
    """Basis of ``ker Cat_m(F)`` as apolar operators of degree ``m``."""
    mat = catalecticant(F, m)
    if F.exact:
        return [ApolarOperator(v) for v in ex.nullspace(mat.tolist(), m + 1)]
    basis = scipy.linalg.null_space(mat.astype(complex), rcond=tol)
    return [ApolarOperator(tuple(_clean(basis[:, j]))) for j in range(basis.shape[1])]


def _clean(vec, eps=1e-14):
    scale = max(np.max(np.abs(vec)), 1.0)
    return [0j if abs(x) < eps * scale else complex(x) for x in vec]


def _sympy_poly(p: ApolarOperator):
    x = sympy.Symbol("x")
    # dehomogenized at Y = 1: K(x, 1) = sum_j c_j x^(m - j)
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in map(ex.to_fraction, p.coeffs)], x)


def _infinity_multiplicity(coeffs) -> int:
    # [1 : 0] is a root of multiplicity equal to the number of leading zero c_j
    n = 0
    for c in coeffs:
        if c != 0:
            break
        n += 1
    return n


def square_free(p: ApolarOperator, sep_tol: float = SEPARATION_TOL) -> bool:
    """True iff ``K(X, Y) = sum c_j X^(m-j) Y^j`` has ``m`` distinct projective roots."""
    if p.is_zero():
        raise ValueError("zero operator")
    m = p.degree
    if m <= 1:
        return True
    if _infinity_multiplicity(p.coeffs) >= 2:
        return False
    if p.exact:
        f = _sympy_poly(p)
        return sympy.degree(sympy.gcd(f, f.diff()), f.gens[0]) == 0
    finite = [complex(c) for c in p.coeffs[_infinity_multiplicity(p.coeffs):]]
    if len(finite) > 2 and _resultant_degenerate(finite):
        return False
    try:
        pts = _float_roots(p)
    except np.linalg.LinAlgError:
        return False
    return _separated(pts, sep_tol)


def _resultant_degenerate(f: list, tol: float = RANK_TOL) -> bool:
    # f and f' share a root iff their Sylvester matrix is singular; a double root
    # splits by ~sqrt(eps) under np.roots, which a separation test alone misses
    n = len(f) - 1
    df = [c * (n - j) for j, c in enumerate(f[:-1])]
    size = 2 * n - 1
    mat = np.zeros((size, size), dtype=complex)
    for r in range(n - 1):
        mat[r, r : r + n + 1] = f
    for r in range(n):
        mat[n - 1 + r, r : r + n] = df
    sv = np.linalg.svd(mat, compute_uv=False)
    return sv[-1] <= tol * sv[0]


def _separated(pts, sep_tol) -> bool:
    vecs = []
    for a, b in pts:
        n = math.hypot(abs(a), abs(b))
        vecs.append((a / n, b / n))
    for i in range(len(vecs)):
        for j in range(i):
            # projective distance via |det| of normalized representatives
            a1, b1 = vecs[i]
            a2, b2 = vecs[j]
            if abs(a1 * b2 - a2 * b1) <= sep_tol:
                return False
    return True


def _binomial_roots(p: ApolarOperator) -> list:
    m = p.degree
    c0, cm = complex(p.coeffs[0]), complex(p.coeffs[-1])
    # c0 X^m + cm Y^m = 0  ->  X = (-cm / c0)^(1/m) * (m-th roots of unity)
    base = (-cm / c0)
    rad = abs(base) ** (1.0 / m)
    phase = cmath.phase(base) / m
    return [(rad * cmath.exp(1j * (phase + 2 * math.pi * n / m)), 1.0 + 0j) for n in range(m)]


def _float_roots(p: ApolarOperator) -> list:
    coeffs = [complex(c) for c in p.coeffs]
    n_inf = _infinity_multiplicity(coeffs)
    if p.is_binomial():
        return _binomial_roots(p)
    finite = np.roots(coeffs[n_inf:])  # companion-matrix eigenvalues of K(x, 1)
    out = [(complex(r), 1.0 + 0j) for r in finite]
    out.extend([(1.0 + 0j, 0j)] * n_inf)
    return out


def _rational_root(z: complex, p: ApolarOperator) -> Optional[Fraction]:
    if abs(z.imag) > 1e-9:
        return None
    cand = Fraction(z.real).limit_denominator(10**6)
    return cand if p(cand, Fraction(1)) == 0 else None


def roots(p: ApolarOperator, sep_tol: float = SEPARATION_TOL) -> list:
    """Projective roots ``(alpha, beta)`` of a square-free operator.

    Finite roots are normalized to ``beta = 1``; the root at infinity is ``(1, 0)``.
    Roots are returned as exact Fractions when the operator is exact and every
    root is rational, and as complex numbers otherwise.
    """
    if not square_free(p, sep_tol):
        raise NotSquareFreeError(f"operator {p} is not square-free")
    pts = _float_roots(p)
    if p.exact:
        rat = []
        for a, b in pts:
            if b == 0:
                rat.append((Fraction(1), Fraction(0)))
                continue
            r = _rational_root(a, p)
            if r is None:
                break
            rat.append((r, Fraction(1)))
        else:
            if len(set(rat)) == len(rat):
                return rat
    return pts


def _monic(p: ApolarOperator) -> ApolarOperator:
    lead = next(c for c in p.coeffs if c != 0)
    if lead == 1:
        return p
    return ApolarOperator(tuple(c / lead for c in p.coeffs))


def _find_square_free(F: BinaryForm, m: int, tol: float, seed: int = 0) -> Optional[ApolarOperator]:
    """Search ker Cat_m(F) for a square-free element, scaled to leading coefficient 1."""
    p = _search_kernel(F, m, tol, seed)
    return None if p is None else _monic(p)


def _search_kernel(F: BinaryForm, m: int, tol: float, seed: int) -> Optional[ApolarOperator]:
    # the binomial on the outer columns first, then basis elements, then random combinations
    mat = catalecticant(F, m)
    cols = [0, m] if m > 0 else [0]
    sub = mat[:, cols]
    if F.exact:
        sub_kernel = ex.nullspace(sub.tolist(), len(cols))
    else:
        sub_kernel = [list(v) for v in scipy.linalg.null_space(sub.astype(complex), rcond=tol).T]
    if m > 0 and sub_kernel:
        if len(sub_kernel) == 2:
            pair = (Fraction(1), Fraction(-1)) if F.exact else (1.0, -1.0)
        else:
            pair = tuple(sub_kernel[0])
        cand = ApolarOperator((pair[0],) + (0,) * (m - 1) + (pair[1],))
        if not cand.is_zero() and square_free(cand):
            return cand
    basis = kernel(F, m, tol)
    if not basis:
        return None
    for p in basis:
        if square_free(p):
            return p
    if len(basis) == 1:
        return None
    rng = random.Random(seed)
    for _ in range(RANDOM_TRIES):
        w = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in basis]
        if F.exact:
            c = tuple(sum((wi * v.coeffs[j] for wi, v in zip(w, basis)), Fraction(0)) for j in range(m + 1))
        else:
            c = tuple(sum(float(wi) * v.coeffs[j] for wi, v in zip(w, basis)) for j in range(m + 1))
        p = ApolarOperator(c)
        if not p.is_zero() and square_free(p):
            return p
    return None


@dataclass
class SylvesterResult:
    rank: int
    order: int  # catalecticant order of the square-free kernel element
    kernel_element: Optional[ApolarOperator]
    middle_rank: int


def _sylvester(F: BinaryForm, tol: float, need_element: bool) -> SylvesterResult:
    if F.is_zero():
        raise ZeroFormError("the zero form has no Waring decomposition")
    e = F.degree
    if e == 0:
        return SylvesterResult(1, 0, ApolarOperator((0,)), 1)
    r = cat_rank(F, e // 2, tol)
    p = _find_square_free(F, r, tol)
    if p is not None:
        return SylvesterResult(r, r, p, r)
    m = e - r + 2
    p = _find_square_free(F, m, tol) if need_element else None
    if need_element and p is None:
        raise SylvesterFailure(f"no square-free element in ker Cat_{m} for form of degree {e}")
    return SylvesterResult(m, m, p, r)


def sylvester_rank(F: BinaryForm, tol: float = RANK_TOL) -> int:
    return _sylvester(F, tol, need_element=False).rank


def _solve_weights(F: BinaryForm, pts: list, exact: bool):
    e = F.degree
    if exact:
        mat = [[a ** (e - s) * b**s for a, b in pts] for s in range(e + 1)]
        lam = ex.solve(mat, list(F.coeffs), len(pts))
        if lam is None:
            raise SylvesterFailure("coefficient system is inconsistent")
        return lam
    mat = np.array([[complex(a) ** (e - s) * complex(b) ** s for a, b in pts] for s in range(e + 1)])
    rhs = np.array([complex(a) for a in F.coeffs])
    lam, *_ = np.linalg.lstsq(mat, rhs, rcond=None)
    return [complex(x) for x in lam]


def reconstruction_error(F: BinaryForm, W: WaringDecomposition) -> float:
    got = np.array([complex(a) for a in W.to_form().coeffs])
    want = np.array([complex(a) for a in F.coeffs])
    return float(np.max(np.abs(got - want)) / max(1.0, np.max(np.abs(want))))


def sylvester_decompose(
    F: BinaryForm, tol: float = RANK_TOL, recon_tol: float = RECONSTRUCTION_TOL
) -> WaringDecomposition:
    """Minimal Waring decomposition of ``F`` by Sylvester's algorithm."""
    res = _sylvester(F, tol, need_element=True)
    if F.degree == 0:
        return WaringDecomposition(0, [(F.coeffs[0], 1, 0)], None)
    pts = roots(res.kernel_element)
    exact = F.exact and all(ex.is_exact_scalar(x) for pt in pts for x in pt)
    if not exact:
        # roots far outside the unit disk make the power matrix ill-conditioned
        pts = [(a / n, b / n) if n > 1 else (a, b) for a, b in pts for n in [max(abs(a), abs(b))]]
    lam = _solve_weights(F, pts, exact)
    dec = WaringDecomposition(F.degree, [(l, a, b) for l, (a, b) in zip(lam, pts)], res.kernel_element)
    err = reconstruction_error(F, dec)
    if err > recon_tol:
        raise SylvesterFailure(f"weights reconstruct the form only to {err:.3e}")
    return dec


def minimizer_form(profile: DegreeProfile, s1: int, s2: int) -> BinaryForm:
    """Degree-d form with ``a_(k-2) = s1``, ``a_(d-k) = s2 * 2^(1-k)`` and zeros elsewhere."""
    profile = as_profile(profile)
    if s1 not in (1, -1) or s2 not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    d, k = profile.d_total, profile.k
    a = [Fraction(0)] * (d + 1)
    a[k - 2] = Fraction(s1)
    a[d - k] = Fraction(s2, 2 ** (k - 1))
    return BinaryForm(a)
