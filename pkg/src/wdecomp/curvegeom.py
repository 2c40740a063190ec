"""The curves L^J, the spans of their Segre-Veronese images, and the map to binary forms.

The point with curve parameter ``[t : u]`` on ``L^J`` is
``((t, u), (eps_2 t, u), ..., (eps_k t, u))``; its coordinates are
``t^s u^(d-s) * prod_{j in J} (-1)^(i_j)`` at an index ``i`` of degree ``s``.
Relative to an anchor this is ``sigma_s * eps_i * t^s u^(d-s)``, so the
sigma-corrected binary form of the point is ``(u U + t V)^d``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .binwaring import BinaryForm, WaringDecomposition
from .exceptions import IndexRangeError
from .exact import is_exact_scalar
from .indexcomb import (
    DegreeProfile,
    as_profile,
    check_anchors,
    curve_sign,
    enumerate_indices,
    epsilon_sign,
    standard_shift,
)
from .tensorcore import CoordTensor, RankOneTerm


@dataclass(frozen=True)
class CurveSpec:
    profile: DegreeProfile
    J: tuple = ()

    def __post_init__(self):
        profile = as_profile(self.profile)
        J = tuple(sorted(set(int(r) for r in self.J)))
        if any(not 2 <= r <= profile.k for r in J):
            raise IndexRangeError(f"J={J} is not a subset of [2, {profile.k}]")
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "J", J)

    def sign(self, r: int) -> int:
        return curve_sign(self.J, r)


@dataclass(frozen=True)
class SpanEquation:
    """``z[lhs] = sign * z[rhs]``."""

    lhs: tuple
    rhs: tuple
    sign: int

    def holds(self, tensor: CoordTensor, tol: float = 0.0) -> bool:
        a, b = tensor[self.lhs], tensor[self.rhs]
        if tol == 0:
            return a == b if self.sign == 1 else a == -b
        return abs(complex(a - self.sign * b)) <= tol


def span_equations(curve: CurveSpec) -> list:
    profile = curve.profile
    out = []
    for i in enumerate_indices(profile):
        if i[0] < 1:
            continue
        for r in range(2, profile.k + 1):
            if i[r - 1] <= profile.degrees[r - 1] - 1:
                out.append(SpanEquation(i, standard_shift(i, 1, r, profile), curve.sign(r)))
    return out


def curve_point(curve: CurveSpec, t, u) -> RankOneTerm:
    if t == 0 and u == 0:
        raise ValueError("curve parameter (t, u) must be nonzero")
    vecs = [(t, u)] + [(curve.sign(r) * t, u) for r in range(2, curve.profile.k + 1)]
    one = 1 if is_exact_scalar(t) and is_exact_scalar(u) else 1.0
    return RankOneTerm(one, tuple(vecs))


def sigma(curve: CurveSpec, anchors: dict, s: int) -> int:
    """Sign of the curve-point coordinate at the degree-``s`` anchor."""
    t = anchors[s]
    n = sum(t[r - 1] for r in curve.J)
    return -1 if n % 2 else 1


@dataclass(frozen=True)
class CurveSpanElement:
    """The element of span(C^J) with coordinate ``eps_i * alphas[s]`` at ``i`` of degree ``s``."""

    curve: CurveSpec
    anchors: dict
    alphas: tuple

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(self.alphas))
        object.__setattr__(self, "anchors", check_anchors(self.curve.profile, self.anchors))
        if len(self.alphas) != self.curve.profile.d_total + 1:
            raise ValueError(f"need {self.curve.profile.d_total + 1} alphas, got {len(self.alphas)}")

    def __hash__(self):
        return hash((self.curve, self.alphas))

    def to_tensor(self) -> CoordTensor:
        profile = self.curve.profile
        exact = all(is_exact_scalar(a) for a in self.alphas)
        arr = np.empty(profile.shape, dtype=object if exact else complex)
        for i in enumerate_indices(profile):
            s = sum(i)
            arr[i] = epsilon_sign(self.curve.J, self.anchors[s], i) * self.alphas[s]
        return CoordTensor(profile, arr)


def span_element(curve: CurveSpec, alphas: Sequence, anchors: Optional[dict] = None) -> CurveSpanElement:
    return CurveSpanElement(curve, anchors, tuple(alphas))


def point_as_element(curve: CurveSpec, t, u, anchors: Optional[dict] = None) -> CurveSpanElement:
    """The curve point ``[t : u]`` written in anchor-relative span coordinates."""
    anchors = check_anchors(curve.profile, anchors)
    d = curve.profile.d_total
    alphas = [sigma(curve, anchors, s) * t**s * u ** (d - s) for s in range(d + 1)]
    return CurveSpanElement(curve, anchors, tuple(alphas))


def phi(element: CurveSpanElement) -> BinaryForm:
    return BinaryForm(element.alphas)


def corrected_form(element: CurveSpanElement) -> BinaryForm:
    c = element.curve
    return BinaryForm(tuple(sigma(c, element.anchors, s) * a for s, a in enumerate(element.alphas)))


def pullback(curve: CurveSpec, waring) -> list:
    """Map ``sum lam (alpha U + beta V)^d`` of a corrected form to weighted curve points.

    The linear form ``(alpha, beta)`` corresponds to the curve parameter
    ``[t : u] = [beta : alpha]``.
    """
    terms = waring.terms if isinstance(waring, WaringDecomposition) else waring
    out = []
    for lam, alpha, beta in terms:
        pt = curve_point(curve, beta, alpha)
        out.append(RankOneTerm(lam * pt.weight, pt.vectors))
    return out
