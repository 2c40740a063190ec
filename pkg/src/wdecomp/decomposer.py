"""End-to-end construction of a length 2^(k-1)(d - 2k + 2) decomposition of W_{d_1} x ... x W_{d_k}."""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .binwaring import RANK_TOL, BinaryForm, sylvester_decompose
from .curvegeom import corrected_form, pullback
from .exceptions import VerificationError
from .indexcomb import as_profile, check_anchors, subsets
from .tensorcore import (
    Decomposition,
    RankOneTerm,
    eval_decomposition,
    residual,
    w_product,
)
from .wsystem import assemble_TJ, closed_form_solution

DEFAULT_TOL = 1e-8
MODES = ("rational-hybrid", "float")


def bound_value(profile) -> int:
    profile = as_profile(profile)
    return 2 ** (profile.k - 1) * (profile.d_total - 2 * profile.k + 2)


def prior_bound_delta(profile) -> int:
    """Improvement 2^k(k-1) over the best previously known bound.

    For k = 2 an independent earlier bound already equals ours, so the gap is 0.
    """
    k = as_profile(profile).k
    return 0 if k == 2 else 2**k * (k - 1)


@dataclass
class DecompositionReport:
    decomposition: Decomposition
    length: int
    bound: int
    residual: float
    per_J_ranks: dict
    elapsed: float
    anchors: dict = field(default_factory=dict)
    forms: dict = field(default_factory=dict)  # (s1, s2) -> WaringDecomposition

    @property
    def success(self) -> bool:
        return self.length <= self.bound


def _to_float_form(F: BinaryForm) -> BinaryForm:
    return BinaryForm(tuple(complex(a) for a in F.coeffs))


def _sign_key(F: BinaryForm, k: int, d: int) -> tuple:
    return (1 if F.coeffs[k - 2] > 0 else -1, 1 if F.coeffs[d - k] > 0 else -1)


def decompose_w_product(
    profile,
    tol: float = DEFAULT_TOL,
    anchors: Optional[dict] = None,
    mode: str = "rational-hybrid",
    scaled: bool = False,
    n_jobs: Optional[int] = None,
) -> DecompositionReport:
    """Decompose the W product along the 2^(k-1) rational normal curves C^J.

    Each T^J is mapped to its sign-corrected binary form, which has only two
    nonzero coefficients (degrees k-2 and d-k); the up to four sign variants are
    decomposed once each by Sylvester's algorithm and pulled back onto the curves.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    start = time.perf_counter()
    profile = as_profile(profile)
    anchors = check_anchors(profile, anchors)
    d, k = profile.d_total, profile.k
    table = closed_form_solution(profile, anchors, sparse=True)

    elements = {J: assemble_TJ(profile, anchors, table, J) for J in subsets(k)}
    forms = {J: corrected_form(el) for J, el in elements.items()}

    # at most four distinct forms, up to the signs of a_(k-2) and a_(d-k)
    cache: dict = {}
    for F in forms.values():
        if F not in cache:
            G = _to_float_form(F) if mode == "float" else F
            cache[F] = sylvester_decompose(G, tol=RANK_TOL)

    def per_J(J):
        return pullback(elements[J].curve, cache[forms[J]])

    Js = subsets(k)
    if n_jobs is not None and n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            pieces = list(pool.map(per_J, Js))
    else:
        pieces = [per_J(J) for J in Js]

    scale = 1 if scaled else math.prod(profile.degrees)
    terms = []
    per_J_ranks = {}
    for J, piece in zip(Js, pieces):
        per_J_ranks[J] = len(piece)
        for t in piece:
            w = t.weight / scale if scale != 1 else t.weight
            terms.append(RankOneTerm(w, t.vectors))
    dec = Decomposition(profile, terms, target_scale=math.prod(profile.degrees) if scaled else 1)
    ok, res = verify_decomposition(dec, tol)
    if not ok:
        raise VerificationError(res, tol)
    return DecompositionReport(
        decomposition=dec,
        length=len(terms),
        bound=bound_value(profile),
        residual=res,
        per_J_ranks=per_J_ranks,
        elapsed=time.perf_counter() - start,
        anchors=anchors,
        forms={_sign_key(F, k, d): cache[F] for F in cache},
    )


def verify_decomposition(dec: Decomposition, tol: float = DEFAULT_TOL) -> tuple:
    """Compare the decomposition with ``target_scale * W`` and return ``(passed, residual)``."""
    target = w_product(dec.profile, scaled=False).scale(dec.target_scale)
    res = residual(eval_decomposition(dec), target)
    return res <= tol, res
