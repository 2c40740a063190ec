"""Multi-index sets, standard shifts and the sign combinatorics of the curves L^J.

Positions ``r`` and members of a subset ``J`` are 1-based, so ``J`` is always a
subset of ``{2, ..., k}``.  Multi-indices are plain tuples of ints.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .exceptions import (
    DegreeMismatchError,
    IndexRangeError,
    InvalidProfileError,
    ShiftOutOfBoundsError,
)

MultiIndex = tuple  # tuple[int, ...]
SubsetJ = tuple  # sorted tuple of positions in [2, k]


@dataclass(frozen=True)
class DegreeProfile:
    """The degrees ``(d_1, ..., d_k)`` of the factors W_{d_j}."""

    degrees: tuple

    def __post_init__(self):
        degrees = tuple(int(d) for d in self.degrees)
        object.__setattr__(self, "degrees", degrees)
        if len(degrees) < 2:
            raise InvalidProfileError(f"need at least two factors, got k={len(degrees)}")
        if any(d < 3 for d in degrees):
            raise InvalidProfileError(f"degrees must be >= 3, got {degrees}")

    @property
    def k(self) -> int:
        return len(self.degrees)

    @property
    def d_total(self) -> int:
        return sum(self.degrees)

    @property
    def shape(self) -> tuple:
        return tuple(d + 1 for d in self.degrees)

    @property
    def w_index(self) -> MultiIndex:
        """The multi-index ``(d_1 - 1, ..., d_k - 1)`` carrying the W product."""
        return tuple(d - 1 for d in self.degrees)

    def contains(self, i: Iterable[int]) -> bool:
        i = tuple(i)
        return len(i) == self.k and all(0 <= a <= d for a, d in zip(i, self.degrees))

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return self.k


def as_profile(dims) -> DegreeProfile:
    if isinstance(dims, DegreeProfile):
        return dims
    return DegreeProfile(tuple(dims))


@lru_cache(maxsize=256)
def _all_indices(degrees: tuple) -> tuple:
    # product over descending ranges is lexicographically descending with i_1 most
    # significant; the stable sort by degree keeps that order inside each slice
    desc = itertools.product(*(range(d, -1, -1) for d in degrees))
    return tuple(sorted(desc, key=sum))


def enumerate_indices(profile: DegreeProfile, s: Optional[int] = None) -> list:
    """Return A_d (or the slice A_{d,s}) in graded order, descending lex within a degree."""
    profile = as_profile(profile)
    allidx = _all_indices(profile.degrees)
    if s is None:
        return list(allidx)
    if not 0 <= s <= profile.d_total:
        raise IndexRangeError(f"degree s={s} outside [0, {profile.d_total}]")
    return [i for i in allidx if sum(i) == s]


def standard_shift(i: MultiIndex, r1: int, r2: int, profile: DegreeProfile) -> MultiIndex:
    """Decrement entry ``r1`` and increment entry ``r2`` (1-based positions)."""
    profile = as_profile(profile)
    i = tuple(i)
    k = profile.k
    if not (1 <= r1 <= k and 1 <= r2 <= k) or r1 == r2:
        raise ShiftOutOfBoundsError(f"invalid shift positions ({r1}, {r2}) for k={k}")
    if i[r1 - 1] < 1 or i[r2 - 1] > profile.degrees[r2 - 1] - 1:
        raise ShiftOutOfBoundsError(f"shift ({r1}, {r2}) leaves A_d from {i}")
    out = list(i)
    out[r1 - 1] -= 1
    out[r2 - 1] += 1
    return tuple(out)


def subsets(k: int) -> list:
    """All J in [2, k], ordered by size, then by minimum, then lexicographically."""
    positions = range(2, k + 1)
    out = [J for n in range(k) for J in itertools.combinations(positions, n)]
    return sorted(out, key=lambda J: (len(J), J))


def curve_sign(J: SubsetJ, r: int) -> int:
    """epsilon_r^J: -1 iff ``r`` is in ``J``."""
    return -1 if r in J else 1


def odd_positions(anchor: MultiIndex, i: MultiIndex) -> frozenset:
    """N_i: positions j >= 2 where ``anchor_j - i_j`` is odd."""
    return frozenset(j for j in range(2, len(i) + 1) if (anchor[j - 1] - i[j - 1]) % 2)


def epsilon_sign(J: SubsetJ, anchor: MultiIndex, i: MultiIndex) -> int:
    """Sign of coordinate ``i`` in span(C^J) when the anchor coordinate has sign +1."""
    if len(anchor) != len(i):
        raise DegreeMismatchError("anchor and index have different lengths")
    if sum(anchor) != sum(i):
        raise DegreeMismatchError(f"anchor {anchor} and index {i} have different degrees")
    n = len(odd_positions(anchor, i).intersection(J))
    return -1 if n % 2 else 1


def default_anchors(profile: DegreeProfile) -> dict:
    """First index of each slice, except the forced W index at degree d - k."""
    profile = as_profile(profile)
    anchors = {s: enumerate_indices(profile, s)[0] for s in range(profile.d_total + 1)}
    anchors[profile.d_total - profile.k] = profile.w_index
    return anchors


def check_anchors(profile: DegreeProfile, anchors: Optional[dict]) -> dict:
    """Validate an anchor map, filling unspecified degrees with the defaults."""
    profile = as_profile(profile)
    out = default_anchors(profile)
    if anchors is None:
        return out
    for s, t in anchors.items():
        s = int(s)
        t = tuple(int(a) for a in t)
        if not profile.contains(t) or sum(t) != s:
            raise IndexRangeError(f"anchor {t} is not in A_(d,{s})")
        out[s] = t
    if out[profile.d_total - profile.k] != profile.w_index:
        raise IndexRangeError(f"anchor at degree d-k must be {profile.w_index}")
    return out


def sign_pattern_set(profile: DegreeProfile, s: int, anchor: Optional[MultiIndex] = None) -> set:
    """The set B_{d,s} of sign vectors (eps^{2}, ..., eps^{k}) over the slice A_{d,s}."""
    profile = as_profile(profile)
    slice_ = enumerate_indices(profile, s)
    if anchor is None:
        anchor = slice_[0]
    anchor = tuple(anchor)
    if anchor not in slice_:
        raise IndexRangeError(f"anchor {anchor} is not in A_(d,{s})")
    singletons = [(r,) for r in range(2, profile.k + 1)]
    return {tuple(epsilon_sign(J, anchor, i) for J in singletons) for i in slice_}


def min_full_pattern_degree(profile: DegreeProfile) -> int:
    """Smallest s with |B_{d,s}| = 2^(k-1); always k - 1."""
    profile = as_profile(profile)
    full = 2 ** (profile.k - 1)
    for s in range(profile.d_total + 1):
        if len(sign_pattern_set(profile, s)) == full:
            if s != profile.k - 1:
                raise RuntimeError(f"full sign patterns first at s={s}, expected {profile.k - 1}")
            return s
    raise RuntimeError("no degree carries all sign patterns")


def subset_parity_counts(N: Iterable[int], k: int) -> tuple:
    """Count J in [2, k] by the parity of |J & N| and of |J| + |J & N|."""
    N = frozenset(N)
    if k < 2 or not N <= set(range(2, k + 1)):
        raise IndexRangeError(f"N={sorted(N)} is not a subset of [2, {k}]")
    even_inter = odd_inter = even_sum = odd_sum = 0
    for J in subsets(k):
        m = len(N.intersection(J))
        if m % 2:
            odd_inter += 1
        else:
            even_inter += 1
        if (len(J) + m) % 2:
            odd_sum += 1
        else:
            even_sum += 1
    return even_inter, odd_inter, even_sum, odd_sum
