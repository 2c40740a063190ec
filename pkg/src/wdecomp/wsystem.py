"""The linear system writing prod(d_j) * W as a sum over J of elements T^J of span(C^J).

The system splits by degree ``s`` into subsystems ``S_s`` whose unknowns are the
``alpha_s^J``; the matrix of ``S_s`` has rows indexed by A_{d,s}, columns by the
subsets J, and entries ``eps_i^J`` (relative to the degree-``s`` anchor).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import exact as ex
from .curvegeom import CurveSpanElement, CurveSpec
from .exceptions import InconsistentSystemError
from .indexcomb import (
    DegreeProfile,
    as_profile,
    check_anchors,
    enumerate_indices,
    epsilon_sign,
    subsets,
)


@dataclass
class SolutionTable:
    """Values ``alpha_s^J`` keyed by ``(J, s)``.

    ``nullity[s]`` is the dimension of the solution space of ``S_s`` when the
    table comes from :func:`solve_exact`; the closed-form table leaves it empty.
    """

    profile: DegreeProfile
    anchors: dict
    alphas: dict
    nullity: dict = field(default_factory=dict)

    def column(self, s: int) -> list:
        return [self.alphas[J, s] for J in subsets(self.profile.k)]

    def row(self, J) -> list:
        return [self.alphas[tuple(J), s] for s in range(self.profile.d_total + 1)]

    def nonzero_degrees(self) -> list:
        d = self.profile.d_total
        return [s for s in range(d + 1) if any(a != 0 for a in self.column(s))]


def reference_anchor(profile: DegreeProfile, s: int):
    """Anchor under which ``((-1)^|J|)_J`` solves a homogeneous low/high-degree subsystem.

    For ``s <= k - 2`` this is the first index of the slice, ``(s, 0, ..., 0)``; for
    ``s >= d - k + 2`` the last one, ``(d_1 - (d - s), d_2, ..., d_k)``.  Both keep
    every entry j >= 2 fixed, so fewer than k - 1 parities can differ.
    """
    sl = enumerate_indices(profile, s)
    return sl[0] if s <= profile.k - 2 else sl[-1]


def closed_form_solution(profile, anchors: Optional[dict] = None, sparse: bool = True) -> SolutionTable:
    """Explicit solution: ``alpha_(d-k)^J = 2^(1-k)`` and signed ones at the free degrees.

    For a free degree ``s`` the value is ``(-1)^|J|`` measured against
    :func:`reference_anchor`; converting to the chosen anchor multiplies by the
    sign of the chosen anchor relative to the reference.  With default anchors
    and ``s <= k - 2`` the correction is identically 1.
    """
    profile = as_profile(profile)
    anchors = check_anchors(profile, anchors)
    d, k = profile.d_total, profile.k
    if sparse:
        free = [k - 2]
    else:
        free = list(range(0, k - 1)) + list(range(d - k + 2, d + 1))
    alphas = {}
    for J in subsets(k):
        for s in range(d + 1):
            alphas[J, s] = Fraction(0)
        alphas[J, d - k] = Fraction(1, 2 ** (k - 1))
        for s in free:
            ref = reference_anchor(profile, s)
            corr = epsilon_sign(J, ref, anchors[s])
            alphas[J, s] = Fraction(corr * (-1) ** len(J))
    return SolutionTable(profile, anchors, alphas)


def build_subsystem(profile, anchors: Optional[dict], s: int) -> tuple:
    """Matrix (rows A_{d,s}, columns J) of signs and the right-hand side of S_s."""
    profile = as_profile(profile)
    anchors = check_anchors(profile, anchors)
    t = anchors[s]
    rows = enumerate_indices(profile, s)
    cols = subsets(profile.k)
    matrix = [[epsilon_sign(J, t, i) for J in cols] for i in rows]
    target = profile.w_index
    rhs = [Fraction(1) if i == target else Fraction(0) for i in rows]
    return matrix, rhs


def solve_exact(profile, anchors: Optional[dict] = None) -> SolutionTable:
    """Solve every S_s by exact row reduction.

    Uniquely solvable subsystems give their unique solution; the others give the
    first null-space basis vector (a 1 at the first free column), so the table is
    nonzero exactly at the degrees admitting a nonzero solution.
    """
    profile = as_profile(profile)
    anchors = check_anchors(profile, anchors)
    cols = subsets(profile.k)
    alphas, nullity = {}, {}
    for s in range(profile.d_total + 1):
        matrix, rhs = build_subsystem(profile, anchors, s)
        x = ex.solve(matrix, rhs, len(cols))
        if x is None:
            raise InconsistentSystemError(f"subsystem S_{s} has no solution")
        basis = ex.nullspace(matrix, len(cols))
        nullity[s] = len(basis)
        if all(v == 0 for v in x) and basis:
            x = basis[0]
        for J, v in zip(cols, x):
            alphas[J, s] = v
    return SolutionTable(profile, anchors, alphas, nullity)


def satisfies(table: SolutionTable, s: int) -> bool:
    """Exact check that the degree-``s`` column of ``table`` solves S_s."""
    matrix, rhs = build_subsystem(table.profile, table.anchors, s)
    return ex.matvec(matrix, table.column(s)) == rhs


def assemble_TJ(profile, anchors: Optional[dict], table: SolutionTable, J) -> CurveSpanElement:
    profile = as_profile(profile)
    J = tuple(sorted(J))
    alphas = tuple(table.alphas[J, s] for s in range(profile.d_total + 1))
    return CurveSpanElement(CurveSpec(profile, J), check_anchors(profile, anchors), alphas)
