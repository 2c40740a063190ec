"""Exact linear algebra over the rationals.

Rows are kept as sparse ``{column: Fraction}`` dicts, which keeps elimination fast
on the very sparse sign and flattening matrices this package produces.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, complex):
        if x.imag:
            raise TypeError(f"{x!r} is not rational")
        x = x.real
    return Fraction(x)


def is_exact_scalar(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def _sparse_rows(matrix) -> tuple:
    rows = []
    ncols = 0
    for row in matrix:
        row = list(row)
        ncols = max(ncols, len(row))
        rows.append({c: to_fraction(v) for c, v in enumerate(row) if v != 0})
    return rows, ncols


def rref(matrix) -> tuple:
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where ``rows[i]`` is the sparse pivot row whose
    pivot column is ``pivots[i]`` (pivot entry normalized to 1).
    """
    rows, _ = _sparse_rows(matrix)
    return rref_sparse(rows)


def rref_sparse(rows) -> tuple:
    """:func:`rref` for rows already given as ``{column: value}`` dicts."""
    reduced = []  # list of (pivot, row)
    for row in rows:
        row = {c: to_fraction(v) for c, v in row.items() if v != 0}
        for piv, prow in reduced:
            f = row.get(piv)
            if f:
                for c, v in prow.items():
                    nv = row.get(c, 0) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        if not row:
            continue
        piv = min(row)
        inv = 1 / row[piv]
        row = {c: v * inv for c, v in row.items()}
        # back-eliminate the new pivot from earlier rows
        for _, prow in reduced:
            f = prow.get(piv)
            if f:
                for c, v in row.items():
                    nv = prow.get(c, 0) - f * v
                    if nv:
                        prow[c] = nv
                    else:
                        prow.pop(c, None)
        reduced.append((piv, row))
    reduced.sort(key=lambda pr: pr[0])
    return [r for _, r in reduced], [p for p, _ in reduced]


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix, ncols=None) -> list:
    """Basis of the right null space; each vector has a 1 at its free column."""
    rows, pivots = rref(matrix)
    if ncols is None:
        ncols = max((len(list(r)) for r in matrix), default=0)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for piv, row in zip(pivots, rows):
            v[piv] = -row.get(free, Fraction(0))
        basis.append(v)
    return basis


def solve(matrix, rhs, ncols=None):
    """One solution of ``matrix @ x = rhs`` (free variables set to 0), or None."""
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    if ncols is None:
        ncols = max((len(list(r)) for r in matrix), default=0)
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for piv, row in zip(pivots, rows):
        x[piv] = row.get(ncols, Fraction(0))
    return x


def matvec(matrix, x) -> list:
    return [sum((to_fraction(a) * b for a, b in zip(row, x)), Fraction(0)) for row in matrix]
