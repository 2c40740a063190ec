import random
from fractions import Fraction

import pytest

from wdecomp.binwaring import BinaryForm, WaringDecomposition, sylvester_decompose
from wdecomp.curvegeom import (
    CurveSpec,
    corrected_form,
    curve_point,
    phi,
    point_as_element,
    pullback,
    sigma,
    span_element,
    span_equations,
)
from wdecomp.exceptions import IndexRangeError
from wdecomp.indexcomb import DegreeProfile, default_anchors, enumerate_indices
from wdecomp.tensorcore import Decomposition, eval_decomposition, residual, term_coords

P33 = DegreeProfile((3, 3))


def _equations_as_triples(curve):
    return {(e.lhs, e.rhs, e.sign) for e in span_equations(curve)}


def test_span_equations_small_case():
    plain = _equations_as_triples(CurveSpec(P33, ()))
    twisted = _equations_as_triples(CurveSpec(P33, (2,)))
    assert ((2, 2), (1, 3), 1) in plain
    assert ((2, 2), (1, 3), -1) in twisted
    assert len(plain) == len(twisted) == 9


def test_curve_point_examples():
    c = CurveSpec(P33, (2,))
    T = term_coords(curve_point(c, 1, 1), P33)
    assert all(T[i] == (-1) ** i[1] for i in enumerate_indices(P33))
    for J in [(), (2,)]:
        base = term_coords(curve_point(CurveSpec(P33, J), 0, 1), P33)
        assert base.support() == [(0, 0)]
    p = DegreeProfile((3, 4, 5))
    for J in [(), (2,), (3,), (2, 3)]:
        top = term_coords(curve_point(CurveSpec(p, J), 1, 0), p)
        assert top.support() == [(3, 4, 5)]
        assert top[(3, 4, 5)] == (-1) ** sum(p.degrees[j - 1] for j in J)
    with pytest.raises(IndexRangeError):
        CurveSpec(P33, (3,))


def test_sigma_examples():
    c = CurveSpec(P33, (2,))
    anchors = default_anchors(P33)
    anchors[6] = (3, 3)
    assert sigma(c, anchors, 6) == -1
    p = DegreeProfile((4, 4, 3))
    for s, t in default_anchors(p).items():
        assert sigma(CurveSpec(p, ()), default_anchors(p), s) == 1
        if all(x % 2 == 0 for x in t[1:]):
            assert sigma(CurveSpec(p, (2, 3)), default_anchors(p), s) == 1


def test_phi_and_corrected_form():
    half = Fraction(1, 2)
    a0, a6 = Fraction(3), Fraction(5)
    c = CurveSpec(P33, (2,))
    el = span_element(c, (a0, 0, 0, 0, half, 0, a6))
    assert phi(el).coeffs == (a0, 0, 0, 0, half, 0, a6)
    assert corrected_form(el).coeffs == (a0, 0, 0, 0, half, 0, -a6)
    plain = span_element(CurveSpec(P33, ()), (a0, 0, 0, 0, half, 0, a6))
    assert corrected_form(plain) == phi(plain)
    assert phi(span_element(c, [0] * 7)).is_zero()


def test_point_element_matches_curve_point():
    rng = random.Random(5)
    p = DegreeProfile((3, 4, 3))
    for J in [(), (2,), (3,), (2, 3)]:
        c = CurveSpec(p, J)
        t, u = Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(1, 9), rng.randint(1, 9))
        el = point_as_element(c, t, u)
        assert (el.to_tensor() - term_coords(curve_point(c, t, u), p)).support() == []
        d = p.d_total
        # the corrected form of a curve point is the power (u U + t V)^d
        assert corrected_form(el).coeffs == tuple(t**s * u ** (d - s) for s in range(d + 1))


def test_pullback_of_top_monomial():
    c = CurveSpec(P33, ())
    terms = pullback(c, WaringDecomposition(6, [(1, 0, 1)]))
    assert len(terms) == 1
    T = term_coords(terms[0], P33)
    assert T.support() == [(3, 3)]


def test_pullback_round_trip_on_random_span_elements():
    rng = random.Random(11)
    p = DegreeProfile((3, 4))
    for J in [(), (2,)]:
        c = CurveSpec(p, J)
        alphas = [Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(p.d_total + 1)]
        el = span_element(c, alphas)
        W = sylvester_decompose(corrected_form(el))
        dec = Decomposition(p, pullback(c, W))
        assert residual(eval_decomposition(dec), el.to_tensor()) < 1e-9


def test_sextic_piece_reconstructs_from_pullback():
    half = Fraction(1, 2)
    c = CurveSpec(P33, ())
    el = span_element(c, (half, 0, 0, 0, half, 0, 0))
    W = sylvester_decompose(BinaryForm(el.alphas))
    assert len(W) == 4
    dec = Decomposition(P33, pullback(c, W))
    assert residual(eval_decomposition(dec), el.to_tensor()) < 1e-12
