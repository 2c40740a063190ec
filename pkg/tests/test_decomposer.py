import cmath

import numpy as np
import pytest

from wdecomp.decomposer import (
    bound_value,
    decompose_w_product,
    prior_bound_delta,
    verify_decomposition,
)
from wdecomp.exceptions import VerificationError
from wdecomp.indexcomb import DegreeProfile
from wdecomp.tensorcore import Decomposition, RankOneTerm, evaluate_form


def test_bound_values():
    assert bound_value((3, 3)) == 8
    assert bound_value((3, 3, 3)) == 20
    assert bound_value((4, 5)) == 14
    assert [prior_bound_delta((3,) * k) for k in (2, 3, 4)] == [0, 16, 48]


def test_golden_case_uses_fourth_roots():
    rep = decompose_w_product((3, 3))
    assert rep.length == 8 and rep.residual <= 1e-10
    fourth = []
    for t in rep.decomposition.terms:
        (p1, q1), (p2, q2) = t.vectors
        fourth.append((complex(q1) / complex(p1)) ** 4)
    # every curve parameter is a 4th root of +c or -c for one shared c > 0
    assert all(abs(z.imag) < 1e-9 for z in fourth)
    assert max(abs(z) for z in fourth) - min(abs(z) for z in fourth) < 1e-9
    assert {round(z.real / abs(z)) for z in fourth} == {1, -1}


@pytest.mark.parametrize("dims, length", [((3, 3, 3), 20), ((3, 4), 10), ((4, 4, 5), 36)])
def test_lengths_and_residuals(dims, length):
    rep = decompose_w_product(dims)
    assert rep.length == length == rep.bound
    assert rep.residual <= 1e-8 and rep.success


def test_per_subset_ranks_and_form_cache():
    rep = decompose_w_product((3, 4, 5))
    p = DegreeProfile((3, 4, 5))
    assert set(rep.per_J_ranks.values()) == {p.d_total - 2 * p.k + 2}
    assert 1 <= len(rep.forms) <= 4


def test_float_mode_parallel_and_scaled():
    a = decompose_w_product((3, 4, 3), mode="float", n_jobs=4)
    b = decompose_w_product((3, 4, 3), scaled=True)
    assert a.length == b.length == 24
    assert b.decomposition.target_scale == 36 and b.residual <= 1e-8
    with pytest.raises(ValueError):
        decompose_w_product((3, 3), mode="symbolic")


def test_decomposition_evaluates_to_the_monomial():
    dims = (3, 4)
    dec = decompose_w_product(dims).decomposition
    pts = np.random.default_rng(1).normal(size=(5, 4))
    got = np.zeros(5, dtype=complex)
    for t in dec.terms:
        val = complex(t.weight)
        for j, (p, q) in enumerate(t.vectors):
            val = val * (complex(p) * pts[:, 2 * j] + complex(q) * pts[:, 2 * j + 1]) ** dims[j]
        got += val
    want = pts[:, 0] ** 2 * pts[:, 1] * pts[:, 2] ** 3 * pts[:, 3]
    assert np.allclose(got, want, atol=1e-10)


def test_verify_rejects_perturbed_and_empty():
    dec = decompose_w_product((3, 3)).decomposition
    ok, res = verify_decomposition(dec)
    assert ok
    terms = list(dec.terms)
    t0 = terms[0]
    terms[0] = RankOneTerm(complex(t0.weight) + 1e-2, t0.vectors)
    ok, res = verify_decomposition(Decomposition(dec.profile, terms))
    assert not ok and res > 1e-3
    ok, res = verify_decomposition(Decomposition(dec.profile, []))
    assert not ok and res == pytest.approx(1 / 9)


def test_verification_failure_raises():
    with pytest.raises(VerificationError) as info:
        decompose_w_product((3, 3), tol=1e-30)
    assert info.value.residual > 1e-30
