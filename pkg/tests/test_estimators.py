from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from wdecomp.estimators import SylvesterDecomposer, WProductDecomposer, check_coefficients, check_profile
from wdecomp.exceptions import InvalidProfileError


def test_check_helpers():
    assert check_profile([3, 4]).degrees == (3, 4)
    assert check_profile(np.array([3, 3, 5])).degrees == (3, 3, 5)
    with pytest.raises(InvalidProfileError):
        check_profile([2, 3])
    with pytest.raises(InvalidProfileError):
        check_profile([3.5, 3])
    assert check_coefficients([1, Fraction(1, 2)]).exact
    assert not check_coefficients([1.0, 0.5]).exact
    with pytest.raises(ValueError):
        check_coefficients([1])
    with pytest.raises(ValueError):
        check_coefficients([1.0, float("nan")])


def test_w_product_estimator_predicts_the_monomial():
    est = WProductDecomposer(n_jobs=2).fit([3, 4])
    assert est.length_ == 10 and est.residual_ <= 1e-8
    X = np.random.default_rng(3).normal(size=(7, 4))
    want = X[:, 0] ** 2 * X[:, 1] * X[:, 2] ** 3 * X[:, 3]
    assert np.allclose(est.predict(X), want, atol=1e-10)
    assert est.transform(X).shape == (7, 10)
    with pytest.raises(ValueError):
        est.predict(np.ones((2, 3)))


def test_params_and_clone():
    est = WProductDecomposer(tol=1e-6, mode="float")
    assert est.get_params()["mode"] == "float"
    assert clone(est).get_params() == est.get_params()
    with pytest.raises(NotFittedError):
        est.predict(np.ones((1, 4)))
    with pytest.raises(ValueError):
        WProductDecomposer(mode="bogus").fit([3, 3])


def test_sylvester_estimator():
    half = Fraction(1, 2)
    est = SylvesterDecomposer().fit([half, 0, 0, 0, half, 0, 0])
    assert est.rank_ == 4
    assert tuple(est.kernel_element_.coeffs) == (1, 0, 0, 0, -1)
    X = np.random.default_rng(0).normal(size=(5, 2))
    u, v = X[:, 0], X[:, 1]
    want = 0.5 * u**6 + 0.5 * 15 * u**2 * v**4
    assert np.allclose(est.predict(X), want)
    with pytest.raises(NotFittedError):
        SylvesterDecomposer().transform(X)
