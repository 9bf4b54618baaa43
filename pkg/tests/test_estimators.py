import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from rleibniz.estimators import CartanDecomposition, PIdealDecomposition, RestrictedStructure
from rleibniz.presets import preset


def test_restricted_structure():
    A = preset("aff2", 3)
    est = RestrictedStructure().fit(A)
    assert est.restrictable_
    # L_{t+x} satisfies L^3 = L, so (t + x)^[3] = t + x
    assert est.transform([[1, 1], [0, 2]]).tolist() == [[1, 1], [0, 0]]
    assert not RestrictedStructure().fit(preset("nonres", 3)).restrictable_
    with pytest.raises(ValueError):
        RestrictedStructure().fit(preset("nonres", 3)).transform([[1, 0, 0]])


def test_fit_with_given_pmap():
    A = preset("aff2", 5)
    est = RestrictedStructure(samples=10).fit(A, pmap=[[1, 0], [0, 0]])
    assert est.pmap_.images.tolist() == [[1, 0], [0, 0]]


def test_cartan_decomposition_round_trip():
    A = preset("aff2+aff2", 3)
    est = CartanDecomposition(seed=1).fit(A)
    assert est.roots_ == [(0, 0), (0, 1), (1, 0)]
    X = A.random_elements(np.random.default_rng(0), 5)
    Y = est.transform(X)
    assert np.array_equal(est.inverse_transform(Y), X)


def test_pideal_decomposition():
    A = preset("aff2+aff2", 2)
    est = PIdealDecomposition().fit(A)
    assert est.summand_dims_ == [2, 2]
    assert np.array_equal(est.transform(np.eye(4, dtype=np.int64)), np.eye(4, dtype=np.int64))


def test_sklearn_protocol():
    est = CartanDecomposition(seed=4, max_ext=2)
    assert est.get_params()["max_ext"] == 2
    assert clone(est).get_params() == est.get_params()
    with pytest.raises(NotFittedError):
        est.transform([[0, 1]])
