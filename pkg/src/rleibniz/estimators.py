"""scikit-learn style wrappers.

``fit`` takes an :class:`~rleibniz.algebra.Algebra` (and optionally a p-map)
instead of a data matrix; ``transform`` maps rows of algebra elements to
coordinates in the adapted basis the fit produced.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .decomp import indecomposable_decomposition
from .exactla import inverse
from .restricted import PMap, is_restrictable, pmap_verify
from .toral import cartan_subalgebra, maximal_torus, root_decomposition


def _resolve_pmap(A, pmap, samples, seed):
    if pmap is None:
        return is_restrictable(A).pmap
    images = pmap.images if isinstance(pmap, PMap) else pmap
    return pmap_verify(A, images, samples, seed)


class _AdaptedBasis(TransformerMixin):
    def _set_basis(self, F, rows):
        self.field_ = F
        self.basis_ = np.asarray(rows, dtype=np.int64)
        self._inverse = inverse(F, self.basis_.T)

    def transform(self, X):
        check_is_fitted(self, "basis_")
        X = np.asarray(X, dtype=np.int64)
        return self.field_.matmul(X, self._inverse.T)

    def inverse_transform(self, Y):
        check_is_fitted(self, "basis_")
        return self.field_.matmul(np.asarray(Y, dtype=np.int64), self.basis_)


class RestrictedStructure(BaseEstimator, TransformerMixin):
    """Decide restrictability; ``transform`` applies the p-map row by row."""

    def __init__(self, samples=50, seed=0):
        self.samples = samples
        self.seed = seed

    def fit(self, A, y=None, pmap=None):
        self.algebra_ = A
        self.pmap_ = _resolve_pmap(A, pmap, self.samples, self.seed)
        self.restrictable_ = self.pmap_ is not None
        return self

    def transform(self, X):
        check_is_fitted(self, "algebra_")
        if self.pmap_ is None:
            raise ValueError("algebra is not restrictable")
        return self.pmap_(np.asarray(X, dtype=np.int64))


class CartanDecomposition(_AdaptedBasis, BaseEstimator):
    """Maximal torus, Cartan subalgebra and root spaces.

    ``transform`` gives coordinates over the work field in the basis made of
    the root-space bases, in root order.
    """

    def __init__(self, seed=0, max_ext=6, draws=100, samples=50):
        self.seed = seed
        self.max_ext = max_ext
        self.draws = draws
        self.samples = samples

    def fit(self, A, y=None, pmap=None):
        P = _resolve_pmap(A, pmap, self.samples, self.seed)
        if P is None:
            raise ValueError("algebra is not restrictable")
        self.torus_ = maximal_torus(A, P, draws=self.draws, seed=self.seed)
        self.cartan_ = cartan_subalgebra(A, P, torus=self.torus_)
        self.decomposition_ = root_decomposition(A, P, self.cartan_, max_ext=self.max_ext)
        self.roots_ = self.decomposition_.values()
        self._embed = self.decomposition_.embed
        self._set_basis(self.decomposition_.field,
                        np.concatenate([U.basis for _, U in self.decomposition_.roots]))
        return self

    def transform(self, X):
        check_is_fitted(self, "basis_")
        return super().transform(self._embed(np.asarray(X, dtype=np.int64)))


class PIdealDecomposition(_AdaptedBasis, BaseEstimator):
    """Indecomposable p-ideal summands; ``transform`` gives adapted coordinates."""

    def __init__(self, seed=0, draws=200, samples=50):
        self.seed = seed
        self.draws = draws
        self.samples = samples

    def fit(self, A, y=None, pmap=None):
        P = _resolve_pmap(A, pmap, self.samples, self.seed)
        if P is None:
            raise ValueError("algebra is not restrictable")
        self.decomposition_ = indecomposable_decomposition(A, P, draws=self.draws, seed=self.seed)
        self.summands_ = self.decomposition_.summands
        self.summand_dims_ = [U.dim for U in self.summands_]
        self._set_basis(A.F, np.concatenate([U.basis for U in self.summands_]))
        return self
