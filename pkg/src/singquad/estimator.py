"""scikit-learn style wrapper: each row of ``X`` is one sampled integrand.

All rows share the grid and the singularity set, which is the typical case
for a batch of fields sampled on the same mesh with a common interface
(e.g. time steps of one simulation). Because the correction does not
depend on the samples, it is computed once in :meth:`fit`.
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .core import DEFAULT_NODE_TOL, SingularitySpec, make_grid
from .corrections import singularity_corrections
from .rules import composite_weights, rule_weights

__all__ = ["CorrectedNewtonCotes"]


class CorrectedNewtonCotes(TransformerMixin, BaseEstimator):
    """Composite Newton-Cotes integral of every row, minus jump corrections.

    Parameters
    ----------
    degree : int
        Rule degree, 1 to 4.
    a, c : float
        Interval end points; the grid has ``n_features - 1`` intervals.
    singularities : sequence of (x, jumps) pairs, optional
        ``jumps`` lists ``[f], [f'], ...`` with at least ``degree + 1`` entries.
    node_tol : float
        Minimum distance of a singularity from a node, as a fraction of ``h``.
    """

    def __init__(self, degree=1, a=0.0, c=1.0, singularities=None, node_tol=DEFAULT_NODE_TOL):
        self.degree = degree
        self.a = a
        self.c = c
        self.singularities = singularities
        self.node_tol = node_tol

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        self.rule_ = rule_weights(self.degree)
        self.grid_ = make_grid(self.a, self.c, X.shape[1] - 1)
        self.weights_ = composite_weights(self.rule_, self.grid_.m)
        specs = [SingularitySpec(x, tuple(j)) for x, j in (self.singularities or ())]
        corr = singularity_corrections(self.rule_, self.grid_, specs, self.node_tol)
        self.correction_ = math.fsum(c for _, _, c in corr)
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        """Corrected integrals, shape ``(n_samples,)``."""
        check_is_fitted(self, "correction_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} samples per row, fitted with {self.n_features_in_}")
        h = self.grid_.h
        classical = np.array([h * math.fsum(self.weights_ * row) for row in X])
        if not self.singularities:
            return classical
        return classical - self.correction_

    def transform(self, X):
        return self.predict(X)[:, None]
