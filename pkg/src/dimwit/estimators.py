"""scikit-learn style wrappers around the trace-norm bounds.

``X`` is always a behaviour (or witness) matrix of shape ``(|X|, |Y|*|B|)``;
the number of outcomes ``|B|`` is a hyperparameter, so ``|Y|`` is inferred
from the column count.

>>> import numpy as np
>>> est = TraceNormDimensionEstimator(n_outcomes=2).fit(np.eye(2))
>>> est.dimension_lower_bound_
2
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .behaviour import (
    CEILING_SLACK,
    DEFAULT_RANK_TOLERANCE,
    Behaviour,
    Scenario,
    dimension_lower_bound,
    svd_witness,
    validate_behaviour,
)
from .errors import ValidationError
from .linalg import inner_product, operator_norm


def _behaviour_from_array(X, n_outcomes: int) -> Behaviour:
    X = check_array(X, dtype=float, ensure_all_finite=True)
    if X.shape[1] % n_outcomes:
        raise ValidationError(
            f"column count {X.shape[1]} is not a multiple of n_outcomes={n_outcomes}"
        )
    scenario = Scenario(X.shape[0], X.shape[1] // n_outcomes, n_outcomes)
    return validate_behaviour(scenario, X)


class TraceNormDimensionEstimator(BaseEstimator):
    """Learns the trace-norm lower bound on the dimension of one behaviour.

    Attributes after ``fit``: ``scenario_``, ``trace_norm_``, ``raw_bound_``
    and ``dimension_lower_bound_``.
    """

    def __init__(self, n_outcomes: int = 2):
        self.n_outcomes = n_outcomes

    def fit(self, X, y=None):
        P = _behaviour_from_array(X, self.n_outcomes)
        rep = dimension_lower_bound(P)
        self.scenario_ = P.scenario
        self.trace_norm_ = rep.trace_norm
        self.raw_bound_ = rep.raw_bound
        self.dimension_lower_bound_ = rep.dimension_lower_bound
        return self

    def predict(self, X=None):
        check_is_fitted(self, "dimension_lower_bound_")
        return self.dimension_lower_bound_


class SVDWitness(TransformerMixin, BaseEstimator):
    """Fits the optimal witness ``G = U V^T`` of a reference behaviour.

    ``transform`` maps behaviours to their witness value ``<P, G>``;
    ``predict`` turns that value into the smallest dimension compatible
    with ``<P, G> <= ||G||_inf sqrt(d |X||Y|)``.
    """

    def __init__(self, n_outcomes: int = 2, rank_tolerance: float = DEFAULT_RANK_TOLERANCE):
        self.n_outcomes = n_outcomes
        self.rank_tolerance = rank_tolerance

    def fit(self, X, y=None):
        P = _behaviour_from_array(X, self.n_outcomes)
        G = svd_witness(P, self.rank_tolerance)
        self.scenario_ = P.scenario
        self.witness_ = G
        self.components_ = np.array(G.matrix)
        self.operator_norm_ = operator_norm(G.matrix)
        return self

    def _values(self, X) -> np.ndarray:
        check_is_fitted(self, "witness_")
        Xs = X if isinstance(X, (list, tuple)) else [X]
        out = []
        for Xi in Xs:
            P = _behaviour_from_array(Xi, self.n_outcomes)
            if P.scenario != self.scenario_:
                raise ValidationError(f"behaviour scenario {P.scenario} != fitted {self.scenario_}")
            out.append(inner_product(P.matrix, self.witness_.matrix))
        return np.array(out)

    def transform(self, X):
        """Witness values, one row per behaviour; ``X`` is one matrix or a list of them."""
        return self._values(X).reshape(-1, 1)

    def score(self, X, y=None) -> float:
        return float(self._values(X)[0])

    def predict(self, X):
        values = self._values(X)
        s = self.scenario_
        scale = self.operator_norm_**2 * s.nx * s.ny
        return np.array(
            [max(1, math.ceil(v * v / scale - CEILING_SLACK)) if v > 0 else 1 for v in values]
        )
