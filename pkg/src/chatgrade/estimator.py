"""scikit-learn adapter: score text pairs inside a transformer pipeline."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bleu import BleuConfig
from .meteor import MeteorParams
from .rouge import RougeConfig
from .scoring import METRICS, MetricConfig, check_metrics, score_selected
from .text import TokenizerConfig


def check_pairs(X) -> list[tuple[str, str]]:
    """Validate X as a sequence of (candidate, reference) string pairs."""
    pairs = []
    for i, item in enumerate(X):
        try:
            candidate, reference = item
        except (TypeError, ValueError):
            raise ValueError(
                f"X[{i}] is not a (candidate, reference) pair") from None
        if not isinstance(candidate, str) or not isinstance(reference, str):
            raise ValueError(f"X[{i}] must hold two strings")
        pairs.append((candidate, reference))
    return pairs


class ResponseScorer(BaseEstimator, TransformerMixin):
    """Transform (candidate, reference) string pairs into metric vectors.

    Stateless: fit only validates parameters. transform returns a float
    array of shape (n_pairs, n_metrics) whose column order matches
    get_feature_names_out().

    >>> scorer = ResponseScorer(metrics=("bleu", "rougeL"))
    >>> scorer.fit_transform([("the cat", "the cat sat")]).shape
    (1, 2)
    """

    def __init__(self, metrics=METRICS, max_order=4, epsilon=1e-9,
                 meteor_alpha=0.9, meteor_beta=3.0, meteor_gamma=0.5,
                 stem=False, wlcs_alpha=1.2, skip_gap=None, f_beta=1.0,
                 drop_punctuation=False):
        self.metrics = metrics
        self.max_order = max_order
        self.epsilon = epsilon
        self.meteor_alpha = meteor_alpha
        self.meteor_beta = meteor_beta
        self.meteor_gamma = meteor_gamma
        self.stem = stem
        self.wlcs_alpha = wlcs_alpha
        self.skip_gap = skip_gap
        self.f_beta = f_beta
        self.drop_punctuation = drop_punctuation

    def fit(self, X=None, y=None):
        """Validate parameters and input shape; no state is learned."""
        if X is not None:
            check_pairs(X)
        self.metrics_ = check_metrics(self.metrics)
        stages = ("exact", "stem") if self.stem else ("exact",)
        self.config_ = MetricConfig(
            tokenizer=TokenizerConfig(drop_punctuation=self.drop_punctuation),
            bleu=BleuConfig(max_order=self.max_order, epsilon=self.epsilon),
            meteor=MeteorParams(alpha=self.meteor_alpha,
                                beta=self.meteor_beta,
                                gamma=self.meteor_gamma, stages=stages),
            rouge=RougeConfig(wlcs_alpha=self.wlcs_alpha,
                              skip_max_gap=self.skip_gap,
                              f_beta=self.f_beta),
        )
        return self

    def transform(self, X):
        check_is_fitted(self)
        rows = []
        for candidate, reference in check_pairs(X):
            values = score_selected(candidate, reference, self.metrics_,
                                    self.config_)
            rows.append([values[m] for m in self.metrics_])
        return np.asarray(rows, dtype=float).reshape(len(rows),
                                                     len(self.metrics_))

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self)
        return np.asarray(self.metrics_, dtype=object)
