"""Sentence-level BLEU: clipped n-gram precision, brevity penalty, smoothing.

Each response is scored against its single reference independently (one
score per record), so zero n-gram precisions are unavoidable on short or
disjoint texts and are floored at a configurable epsilon before entering
the geometric mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .text import TokenSeq, ngrams


@dataclass(frozen=True)
class BleuConfig:
    """Tunable BLEU parameters.

    max_order: highest n-gram order included in the geometric mean.
    weights: per-order weights; must sum to 1. Defaults to uniform.
    epsilon: floor substituted for zero or undefined precisions.
    """

    max_order: int = 4
    weights: tuple[float, ...] | None = None
    epsilon: float = 1e-9

    def __post_init__(self):
        if self.max_order < 1:
            raise ValueError(f"max_order must be >= 1, got {self.max_order}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if self.weights is not None:
            if len(self.weights) != self.max_order:
                raise ValueError(
                    f"expected {self.max_order} weights, got {len(self.weights)}"
                )
            if abs(sum(self.weights) - 1.0) > 1e-12:
                raise ValueError(f"weights must sum to 1, got {sum(self.weights)}")

    def effective_weights(self) -> tuple[float, ...]:
        if self.weights is not None:
            return tuple(self.weights)
        return (1.0 / self.max_order,) * self.max_order


@dataclass(frozen=True)
class BleuBreakdown:
    """Per-order precisions (after smoothing), brevity penalty, final score."""

    precisions: tuple[float, ...]
    brevity_penalty: float
    score: float


def modified_precision(cand: TokenSeq, ref: TokenSeq, n: int) -> Fraction | None:
    """Clipped n-gram precision of the candidate against the reference.

    Each candidate n-gram earns credit capped at its occurrence count in the
    reference; the total credit is divided by the number of candidate
    n-grams. Returns None when the candidate has no n-grams of order ``n``
    (the caller decides how to smooth that case). Rejects ``n < 1``.
    """
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    cand_counts = ngrams(cand, n)
    total = sum(cand_counts.values())
    if total == 0:
        return None
    ref_counts = ngrams(ref, n)
    clipped = sum(min(count, ref_counts[gram]) for gram, count in cand_counts.items())
    return Fraction(clipped, total)


def brevity_penalty(cand_len: int, ref_len: int) -> float:
    """Multiplicative penalty for candidates shorter than the reference.

    1 when the candidate is at least as long as the reference, otherwise
    exp(1 - ref_len/cand_len). An empty candidate is penalized to 0 by
    definition. Rejects ref_len < 1.
    """
    if ref_len < 1:
        raise ValueError(f"reference length must be >= 1, got {ref_len}")
    if cand_len < 0:
        raise ValueError(f"candidate length must be >= 0, got {cand_len}")
    if cand_len == 0:
        return 0.0
    if cand_len >= ref_len:
        return 1.0
    return math.exp(1.0 - ref_len / cand_len)


def bleu(cand: TokenSeq, ref: TokenSeq, config: BleuConfig | None = None) -> BleuBreakdown:
    """Smoothed sentence-level BLEU of a candidate against one reference.

    Computes the clipped precision for every order up to max_order, floors
    zero or undefined precisions at config.epsilon, and combines them as
    brevity_penalty * exp(sum w_n * ln p_n). The reference must be
    non-empty; an empty candidate is a defined score of 0, not an error.
    """
    if config is None:
        config = BleuConfig()
    if len(ref) == 0:
        raise ValueError("reference must be non-empty")

    precisions = []
    for n in range(1, config.max_order + 1):
        p = modified_precision(cand, ref, n)
        precisions.append(float(p) if p is not None and p > 0 else config.epsilon)

    bp = brevity_penalty(len(cand), len(ref))
    weights = config.effective_weights()
    log_mean = sum(w * math.log(p) for w, p in zip(weights, precisions))
    score = bp * math.exp(log_mean)
    return BleuBreakdown(
        precisions=tuple(precisions), brevity_penalty=bp, score=score
    )
