"""ROUGE variants: n-gram recall, LCS, weighted LCS, and skip-bigrams.

All scoring functions return a ScoreTriple; which of its fields is the
headline number depends on the variant (recall for ROUGE-N, F for the
others). Sequence pairs are compared as-is; tokenization happens upstream.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .text import TokenSeq, ngrams

# DP tables and skip-bigram multisets grow quadratically; refuse inputs
# that would make memory unpredictable.
MAX_TOKENS = 10_000


@dataclass(frozen=True)
class RougeConfig:
    """Knobs shared by the ROUGE family.

    wlcs_alpha is the exponent rewarding consecutive-match runs in
    ROUGE-W, skip_max_gap bounds the tokens skipped inside a skip-bigram
    (None means unlimited), f_beta balances recall against precision in
    the F-measure.
    """

    wlcs_alpha: float = 1.2
    skip_max_gap: int | None = None
    f_beta: float = 1.0

    def __post_init__(self) -> None:
        if self.wlcs_alpha <= 1.0:
            raise ValueError(
                f"wlcs_alpha must be > 1, got {self.wlcs_alpha}")
        if self.skip_max_gap is not None and self.skip_max_gap < 0:
            raise ValueError(
                f"skip_max_gap must be >= 0 or None, got {self.skip_max_gap}")
        if self.f_beta <= 0.0:
            raise ValueError(f"f_beta must be > 0, got {self.f_beta}")


@dataclass(frozen=True)
class ScoreTriple:
    recall: float
    precision: float
    f: float


_ZERO = ScoreTriple(recall=0.0, precision=0.0, f=0.0)


def _f_score(recall: float, precision: float, beta: float) -> float:
    denom = recall + beta * beta * precision
    if denom == 0.0:
        return 0.0
    return (1.0 + beta * beta) * precision * recall / denom


def _triple(recall: float, precision: float, beta: float) -> ScoreTriple:
    return ScoreTriple(recall=recall, precision=precision,
                       f=_f_score(recall, precision, beta))


def _check_length(seq: TokenSeq) -> None:
    if len(seq) > MAX_TOKENS:
        raise ValueError(
            f"sequence of {len(seq)} tokens exceeds the {MAX_TOKENS} limit")


def clipped_overlap(cand_counts: Counter, ref_counts: Counter) -> int:
    """Multiset intersection size: each item counts at most min(c, r) times."""
    return sum(min(count, ref_counts[item])
               for item, count in cand_counts.items() if item in ref_counts)


def rouge_n(candidate: TokenSeq, reference: TokenSeq, n: int,
            config: RougeConfig | None = None) -> ScoreTriple:
    """Clipped n-gram overlap. Headline value is recall."""
    config = config or RougeConfig()
    cand_counts = ngrams(candidate, n)
    ref_counts = ngrams(reference, n)
    cand_total = sum(cand_counts.values())
    ref_total = sum(ref_counts.values())
    if cand_total == 0 or ref_total == 0:
        return _ZERO
    overlap = clipped_overlap(cand_counts, ref_counts)
    return _triple(overlap / ref_total, overlap / cand_total, config.f_beta)


def lcs_length(a: TokenSeq, b: TokenSeq) -> int:
    """Longest common subsequence length, rolling-row dynamic program."""
    _check_length(a)
    _check_length(b)
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for token in a:
        cur = [0] * (len(b) + 1)
        for j, other in enumerate(b, start=1):
            if token == other:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = cur[j - 1] if cur[j - 1] >= prev[j] else prev[j]
        prev = cur
    return prev[-1]


def rouge_l(candidate: TokenSeq, reference: TokenSeq,
            config: RougeConfig | None = None) -> ScoreTriple:
    """LCS-based triple: R = LCS/|ref|, P = LCS/|cand|."""
    config = config or RougeConfig()
    if not candidate or not reference:
        return _ZERO
    lcs = lcs_length(candidate, reference)
    return _triple(lcs / len(reference), lcs / len(candidate), config.f_beta)


def _cell_value(cell: tuple[float, int], alpha: float) -> float:
    completed, run = cell
    if run == 0:
        return completed
    return completed + float(run) ** alpha


def wlcs(a: TokenSeq, b: TokenSeq, alpha: float = 1.2) -> float:
    """Weighted LCS where a run of k consecutive matches contributes k**alpha.

    Returns the weighted value, not a count; on identical sequences it is
    exactly len(a)**alpha.
    """
    if alpha <= 1.0:
        raise ValueError(f"alpha must be > 1, got {alpha}")
    _check_length(a)
    _check_length(b)
    if not a or not b:
        return 0.0
    # Each cell carries (weight of completed runs, length of the run ending
    # here). Keeping runs symbolic until they end avoids the rounding drift
    # of summing k**alpha - (k-1)**alpha increments.
    empty = (0.0, 0)
    prev: list[tuple[float, int]] = [empty] * (len(b) + 1)
    for token in a:
        cur: list[tuple[float, int]] = [empty] * (len(b) + 1)
        for j, other in enumerate(b, start=1):
            if token == other:
                completed, run = prev[j - 1]
                cur[j] = (completed, run + 1)
            else:
                up, left = prev[j], cur[j - 1]
                best = up if _cell_value(up, alpha) >= _cell_value(left, alpha) else left
                completed, run = best
                # the run cannot be extended past a mismatch; bank it
                if run:
                    best = (completed + float(run) ** alpha, 0)
                cur[j] = best
        prev = cur
    return _cell_value(prev[-1], alpha)


def rouge_w(candidate: TokenSeq, reference: TokenSeq,
            config: RougeConfig | None = None) -> ScoreTriple:
    """Weighted-LCS triple; the inverse weight f(k)=k**alpha maps back to [0,1]."""
    config = config or RougeConfig()
    if not candidate or not reference:
        return _ZERO
    alpha = config.wlcs_alpha
    weighted = wlcs(candidate, reference, alpha)
    recall = (weighted / float(len(reference)) ** alpha) ** (1.0 / alpha)
    precision = (weighted / float(len(candidate)) ** alpha) ** (1.0 / alpha)
    return _triple(recall, precision, config.f_beta)


def skip_bigrams(seq: TokenSeq, max_gap: int | None = None) -> Counter:
    """Multiset of in-order token pairs (i < j), at most max_gap tokens apart.

    max_gap=None places no bound, giving C(len(seq), 2) pairs; max_gap=0
    degenerates to adjacent bigrams.
    """
    _check_length(seq)
    pairs: Counter = Counter()
    n = len(seq)
    for i in range(n):
        upper = n if max_gap is None else min(n, i + max_gap + 2)
        for j in range(i + 1, upper):
            pairs[(seq[i], seq[j])] += 1
    return pairs


def rouge_s(candidate: TokenSeq, reference: TokenSeq,
            config: RougeConfig | None = None) -> ScoreTriple:
    """Clipped skip-bigram overlap triple."""
    config = config or RougeConfig()
    cand_pairs = skip_bigrams(candidate, config.skip_max_gap)
    ref_pairs = skip_bigrams(reference, config.skip_max_gap)
    cand_total = sum(cand_pairs.values())
    ref_total = sum(ref_pairs.values())
    if cand_total == 0 or ref_total == 0:
        return _ZERO
    overlap = clipped_overlap(cand_pairs, ref_pairs)
    return _triple(overlap / ref_total, overlap / cand_total, config.f_beta)
