"""Unigram-alignment metric with a word-order penalty.

Candidate and reference tokens are matched one-to-one in stages; the
harmonic mean of precision and recall is then discounted by a penalty
that grows with the number of contiguous match chunks.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .stem import porter_stem
from .text import TokenSeq

_STAGES = ("exact", "stem")


@dataclass(frozen=True)
class MeteorParams:
    """Weights for the harmonic mean and the fragmentation penalty.

    alpha weights precision against recall in the harmonic mean, beta is
    the exponent on the chunk fraction, gamma scales the penalty. stages
    are applied in order; each stage only sees tokens left unmatched by
    the previous ones.
    """

    alpha: float = 0.9
    beta: float = 3.0
    gamma: float = 0.5
    stages: tuple[str, ...] = ("exact",)

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if self.beta < 0.0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"gamma must be in [0, 1], got {self.gamma}")
        if not self.stages:
            raise ValueError("at least one match stage is required")
        for stage in self.stages:
            if stage not in _STAGES:
                raise ValueError(f"unknown match stage: {stage!r}")


@dataclass(frozen=True)
class Alignment:
    """One-to-one token matches as (candidate_index, reference_index) pairs."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def match_count(self) -> int:
        return len(self.pairs)


def _stage_key(stage: str, token: str) -> str:
    if stage == "exact":
        return token
    return porter_stem(token)


def align(candidate: TokenSeq, reference: TokenSeq,
          stages: tuple[str, ...] = ("exact",)) -> Alignment:
    """Greedily match candidate tokens to reference tokens, stage by stage.

    Within a stage the candidate is scanned left to right and each token
    takes the earliest unused reference position with the same key. Later
    stages only consider tokens both sides left unmatched.
    """
    pairs: list[tuple[int, int]] = []
    cand_free = [True] * len(candidate)
    ref_free = [True] * len(reference)
    for stage in stages:
        positions: defaultdict[str, list[int]] = defaultdict(list)
        for j in range(len(reference) - 1, -1, -1):
            if ref_free[j]:
                positions[_stage_key(stage, reference[j])].append(j)
        for i, token in enumerate(candidate):
            if not cand_free[i]:
                continue
            queue = positions.get(_stage_key(stage, token))
            if queue:
                j = queue.pop()
                pairs.append((i, j))
                cand_free[i] = False
                ref_free[j] = False
    pairs.sort()
    return Alignment(pairs=tuple(pairs))


def chunk_count(pairs: tuple[tuple[int, int], ...]) -> int:
    """Number of maximal runs where both indices advance by exactly one.

    pairs must be sorted by candidate index, as align() returns them.
    """
    chunks = 0
    prev: tuple[int, int] | None = None
    for i, j in pairs:
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    return chunks


@dataclass(frozen=True)
class MeteorBreakdown:
    precision: float
    recall: float
    fmean: float
    penalty: float
    chunks: int
    matches: int
    score: float


def meteor(candidate: TokenSeq, reference: TokenSeq,
           params: MeteorParams | None = None) -> MeteorBreakdown:
    """Score a candidate against a reference.

    Returns the full breakdown; .score is the penalised harmonic mean.
    Zero matches (including an empty side) give a zero score.
    """
    params = params or MeteorParams()
    alignment = align(candidate, reference, params.stages)
    m = alignment.match_count
    if m == 0:
        return MeteorBreakdown(precision=0.0, recall=0.0, fmean=0.0,
                               penalty=0.0, chunks=0, matches=0, score=0.0)
    precision = m / len(candidate)
    recall = m / len(reference)
    fmean = (precision * recall
             / (params.alpha * precision + (1.0 - params.alpha) * recall))
    chunks = chunk_count(alignment.pairs)
    penalty = params.gamma * (chunks / m) ** params.beta
    score = fmean * (1.0 - penalty)
    return MeteorBreakdown(precision=precision, recall=recall, fmean=fmean,
                           penalty=penalty, chunks=chunks, matches=m,
                           score=score)
