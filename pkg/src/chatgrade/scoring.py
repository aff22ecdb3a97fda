"""Score response/reference text pairs with the full metric battery.

This is the glue between raw text and the individual metrics: tokenize
both sides once, run the selected metrics, and collect the headline
value of each into a flat vector keyed by wire name.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bleu import BleuConfig, bleu
from .meteor import MeteorParams, meteor
from .rouge import RougeConfig, ScoreTriple, rouge_l, rouge_n, rouge_s, rouge_w
from .text import TokenizerConfig, tokenize

# Canonical metric names, in output column order.
METRICS = ("bleu", "meteor", "rouge1", "rouge2", "rougeL", "rougeS", "rougeW")

_TRIPLE_FIELDS = ("recall", "precision", "f")


@dataclass(frozen=True)
class MetricConfig:
    """Every tunable parameter of the scoring pipeline in one place.

    rouge_n_value and rouge_lsw_value pick which ScoreTriple field is
    reported for ROUGE-1/2 and ROUGE-L/S/W respectively; the defaults
    follow the usual conventions (recall for the n-gram variants, F for
    the rest).
    """

    tokenizer: TokenizerConfig = field(default_factory=TokenizerConfig)
    bleu: BleuConfig = field(default_factory=BleuConfig)
    meteor: MeteorParams = field(default_factory=MeteorParams)
    rouge: RougeConfig = field(default_factory=RougeConfig)
    rouge_n_value: str = "recall"
    rouge_lsw_value: str = "f"

    def __post_init__(self) -> None:
        for name in (self.rouge_n_value, self.rouge_lsw_value):
            if name not in _TRIPLE_FIELDS:
                raise ValueError(
                    f"headline field must be one of {_TRIPLE_FIELDS}, got {name!r}")


@dataclass(frozen=True)
class ScoreVector:
    """The seven per-record metric values."""

    bleu: float
    meteor: float
    rouge1: float
    rouge2: float
    rougeL: float
    rougeS: float
    rougeW: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in METRICS}


def check_metrics(metrics) -> tuple[str, ...]:
    """Validate a metric selection and return it in canonical order."""
    selected = list(metrics)
    unknown = sorted(set(selected) - set(METRICS))
    if unknown:
        raise ValueError(f"unknown metrics: {', '.join(unknown)}")
    if not selected:
        raise ValueError("no metrics selected")
    return tuple(name for name in METRICS if name in selected)


def _headline(triple: ScoreTriple, field_name: str) -> float:
    return getattr(triple, field_name)


def score_selected(candidate: str, reference: str, metrics,
                   config: MetricConfig | None = None) -> dict[str, float]:
    """Compute the selected metrics for one text pair.

    Selection never changes the value of a metric, only which ones are
    computed. Returns {metric name: value} in canonical order.
    """
    config = config or MetricConfig()
    selected = check_metrics(metrics)
    cand = tokenize(candidate, config.tokenizer)
    ref = tokenize(reference, config.tokenizer)
    values: dict[str, float] = {}
    for name in selected:
        if name == "bleu":
            values[name] = bleu(cand, ref, config.bleu).score
        elif name == "meteor":
            values[name] = meteor(cand, ref, config.meteor).score
        elif name == "rouge1":
            values[name] = _headline(rouge_n(cand, ref, 1, config.rouge),
                                     config.rouge_n_value)
        elif name == "rouge2":
            values[name] = _headline(rouge_n(cand, ref, 2, config.rouge),
                                     config.rouge_n_value)
        elif name == "rougeL":
            values[name] = _headline(rouge_l(cand, ref, config.rouge),
                                     config.rouge_lsw_value)
        elif name == "rougeS":
            values[name] = _headline(rouge_s(cand, ref, config.rouge),
                                     config.rouge_lsw_value)
        else:
            values[name] = _headline(rouge_w(cand, ref, config.rouge),
                                     config.rouge_lsw_value)
    return values


def score_pair(candidate: str, reference: str,
               config: MetricConfig | None = None) -> ScoreVector:
    """All seven metrics for one text pair."""
    return ScoreVector(**score_selected(candidate, reference, METRICS, config))
