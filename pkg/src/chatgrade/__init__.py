"""Grade chatbot responses against human reference answers.

Per-pair metrics (BLEU, METEOR, the ROUGE family) plus dataset I/O,
an optional completion-API generator, aggregation, and a CLI.
"""

from .bleu import BleuBreakdown, BleuConfig, bleu, brevity_penalty, modified_precision
from .dataset import DatasetError, EvalRecord, ScoreRow, read_records, read_scores, write_records, write_scores
from .meteor import Alignment, MeteorBreakdown, MeteorParams, align, chunk_count, meteor
from .report import AggregateReport, aggregate, emit_report
from .rouge import (RougeConfig, ScoreTriple, lcs_length, rouge_l, rouge_n,
                    rouge_s, rouge_w, skip_bigrams, wlcs)
from .scoring import METRICS, MetricConfig, ScoreVector, check_metrics, score_pair, score_selected
from .text import TokenizerConfig, ngrams, tokenize

__version__ = "0.1.0"

__all__ = [
    "AggregateReport", "Alignment", "BleuBreakdown", "BleuConfig",
    "DatasetError", "EvalRecord", "METRICS", "MeteorBreakdown",
    "MeteorParams", "MetricConfig", "ResponseScorer", "RougeConfig",
    "ScoreRow", "ScoreTriple", "ScoreVector", "TokenizerConfig",
    "aggregate", "align", "bleu", "brevity_penalty", "check_metrics",
    "chunk_count", "emit_report", "lcs_length", "meteor",
    "modified_precision", "ngrams", "read_records", "read_scores",
    "rouge_l", "rouge_n", "rouge_s", "rouge_w", "score_pair",
    "score_selected", "skip_bigrams", "tokenize", "wlcs",
    "write_records", "write_scores",
]


def __getattr__(name: str):
    # the scikit-learn adapter is optional at runtime; load it on demand
    if name == "ResponseScorer":
        from .estimator import ResponseScorer
        return ResponseScorer
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
