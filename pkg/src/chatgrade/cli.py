"""Command-line pipeline: generate responses, score them, report.

Data goes to files or standard output; every diagnostic goes to the
error stream. Exit status is 0 on success, 1 on runtime failures, 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Mapping

from .bleu import BleuConfig
from .client import (CompletionConfig, CompletionError, RequestsTransport,
                     RetryPolicy, Transport, generate_batch)
from .dataset import (DatasetError, ScoreRow, read_records, read_scores,
                      write_records, write_scores)
from .meteor import MeteorParams
from .report import aggregate, emit_report
from .rouge import RougeConfig
from .scoring import METRICS, MetricConfig, check_metrics, score_selected
from .text import TokenizerConfig


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chatgrade",
        description="Grade generated responses against reference answers.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate",
                         help="fill empty responses via a completion API")
    gen.add_argument("--input", required=True, help="records CSV/JSONL")
    gen.add_argument("--output", help="destination (default: stdout)")
    gen.add_argument("--base-url", default="https://api.openai.com/v1")
    gen.add_argument("--model", default="text-davinci-003")
    gen.add_argument("--max-tokens", type=int, default=256)
    gen.add_argument("--temperature", type=float, default=0.7)
    gen.add_argument("--api-key-env", default="OPENAI_API_KEY",
                     help="environment variable holding the API key")
    gen.add_argument("--max-concurrent", type=int, default=1)
    gen.add_argument("--retries", type=int, default=3,
                     help="total attempts per request")
    gen.add_argument("--backoff", type=float, default=0.5,
                     help="base seconds for exponential backoff")
    gen.add_argument("--timeout", type=float, default=30.0)
    gen.add_argument("--force", action="store_true",
                     help="regenerate responses that are already present")

    score = sub.add_parser("score", help="score responses against references")
    score.add_argument("--input", required=True, help="records CSV/JSONL")
    score.add_argument("--output", help="destination (default: stdout)")
    score.add_argument("--metrics", default=",".join(METRICS),
                       help="comma-separated subset of: " + ", ".join(METRICS))
    score.add_argument("--format", choices=("csv", "json"), default="csv")
    score.add_argument("--tokenizer.drop-punctuation", action="store_true",
                       dest="drop_punctuation",
                       help="drop punctuation tokens instead of keeping them")
    score.add_argument("--bleu.max-order", type=int, default=4,
                       dest="bleu_max_order")
    score.add_argument("--bleu.weights", default=None, dest="bleu_weights",
                       help="comma-separated weights, one per order")
    score.add_argument("--bleu.epsilon", type=float, default=1e-9,
                       dest="bleu_epsilon")
    score.add_argument("--meteor.alpha", type=float, default=0.9,
                       dest="meteor_alpha")
    score.add_argument("--meteor.beta", type=float, default=3.0,
                       dest="meteor_beta")
    score.add_argument("--meteor.gamma", type=float, default=0.5,
                       dest="meteor_gamma")
    score.add_argument("--meteor.stages", default="exact",
                       dest="meteor_stages",
                       help="comma-separated match stages (exact, stem)")
    score.add_argument("--rouge.wlcs-alpha", type=float, default=1.2,
                       dest="rouge_wlcs_alpha")
    score.add_argument("--rouge.skip-gap", type=int, default=None,
                       dest="rouge_skip_gap",
                       help="max tokens skipped in a skip-bigram (default: unlimited)")
    score.add_argument("--rouge.f-beta", type=float, default=1.0,
                       dest="rouge_f_beta")

    rep = sub.add_parser("report", help="aggregate a score file")
    rep.add_argument("--scores", required=True, help="score CSV/JSON")
    rep.add_argument("--output", help="destination (default: stdout)")
    rep.add_argument("--format", choices=("csv", "json", "svg"),
                     default="json")
    return parser


def _records_format(path: str) -> str:
    return "jsonl" if path.endswith(".jsonl") else "csv"


def _write_sink(path: str | None, write: Callable) -> None:
    if path is None or path == "-":
        write(sys.stdout.buffer)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as sink:
            write(sink)


def _metric_config(args: argparse.Namespace) -> MetricConfig:
    weights = None
    if args.bleu_weights:
        weights = tuple(float(w) for w in args.bleu_weights.split(","))
    stages = tuple(s.strip() for s in args.meteor_stages.split(",") if s.strip())
    return MetricConfig(
        tokenizer=TokenizerConfig(drop_punctuation=args.drop_punctuation),
        bleu=BleuConfig(max_order=args.bleu_max_order, weights=weights,
                        epsilon=args.bleu_epsilon),
        meteor=MeteorParams(alpha=args.meteor_alpha, beta=args.meteor_beta,
                            gamma=args.meteor_gamma, stages=stages),
        rouge=RougeConfig(wlcs_alpha=args.rouge_wlcs_alpha,
                          skip_max_gap=args.rouge_skip_gap,
                          f_beta=args.rouge_f_beta),
    )


def _cmd_generate(args: argparse.Namespace, env: Mapping[str, str],
                  transport: Transport | None) -> int:
    config = CompletionConfig(
        base_url=args.base_url, model=args.model, max_tokens=args.max_tokens,
        temperature=args.temperature, api_key_env=args.api_key_env,
        max_concurrent=args.max_concurrent,
        retry=RetryPolicy(attempts=args.retries, backoff_base=args.backoff),
        timeout=args.timeout)
    with open(args.input, "rb") as source:
        records = read_records(source, _records_format(args.input))
    # without --force, records that already carry a response are kept
    pending = records if args.force else [r for r in records if not r.response]
    if transport is None:
        transport = RequestsTransport()
    filled = generate_batch(pending, config, transport, env=env)
    by_id = {record.id: record for record in filled}
    merged = [by_id.get(record.id, record) for record in records]
    failures = [record for record in merged if record.error]
    for record in failures:
        print(f"record {record.id}: {record.error}", file=sys.stderr)
    out_format = _records_format(args.output) if args.output else "csv"
    _write_sink(args.output,
                lambda sink: write_records(merged, sink, out_format))
    if failures:
        print(f"{len(failures)} of {len(pending)} records failed",
              file=sys.stderr)
        return 1
    return 0


def _cmd_score(args: argparse.Namespace) -> int:
    config = _metric_config(args)
    metrics = check_metrics(
        m.strip() for m in args.metrics.split(",") if m.strip())
    with open(args.input, "rb") as source:
        records = read_records(source, _records_format(args.input))
    rows = []
    for record in records:
        if not record.response:
            raise ValueError(
                f"record {record.id} has no response; run generate first")
        try:
            values = score_selected(record.response, record.reference,
                                    metrics, config)
        except ValueError as exc:
            raise ValueError(f"record {record.id}: {exc}") from None
        rows.append(ScoreRow(id=record.id, values=values))
    _write_sink(args.output,
                lambda sink: write_scores(rows, sink, args.format, metrics))
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    scores_format = "json" if args.scores.endswith(".json") else "csv"
    with open(args.scores, "rb") as source:
        rows, metrics = read_scores(source, scores_format)
    report = aggregate(rows, metrics)
    _write_sink(args.output,
                lambda sink: emit_report(report, args.format, sink))
    return 0


def main(argv=None, env: Mapping[str, str] | None = None,
         transport: Transport | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if env is None:
        import os
        env = os.environ
    try:
        if args.command == "generate":
            return _cmd_generate(args, env, transport)
        if args.command == "score":
            return _cmd_score(args)
        return _cmd_report(args)
    except (DatasetError, CompletionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
