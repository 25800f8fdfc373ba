"""Command-line interface.

Subcommands cover each pipeline stage (ingest, shuffle, build, measure,
dist, compare) plus the full experiment (pipeline). Exit code is 0 on
success; failures print a stage-tagged diagnostic to stderr and exit 1.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .corpus import (
    TokenizeConfig,
    corpus_to_text,
    count_empty_segments,
    decode_utf8,
    load_corpus,
    save_corpus,
    segment,
    stats,
    stats_to_json,
    tokenize,
)
from .distributions import (
    degree_rank,
    histogram_csv,
    rank_series_csv,
    selectivity_rank,
    sentence_length_series,
    series_compare,
    strength_rank,
)
from .errors import LexnetError, PipelineError
from .metrics import metrics_table, node_metrics_csv, summarize, summary_to_json
from .network import build, export_dot, export_edge_list
from .report import ExperimentConfig, run_experiment, trend_verdicts
from .shuffle import ShuffleMode, preservation_check, shuffle_corpus


def _tokenize_config(args) -> TokenizeConfig:
    return TokenizeConfig(
        delimiters=frozenset(args.delimiters), case_fold=not args.no_case_fold
    )


def _add_tokenize_flags(parser) -> None:
    parser.add_argument(
        "--delimiters",
        default=".!?",
        help="sentence delimiter characters (default: .!?)",
    )
    parser.add_argument(
        "--no-case-fold",
        action="store_true",
        help="keep the original letter case",
    )


def _add_sampling_flags(parser) -> None:
    parser.add_argument(
        "--sample-sources",
        type=int,
        default=None,
        metavar="N",
        help="estimate distances from N sampled sources instead of all nodes",
    )
    parser.add_argument(
        "--sample-seed",
        type=int,
        default=0,
        help="seed for the distance source sampler (default: 0)",
    )


def _cmd_ingest(args) -> int:
    with _stage_errors("read"):
        data = Path(args.input).read_bytes()
        text = decode_utf8(data)
    with _stage_errors("ingest"):
        tokens = tokenize(text, _tokenize_config(args))
        corpus = segment(tokens)
        dropped = count_empty_segments(tokens)
        save_corpus(corpus, args.output)
        if args.stats:
            Path(args.stats).write_text(stats_to_json(stats(corpus)), encoding="utf-8")
    corpus_stats = stats(corpus)
    print(
        f"ingested {corpus_stats.total_words} words "
        f"({corpus_stats.unique_words} unique) in "
        f"{corpus_stats.sentence_count} sentences -> {args.output}"
    )
    if dropped:
        print(f"dropped {dropped} empty segments")
    return 0


def _cmd_shuffle(args) -> int:
    with _stage_errors("read"):
        corpus = load_corpus(args.input)
    with _stage_errors("shuffle"):
        mode = ShuffleMode.from_string(args.mode)
        shuffled = shuffle_corpus(corpus, mode, args.seed)
        report = preservation_check(corpus, shuffled, mode)
        if not report.passed:
            raise LexnetError("preservation check failed after shuffle")
        save_corpus(shuffled, args.output)
    print(f"{mode.value}-shuffled (seed {args.seed}) -> {args.output}")
    return 0


def _cmd_build(args) -> int:
    with _stage_errors("read"):
        corpus = load_corpus(args.input)
    with _stage_errors("build"):
        net = build(corpus, args.window)
        Path(args.output).write_text(export_edge_list(net), encoding="utf-8")
        if args.dot:
            Path(args.dot).write_text(export_dot(net), encoding="utf-8")
    print(f"network: N={net.n_nodes} K={net.n_edges} -> {args.output}")
    return 0


def _cmd_measure(args) -> int:
    with _stage_errors("read"):
        corpus = load_corpus(args.input)
    with _stage_errors("measure"):
        net = build(corpus, args.window)
        summary = summarize(
            net, sample_sources=args.sample_sources, sample_seed=args.sample_seed
        )
        out = summary_to_json(summary)
        if args.output:
            Path(args.output).write_text(out, encoding="utf-8")
        else:
            sys.stdout.write(out)
        if args.node_csv:
            Path(args.node_csv).write_text(node_metrics_csv(net), encoding="utf-8")
    return 0


def _cmd_dist(args) -> int:
    with _stage_errors("read"):
        corpus = load_corpus(args.input)
    with _stage_errors("distributions"):
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        net = build(corpus, args.window)
        table = metrics_table(net)
        for direction in ("in", "out"):
            for kind, fn in (
                ("degree", degree_rank),
                ("strength", strength_rank),
                ("selectivity", selectivity_rank),
            ):
                series = fn(net, direction, table)
                path = out_dir / f"{kind}_{direction}.csv"
                path.write_text(rank_series_csv(series), encoding="utf-8")
        histogram = histogram_csv(sentence_length_series(stats(corpus)))
        (out_dir / "sentence_lengths.csv").write_text(histogram, encoding="utf-8")
    print(f"rank series written to {args.out_dir}")
    return 0


def _cmd_compare(args) -> int:
    with _stage_errors("read"):
        original = load_corpus(args.original)
        variant = load_corpus(args.variant)
    with _stage_errors("compare"):
        mode = ShuffleMode.from_string(args.mode)
        preservation = preservation_check(original, variant, mode)
        orig_net = build(original, args.window)
        var_net = build(variant, args.window)
        orig_summary = summarize(
            orig_net, sample_sources=args.sample_sources, sample_seed=args.sample_seed
        )
        var_summary = summarize(
            var_net, sample_sources=args.sample_sources, sample_seed=args.sample_seed
        )
        verdicts = trend_verdicts(orig_summary, var_summary)
        dominance = {}
        for direction in ("in", "out"):
            a = selectivity_rank(orig_net, direction)
            b = selectivity_rank(var_net, direction)
            dominance[direction] = series_compare(
                a, b, args.top_fraction
            ).to_json_dict()
        payload = {
            "original": orig_summary.to_json_dict(),
            "variant": var_summary.to_json_dict(),
            "verdicts": verdicts.to_json_dict(),
            "selectivity_dominance": dominance,
            "preservation": preservation.to_json_dict(),
        }
        out = json.dumps(payload, sort_keys=True, indent=2) + "\n"
        if args.output:
            Path(args.output).write_text(out, encoding="utf-8")
        else:
            sys.stdout.write(out)
    return 0


def _cmd_pipeline(args) -> int:
    with _stage_errors("config"):
        seeds = tuple(int(s) for s in args.seeds.split(",") if s != "")
        modes = tuple(ShuffleMode.from_string(m) for m in args.modes.split(","))
    config = ExperimentConfig(
        inputs=tuple(Path(p) for p in args.inputs),
        out_dir=Path(args.out_dir),
        window=args.window,
        seeds=seeds,
        modes=modes,
        sample_sources=args.sample_sources,
        sample_seed=args.sample_seed,
        delimiters=frozenset(args.delimiters),
        case_fold=not args.no_case_fold,
        selectivity_top_fraction=args.top_fraction,
        deviation_top_ranks=args.top_ranks,
    )
    report = run_experiment(config)
    for aggregate in report.aggregates:
        verdict = "all trends hold" if aggregate.verdicts.all_hold else "trends BROKEN"
        print(f"{aggregate.mode.value}: {verdict}")
    print(f"report written to {args.out_dir}")
    return 0


class _stage_errors:
    """Context manager rewrapping errors with the pipeline stage name."""

    def __init__(self, stage: str):
        self.stage = stage

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is None or isinstance(exc, PipelineError):
            return False
        if isinstance(exc, (LexnetError, OSError, ValueError, KeyError)):
            raise PipelineError(self.stage, str(exc)) from exc
        return False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexnet",
        description=(
            "Build word co-occurrence networks from plain text, generate "
            "shuffled null models, and compare their network measures."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="tokenize text into the corpus format")
    p.add_argument("input", help="UTF-8 plain-text file")
    p.add_argument("-o", "--output", required=True, help="corpus file to write")
    p.add_argument("--stats", help="also write corpus stats JSON here")
    _add_tokenize_flags(p)
    p.set_defaults(handler=_cmd_ingest)

    p = sub.add_parser("shuffle", help="produce a null-model corpus")
    p.add_argument("input", help="corpus file")
    p.add_argument("-o", "--output", required=True, help="shuffled corpus to write")
    p.add_argument(
        "--mode",
        default="sentence",
        choices=[m.value for m in ShuffleMode],
        help="shuffle mode (default: sentence)",
    )
    p.add_argument("--seed", type=int, default=0, help="shuffle seed (default: 0)")
    p.set_defaults(handler=_cmd_shuffle)

    p = sub.add_parser("build", help="build the co-occurrence network")
    p.add_argument("input", help="corpus file")
    p.add_argument("-o", "--output", required=True, help="edge list to write")
    p.add_argument("--window", type=int, default=1, help="co-occurrence window")
    p.add_argument("--dot", help="also write a DOT rendering here")
    p.set_defaults(handler=_cmd_build)

    p = sub.add_parser("measure", help="summarize network measures")
    p.add_argument("input", help="corpus file")
    p.add_argument("-o", "--output", help="summary JSON (default: stdout)")
    p.add_argument("--window", type=int, default=1, help="co-occurrence window")
    p.add_argument("--node-csv", help="also write per-node metrics CSV here")
    _add_sampling_flags(p)
    p.set_defaults(handler=_cmd_measure)

    p = sub.add_parser("dist", help="write rank-distribution CSV series")
    p.add_argument("input", help="corpus file")
    p.add_argument("--out-dir", required=True, help="directory for the CSVs")
    p.add_argument("--window", type=int, default=1, help="co-occurrence window")
    p.set_defaults(handler=_cmd_dist)

    p = sub.add_parser("compare", help="compare an original corpus to a variant")
    p.add_argument("original", help="original corpus file")
    p.add_argument("variant", help="shuffled corpus file")
    p.add_argument("-o", "--output", help="comparison JSON (default: stdout)")
    p.add_argument("--window", type=int, default=1, help="co-occurrence window")
    p.add_argument(
        "--mode",
        default="text",
        choices=[m.value for m in ShuffleMode],
        help="null model the variant is expected to be (default: text)",
    )
    p.add_argument(
        "--top-fraction",
        type=float,
        default=0.1,
        help="top fraction of ranks for selectivity dominance (default: 0.1)",
    )
    _add_sampling_flags(p)
    p.set_defaults(handler=_cmd_compare)

    p = sub.add_parser("pipeline", help="run the full comparison experiment")
    p.add_argument("inputs", nargs="+", help="UTF-8 plain-text file(s)")
    p.add_argument("--out-dir", required=True, help="directory for all artifacts")
    p.add_argument("--window", type=int, default=1, help="co-occurrence window")
    p.add_argument(
        "--seeds",
        default="0,1,2,3,4",
        help="comma-separated shuffle seeds (default: 0,1,2,3,4)",
    )
    p.add_argument(
        "--modes",
        default="sentence,text",
        help="comma-separated shuffle modes (default: sentence,text)",
    )
    p.add_argument(
        "--top-fraction",
        type=float,
        default=0.1,
        help="top fraction of ranks for selectivity dominance (default: 0.1)",
    )
    p.add_argument(
        "--top-ranks",
        type=int,
        default=100,
        help="rank window for degree/strength deviation (default: 100)",
    )
    _add_tokenize_flags(p)
    _add_sampling_flags(p)
    p.set_defaults(handler=_cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except PipelineError as exc:
        print(f"error{exc}", file=sys.stderr)
        return 1
    except LexnetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
