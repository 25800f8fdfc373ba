"""Experiment orchestration: original vs shuffled-text networks, side by side.

Runs the whole comparison from plain text: ingest, shuffle per (mode, seed),
build the networks, summarize, rank the distributions, and judge the trends
(path length down, diameter not up, clustering up under shuffling) plus the
selectivity separation between the original and its null models. Multi-seed
results aggregate by median; per-seed raw values stay in the report.

The report is a pure function of (input bytes, config): re-running with the
same inputs and seeds writes byte-identical artifacts.
"""

from __future__ import annotations

import json
import statistics
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

from .corpus import (
    DEFAULT_DELIMITERS,
    Corpus,
    CorpusStats,
    TokenizeConfig,
    corpus_to_text,
    decode_utf8,
    ingest_text,
    stats,
    stats_to_json,
)
from .distributions import (
    DominanceReport,
    RankSeries,
    combined_series_csv,
    degree_rank,
    histogram_csv,
    rank_series_csv,
    selectivity_rank,
    sentence_length_series,
    series_compare,
    strength_rank,
)
from .errors import LexnetError, PipelineError
from .metrics import NetworkSummary, metrics_table, summarize, summary_to_json
from .network import build, export_edge_list
from .shuffle import (
    PreservationReport,
    ShuffleMode,
    preservation_check,
    shuffle_corpus,
)

_SERIES_KINDS = ("degree", "strength", "selectivity")
_DIRECTIONS = ("in", "out")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a comparison run depends on."""

    inputs: tuple[Path, ...]
    out_dir: Path | None = None
    window: int = 1
    seeds: tuple[int, ...] = (0, 1, 2, 3, 4)
    modes: tuple[ShuffleMode, ...] = (ShuffleMode.SENTENCE, ShuffleMode.TEXT)
    sample_sources: int | None = None
    sample_seed: int = 0
    delimiters: frozenset[str] = DEFAULT_DELIMITERS
    case_fold: bool = True
    selectivity_top_fraction: float = 0.1
    deviation_top_ranks: int = 100

    def validate(self) -> None:
        if not self.inputs:
            raise ValueError("at least one input path is required")
        if self.window < 1:
            raise ValueError(f"window must be >= 1, got {self.window}")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if not self.modes:
            raise ValueError("at least one shuffle mode is required")
        if self.sample_sources is not None and self.sample_sources < 1:
            raise ValueError("sample_sources must be >= 1 when set")
        if not 0 < self.selectivity_top_fraction <= 1:
            raise ValueError("selectivity_top_fraction must be in (0, 1]")
        if self.deviation_top_ranks < 1:
            raise ValueError("deviation_top_ranks must be >= 1")

    def to_json_dict(self) -> dict:
        return {
            "inputs": [str(p) for p in self.inputs],
            "window": self.window,
            "seeds": list(self.seeds),
            "modes": [m.value for m in self.modes],
            "sample_sources": self.sample_sources,
            "sample_seed": self.sample_seed,
            "delimiters": "".join(sorted(self.delimiters)),
            "case_fold": self.case_fold,
            "selectivity_top_fraction": self.selectivity_top_fraction,
            "deviation_top_ranks": self.deviation_top_ranks,
        }


@dataclass(frozen=True)
class TrendVerdicts:
    """Shuffling-direction checks, with the numbers they came from.

    Path length and clustering use strict comparisons; the diameter check is
    non-strict because shuffling need not change an integer hop count.
    """

    l_original: float
    l_shuffled: float
    d_original: float
    d_shuffled: float
    c_original: float
    c_shuffled: float

    @property
    def path_length_decreased(self) -> bool:
        return self.l_shuffled < self.l_original

    @property
    def diameter_not_increased(self) -> bool:
        return self.d_shuffled <= self.d_original

    @property
    def clustering_increased(self) -> bool:
        return self.c_shuffled > self.c_original

    @property
    def all_hold(self) -> bool:
        return (
            self.path_length_decreased
            and self.diameter_not_increased
            and self.clustering_increased
        )

    def to_json_dict(self) -> dict:
        return {
            "path_length_decreased": self.path_length_decreased,
            "diameter_not_increased": self.diameter_not_increased,
            "clustering_increased": self.clustering_increased,
            "all_hold": self.all_hold,
            "L": [self.l_original, self.l_shuffled],
            "D": [self.d_original, self.d_shuffled],
            "C": [self.c_original, self.c_shuffled],
        }


def trend_verdicts(original, shuffled) -> TrendVerdicts:
    """Judge the shuffling trends between two summaries (or median records)."""
    return TrendVerdicts(
        l_original=original.avg_path_length,
        l_shuffled=shuffled.avg_path_length,
        d_original=original.diameter,
        d_shuffled=shuffled.diameter,
        c_original=original.avg_clustering,
        c_shuffled=shuffled.avg_clustering,
    )


@dataclass(frozen=True)
class MedianSummary:
    """Per-measure medians over the seeds of one shuffle mode."""

    n_nodes: float
    n_edges: float
    avg_path_length: float
    diameter: float
    avg_clustering: float
    n_components: float

    def to_json_dict(self) -> dict:
        return {
            "N": self.n_nodes,
            "K": self.n_edges,
            "L": self.avg_path_length,
            "D": self.diameter,
            "C": self.avg_clustering,
            "omega": self.n_components,
        }


@dataclass(frozen=True)
class VariantResult:
    """One shuffled corpus: its summary and its comparisons to the original."""

    label: str
    mode: ShuffleMode
    seed: int
    corpus_stats: CorpusStats
    summary: NetworkSummary
    preservation: PreservationReport
    selectivity_cmp: dict[str, DominanceReport]
    degree_cmp: dict[str, DominanceReport]
    strength_cmp: dict[str, DominanceReport]

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "mode": self.mode.value,
            "seed": self.seed,
            "corpus_stats": self.corpus_stats.to_json_dict(),
            "summary": self.summary.to_json_dict(),
            "preservation": self.preservation.to_json_dict(),
            "selectivity_dominance": {
                d: r.to_json_dict() for d, r in sorted(self.selectivity_cmp.items())
            },
            "degree_deviation": {
                d: r.to_json_dict() for d, r in sorted(self.degree_cmp.items())
            },
            "strength_deviation": {
                d: r.to_json_dict() for d, r in sorted(self.strength_cmp.items())
            },
        }


@dataclass(frozen=True)
class ModeAggregate:
    """Median-over-seeds view of one shuffle mode, with trend verdicts."""

    mode: ShuffleMode
    seeds: tuple[int, ...]
    median_summary: MedianSummary
    verdicts: TrendVerdicts
    selectivity_dominance: dict[str, float]
    degree_max_deviation: float
    strength_max_deviation: float
    preservation_all_passed: bool

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode.value,
            "seeds": list(self.seeds),
            "median_summary": self.median_summary.to_json_dict(),
            "verdicts": self.verdicts.to_json_dict(),
            "selectivity_dominance": dict(sorted(self.selectivity_dominance.items())),
            "degree_max_deviation": self.degree_max_deviation,
            "strength_max_deviation": self.strength_max_deviation,
            "preservation_all_passed": self.preservation_all_passed,
        }


@dataclass(frozen=True)
class ComparisonReport:
    """Full experiment output: original vs every shuffled variant."""

    config: ExperimentConfig
    original_stats: CorpusStats
    original_summary: NetworkSummary
    variants: tuple[VariantResult, ...]
    aggregates: tuple[ModeAggregate, ...]

    def aggregate_for(self, mode: ShuffleMode) -> ModeAggregate:
        for agg in self.aggregates:
            if agg.mode is mode:
                return agg
        raise KeyError(mode)

    def to_json_dict(self) -> dict:
        return {
            "config": self.config.to_json_dict(),
            "original": {
                "corpus_stats": self.original_stats.to_json_dict(),
                "summary": self.original_summary.to_json_dict(),
            },
            "variants": [v.to_json_dict() for v in self.variants],
            "aggregates": [a.to_json_dict() for a in self.aggregates],
        }


@contextmanager
def _stage(name: str):
    try:
        yield
    except PipelineError:
        raise
    except (LexnetError, OSError, ValueError, KeyError) as exc:
        raise PipelineError(name, str(exc)) from exc


def _series_bundle(net, table) -> dict[str, RankSeries]:
    bundle = {}
    for direction in _DIRECTIONS:
        bundle[f"degree_{direction}"] = degree_rank(net, direction, table)
        bundle[f"strength_{direction}"] = strength_rank(net, direction, table)
        bundle[f"selectivity_{direction}"] = selectivity_rank(net, direction, table)
    return bundle


def _truncated(series: RankSeries, n_ranks: int) -> RankSeries:
    return RankSeries(series.label, series.values[:n_ranks])


def _compare_top_ranks(a: RankSeries, b: RankSeries, n_ranks: int) -> DominanceReport:
    return series_compare(_truncated(a, n_ranks), _truncated(b, n_ranks), 1.0)


def _median(values) -> float:
    return float(statistics.median(values))


def run_experiment(config: ExperimentConfig) -> ComparisonReport:
    """Run the original-vs-shuffled comparison described by `config`.

    Returns the report; when `config.out_dir` is set, also writes report.json,
    report.txt, per-variant summaries, rank-series CSVs, corpus stats and
    edge lists under it. Failures surface as PipelineError tagged with the
    stage that broke.
    """
    with _stage("config"):
        config.validate()

    with _stage("read"):
        raw = b"\n".join(Path(p).read_bytes() for p in config.inputs)
        text = decode_utf8(raw)

    with _stage("ingest"):
        token_config = TokenizeConfig(
            delimiters=frozenset(config.delimiters), case_fold=config.case_fold
        )
        corpus = ingest_text(text, token_config)
        original_stats = stats(corpus)

    artifacts: dict[str, str] = {}
    combined_entries: list[tuple[str, RankSeries]] = []

    with _stage("network:original"):
        original = _measure_variant("original", corpus, config, artifacts)
        combined_entries.extend(
            ("original", s) for _, s in sorted(original.series.items())
        )

    variants: list[VariantResult] = []
    per_mode: dict[ShuffleMode, list[VariantResult]] = {m: [] for m in config.modes}
    for mode in config.modes:
        for seed in config.seeds:
            label = f"{mode.value}_s{seed}"
            with _stage(f"shuffle:{label}"):
                shuffled = shuffle_corpus(corpus, mode, seed)
                preservation = preservation_check(corpus, shuffled, mode)
            with _stage(f"network:{label}"):
                measured = _measure_variant(label, shuffled, config, artifacts)
                combined_entries.extend(
                    (label, s) for _, s in sorted(measured.series.items())
                )
            variant = VariantResult(
                label=label,
                mode=mode,
                seed=seed,
                corpus_stats=measured.corpus_stats,
                summary=measured.summary,
                preservation=preservation,
                selectivity_cmp={
                    d: series_compare(
                        original.series[f"selectivity_{d}"],
                        measured.series[f"selectivity_{d}"],
                        config.selectivity_top_fraction,
                    )
                    for d in _DIRECTIONS
                },
                degree_cmp={
                    d: _compare_top_ranks(
                        original.series[f"degree_{d}"],
                        measured.series[f"degree_{d}"],
                        config.deviation_top_ranks,
                    )
                    for d in _DIRECTIONS
                },
                strength_cmp={
                    d: _compare_top_ranks(
                        original.series[f"strength_{d}"],
                        measured.series[f"strength_{d}"],
                        config.deviation_top_ranks,
                    )
                    for d in _DIRECTIONS
                },
            )
            variants.append(variant)
            per_mode[mode].append(variant)

    aggregates = tuple(
        _aggregate_mode(mode, per_mode[mode], original.summary)
        for mode in config.modes
    )

    report = ComparisonReport(
        config=config,
        original_stats=original_stats,
        original_summary=original.summary,
        variants=tuple(variants),
        aggregates=aggregates,
    )

    if config.out_dir is not None:
        with _stage("write"):
            artifacts["series/combined.csv"] = combined_series_csv(combined_entries)
            artifacts["report.json"] = (
                json.dumps(report.to_json_dict(), sort_keys=True, indent=2) + "\n"
            )
            artifacts["report.txt"] = render_report_text(report)
            _write_artifacts(artifacts, Path(config.out_dir))

    return report


@dataclass(frozen=True)
class _MeasuredVariant:
    corpus_stats: CorpusStats
    summary: NetworkSummary
    series: dict[str, RankSeries]


def _measure_variant(
    label: str,
    corpus: Corpus,
    config: ExperimentConfig,
    artifacts: dict[str, str],
) -> _MeasuredVariant:
    corpus_stats = stats(corpus)
    net = build(corpus, config.window)
    summary = summarize(
        net, sample_sources=config.sample_sources, sample_seed=config.sample_seed
    )
    table = metrics_table(net)
    series = _series_bundle(net, table)

    artifacts[f"stats/{label}.json"] = stats_to_json(corpus_stats)
    artifacts[f"summaries/{label}.json"] = summary_to_json(summary)
    artifacts[f"networks/{label}.edgelist"] = export_edge_list(net)
    artifacts[f"corpora/{label}.txt"] = corpus_to_text(corpus)
    for key, s in sorted(series.items()):
        artifacts[f"series/{label}__{key}.csv"] = rank_series_csv(s)
    artifacts[f"series/{label}__sentence_lengths.csv"] = histogram_csv(
        sentence_length_series(corpus_stats)
    )
    return _MeasuredVariant(corpus_stats=corpus_stats, summary=summary, series=series)


def _aggregate_mode(
    mode: ShuffleMode,
    results: list[VariantResult],
    original_summary: NetworkSummary,
) -> ModeAggregate:
    median_summary = MedianSummary(
        n_nodes=_median(v.summary.n_nodes for v in results),
        n_edges=_median(v.summary.n_edges for v in results),
        avg_path_length=_median(v.summary.avg_path_length for v in results),
        diameter=_median(v.summary.diameter for v in results),
        avg_clustering=_median(v.summary.avg_clustering for v in results),
        n_components=_median(v.summary.n_components for v in results),
    )
    return ModeAggregate(
        mode=mode,
        seeds=tuple(v.seed for v in results),
        median_summary=median_summary,
        verdicts=trend_verdicts(original_summary, median_summary),
        selectivity_dominance={
            d: _median(v.selectivity_cmp[d].dominance for v in results)
            for d in _DIRECTIONS
        },
        degree_max_deviation=_median(
            max(v.degree_cmp[d].max_rel_deviation for d in _DIRECTIONS)
            for v in results
        ),
        strength_max_deviation=_median(
            max(v.strength_cmp[d].max_rel_deviation for d in _DIRECTIONS)
            for v in results
        ),
        preservation_all_passed=all(v.preservation.passed for v in results),
    )


def _write_artifacts(artifacts: dict[str, str], out_dir: Path) -> None:
    for rel_path in sorted(artifacts):
        path = out_dir / rel_path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(artifacts[rel_path].encode("utf-8"))


def _fmt(value: float) -> str:
    return f"{value:.4f}".rstrip("0").rstrip(".")


def render_report_text(report: ComparisonReport) -> str:
    """Human-readable report: measures table, then per-mode trends."""
    lines: list[str] = []
    st = report.original_stats
    lines.append("co-occurrence network comparison")
    lines.append("=" * 32)
    lines.append("")
    lines.append(
        f"corpus: {st.total_words} words ({st.unique_words} unique) "
        f"in {st.sentence_count} sentences"
    )
    cfg = report.config
    sampling = (
        "exact" if cfg.sample_sources is None else f"sampled({cfg.sample_sources})"
    )
    lines.append(
        f"window: {cfg.window}   seeds: {','.join(str(s) for s in cfg.seeds)}   "
        f"distances: {sampling}"
    )
    lines.append("")

    headers = ["measure", "original"] + [
        f"{a.mode.value} (median)" for a in report.aggregates
    ]
    orig = report.original_summary
    rows = [
        ["N", str(orig.n_nodes)]
        + [_fmt(a.median_summary.n_nodes) for a in report.aggregates],
        ["K", str(orig.n_edges)]
        + [_fmt(a.median_summary.n_edges) for a in report.aggregates],
        ["L", _fmt(orig.avg_path_length)]
        + [_fmt(a.median_summary.avg_path_length) for a in report.aggregates],
        ["D", str(orig.diameter)]
        + [_fmt(a.median_summary.diameter) for a in report.aggregates],
        ["C", _fmt(orig.avg_clustering)]
        + [_fmt(a.median_summary.avg_clustering) for a in report.aggregates],
        ["omega", str(orig.n_components)]
        + [_fmt(a.median_summary.n_components) for a in report.aggregates],
    ]
    widths = [
        max(len(headers[c]), *(len(r[c]) for r in rows)) for c in range(len(headers))
    ]
    lines.append("  ".join(h.ljust(widths[c]) for c, h in enumerate(headers)))
    for r in rows:
        lines.append("  ".join(cell.rjust(widths[c]) for c, cell in enumerate(r)))
    lines.append("")

    for agg in report.aggregates:
        v = agg.verdicts
        lines.append(
            f"{agg.mode.value}-level shuffle (median over {len(agg.seeds)} seeds)"
        )
        lines.append(
            f"  L decreased:  {'yes' if v.path_length_decreased else 'NO'} "
            f"({_fmt(v.l_original)} -> {_fmt(v.l_shuffled)})"
        )
        lines.append(
            f"  D not larger: {'yes' if v.diameter_not_increased else 'NO'} "
            f"({_fmt(v.d_original)} -> {_fmt(v.d_shuffled)})"
        )
        lines.append(
            f"  C increased:  {'yes' if v.clustering_increased else 'NO'} "
            f"({_fmt(v.c_original)} -> {_fmt(v.c_shuffled)})"
        )
        frac = report.config.selectivity_top_fraction
        for d in _DIRECTIONS:
            lines.append(
                f"  {d}-selectivity dominance (top {_fmt(frac * 100)}% ranks): "
                f"{_fmt(agg.selectivity_dominance[d])}"
            )
        ranks = report.config.deviation_top_ranks
        lines.append(
            f"  degree max deviation (top {ranks} ranks):   "
            f"{_fmt(agg.degree_max_deviation)}"
        )
        lines.append(
            f"  strength max deviation (top {ranks} ranks): "
            f"{_fmt(agg.strength_max_deviation)}"
        )
        lines.append(
            "  preservation checks: "
            + ("all passed" if agg.preservation_all_passed else "FAILURES")
        )
        lines.append("")

    lines.append("per-seed measures")
    header = ["variant", "N", "K", "L", "D", "C", "omega"]
    table_rows = [
        [
            "original",
            str(orig.n_nodes),
            str(orig.n_edges),
            _fmt(orig.avg_path_length),
            str(orig.diameter),
            _fmt(orig.avg_clustering),
            str(orig.n_components),
        ]
    ]
    for variant in report.variants:
        s = variant.summary
        table_rows.append(
            [
                variant.label,
                str(s.n_nodes),
                str(s.n_edges),
                _fmt(s.avg_path_length),
                str(s.diameter),
                _fmt(s.avg_clustering),
                str(s.n_components),
            ]
        )
    widths = [
        max(len(header[c]), *(len(r[c]) for r in table_rows))
        for c in range(len(header))
    ]
    lines.append(
        "  " + "  ".join(h.ljust(widths[c]) for c, h in enumerate(header))
    )
    for r in table_rows:
        lines.append(
            "  "
            + "  ".join(
                (r[c].ljust(widths[c]) if c == 0 else r[c].rjust(widths[c]))
                for c in range(len(header))
            )
        )
    lines.append("")
    return "\n".join(lines)
