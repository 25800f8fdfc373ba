"""Rank-distribution series and histogram tables, as plot-ready data.

A rank series is a multiset of values sorted descending and paired with
ranks 1..M; ties keep their input order and get consecutive distinct ranks.
The module emits CSV (and a JSON mirror) rather than images, so the series
drop straight into any log-log plotting tool.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .corpus import CorpusStats
from .metrics import NodeMetricsTable, metrics_table
from .network import CooccurrenceNetwork


@dataclass(frozen=True)
class RankSeries:
    """Non-increasing values paired with consecutive ranks starting at 1."""

    label: str
    values: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.values)

    def points(self) -> Iterable[tuple[int, float]]:
        return ((rank, value) for rank, value in enumerate(self.values, start=1))

    def to_json_dict(self) -> dict:
        return {"label": self.label, "points": [[r, v] for r, v in self.points()]}


def rank_series(values: Iterable[float], label: str) -> RankSeries:
    """Sort values descending into a rank series (stable, so ties keep
    their input order)."""
    return RankSeries(label=label, values=tuple(sorted(values, reverse=True)))


def _direction_column(table: NodeMetricsTable, kind: str, direction: str) -> np.ndarray:
    if direction not in ("in", "out"):
        raise ValueError(f"direction must be 'in' or 'out', got {direction!r}")
    return getattr(table, f"{kind}_{direction}")


def degree_rank(
    network: CooccurrenceNetwork,
    direction: str = "out",
    table: NodeMetricsTable | None = None,
) -> RankSeries:
    """Degree rank series over all nodes (zero degrees included)."""
    if table is None:
        table = metrics_table(network)
    column = _direction_column(table, "k", direction)
    return rank_series((int(v) for v in column), f"{direction}-degree")


def strength_rank(
    network: CooccurrenceNetwork,
    direction: str = "out",
    table: NodeMetricsTable | None = None,
) -> RankSeries:
    """Strength rank series over all nodes."""
    if table is None:
        table = metrics_table(network)
    column = _direction_column(table, "s", direction)
    return rank_series((int(v) for v in column), f"{direction}-strength")


def selectivity_rank(
    network: CooccurrenceNetwork,
    direction: str = "out",
    table: NodeMetricsTable | None = None,
) -> RankSeries:
    """Selectivity rank series; nodes with zero degree are excluded, not
    scored 0, so the curve is not distorted by undefined ratios."""
    if table is None:
        table = metrics_table(network)
    column = _direction_column(table, "e", direction)
    defined = column[~np.isnan(column)]
    return rank_series((float(v) for v in defined), f"{direction}-selectivity")


def sentence_length_series(corpus_stats: CorpusStats) -> list[tuple[int, int]]:
    """(length, frequency) pairs sorted by length ascending."""
    return sorted(corpus_stats.sentence_length_histogram.items())


@dataclass(frozen=True)
class DominanceReport:
    """How one rank curve sits against another over the top ranks.

    `dominance` is the fraction of compared positions where curve `a` is
    strictly above curve `b`; deviations are |a - b| / a per position.
    """

    a_label: str
    b_label: str
    positions: int
    a_above: int
    dominance: float
    max_rel_deviation: float
    mean_rel_deviation: float

    def to_json_dict(self) -> dict:
        return {
            "a": self.a_label,
            "b": self.b_label,
            "positions": self.positions,
            "a_above": self.a_above,
            "dominance": self.dominance,
            "max_rel_deviation": self.max_rel_deviation,
            "mean_rel_deviation": self.mean_rel_deviation,
        }


def series_compare(
    a: RankSeries, b: RankSeries, top_fraction: float = 1.0
) -> DominanceReport:
    """Compare two rank curves over their top ranks.

    Looks at ranks 1 .. ceil(top_fraction * min(len(a), len(b))). A position
    where `a` is zero contributes deviation 0 when `b` is zero too, infinity
    otherwise.
    """
    if len(a) == 0 or len(b) == 0:
        raise ValueError("cannot compare empty rank series")
    if not 0 < top_fraction <= 1:
        raise ValueError(f"top_fraction must be in (0, 1], got {top_fraction}")
    m = math.ceil(top_fraction * min(len(a), len(b)))
    above = 0
    deviations = []
    for av, bv in zip(a.values[:m], b.values[:m]):
        if av > bv:
            above += 1
        if av != 0:
            deviations.append(abs(av - bv) / av)
        else:
            deviations.append(0.0 if bv == 0 else math.inf)
    return DominanceReport(
        a_label=a.label,
        b_label=b.label,
        positions=m,
        a_above=above,
        dominance=above / m,
        max_rel_deviation=max(deviations),
        mean_rel_deviation=sum(deviations) / m,
    )


def rank_series_csv(series: RankSeries) -> str:
    """CSV with a rank,value row per point."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rank", "value"])
    for rank, value in series.points():
        writer.writerow([rank, value])
    return buf.getvalue()


def combined_series_csv(entries: Iterable[tuple[str, RankSeries]]) -> str:
    """Long-format CSV over several corpora: corpus_label,series,rank,value."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["corpus_label", "series", "rank", "value"])
    for corpus_label, series in entries:
        for rank, value in series.points():
            writer.writerow([corpus_label, series.label, rank, value])
    return buf.getvalue()


def histogram_csv(pairs: Iterable[tuple[int, int]]) -> str:
    """CSV with a length,frequency row per histogram bin."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["length", "frequency"])
    for length, freq in pairs:
        writer.writerow([length, freq])
    return buf.getvalue()
