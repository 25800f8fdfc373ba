"""lexnet: word co-occurrence networks from plain text, shuffled null models,
and the measures that tell them apart."""

__version__ = "0.1.0"

from .corpus import (
    Corpus,
    CorpusStats,
    Delimiter,
    Lexicon,
    TokenizeConfig,
    Word,
    corpus_from_lines,
    corpus_to_text,
    ingest_text,
    load_corpus,
    save_corpus,
    segment,
    stats,
    tokenize,
)
from .distributions import (
    DominanceReport,
    RankSeries,
    degree_rank,
    rank_series,
    selectivity_rank,
    sentence_length_series,
    series_compare,
    strength_rank,
)
from .errors import (
    CompositionError,
    DecodingError,
    LexnetError,
    PipelineError,
    UndefinedMetricError,
)
from .metrics import (
    ComponentStructure,
    DistanceResult,
    NetworkSummary,
    NodeMetrics,
    NodeMetricsTable,
    average_clustering,
    average_path_length,
    clustering_coefficient,
    components,
    diameter,
    distances,
    max_mean_distance,
    metrics_table,
    node_metrics,
    summarize,
)
from .network import (
    CooccurrenceNetwork,
    UndirectedGraph,
    build,
    export_dot,
    export_edge_list,
)
from .report import (
    ComparisonReport,
    ExperimentConfig,
    TrendVerdicts,
    run_experiment,
    trend_verdicts,
)
from .shuffle import (
    PreservationReport,
    ShuffleMode,
    preservation_check,
    shuffle_corpus,
    shuffle_sentence_level,
    shuffle_text_level,
    shuffle_within_sentence,
)

__all__ = [
    "__version__",
    "Corpus",
    "CorpusStats",
    "Delimiter",
    "Lexicon",
    "TokenizeConfig",
    "Word",
    "corpus_from_lines",
    "corpus_to_text",
    "ingest_text",
    "load_corpus",
    "save_corpus",
    "segment",
    "stats",
    "tokenize",
    "DominanceReport",
    "RankSeries",
    "degree_rank",
    "rank_series",
    "selectivity_rank",
    "sentence_length_series",
    "series_compare",
    "strength_rank",
    "CompositionError",
    "DecodingError",
    "LexnetError",
    "PipelineError",
    "UndefinedMetricError",
    "ComponentStructure",
    "DistanceResult",
    "NetworkSummary",
    "NodeMetrics",
    "NodeMetricsTable",
    "average_clustering",
    "average_path_length",
    "clustering_coefficient",
    "components",
    "diameter",
    "distances",
    "max_mean_distance",
    "metrics_table",
    "node_metrics",
    "summarize",
    "CooccurrenceNetwork",
    "UndirectedGraph",
    "build",
    "export_dot",
    "export_edge_list",
    "ComparisonReport",
    "ExperimentConfig",
    "TrendVerdicts",
    "run_experiment",
    "trend_verdicts",
    "PreservationReport",
    "ShuffleMode",
    "preservation_check",
    "shuffle_corpus",
    "shuffle_sentence_level",
    "shuffle_text_level",
    "shuffle_within_sentence",
]
