"""Network measures: components, hop distances, weighted clustering,
degree/strength/selectivity.

Distance and clustering averages follow the largest-component rule: when the
graph has several weakly connected components they are computed over the
largest one only (ties broken by edge count, then by smallest word id).
Distances are unweighted hop counts on the undirected projection, found by
per-source breadth-first traversal. Exact computation visits every node as a
source; the optional estimator samples sources uniformly without replacement
from a seeded generator, and summaries record which method produced L and D.

The clustering coefficient of a node is the geometric-mean weighted triangle
density of its neighborhood: with projection weights normalized by the
largest weight in the projection, every ordered pair (j, k) of neighbors of
i contributes (w_ij * w_ik * w_jk)^(1/3), and the sum is divided by
k_i * (k_i - 1). Nodes with fewer than two distinct neighbors score 0.
Self-loops are excluded from the projection, hence from clustering and
distances; for degree, strength and selectivity a self-loop does count, as
it makes a node its own neighbor in both directions.

Selectivity is strength over degree, the mean weight per link of a node,
computed separately for in- and out-links and undefined where the degree is
zero. Alongside the hop-count diameter, `max_mean_distance` reports the
largest per-node mean distance as a diagnostic (an alternative, non-integer
reading of "maximum distance").
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .errors import UndefinedMetricError
from .network import CooccurrenceNetwork, UndirectedGraph

_EMPTY = np.empty(0, dtype=np.int64)


# ---------------------------------------------------------------------------
# Components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentStructure:
    """Weakly connected components, largest first.

    `components[0]` is the largest by node count (ties: more directed edges,
    then smallest contained word id); `membership` maps word id to the index
    of its component in `components`.
    """

    components: tuple[tuple[int, ...], ...]
    membership: dict[int, int]

    @property
    def count(self) -> int:
        return len(self.components)

    @property
    def largest(self) -> tuple[int, ...]:
        return self.components[0]


def _gather_neighbors(g: UndirectedGraph, frontier: np.ndarray) -> np.ndarray:
    counts = g.indptr[frontier + 1] - g.indptr[frontier]
    total = int(counts.sum())
    if total == 0:
        return _EMPTY
    starts = np.repeat(g.indptr[frontier], counts)
    offsets = np.arange(total, dtype=np.int64) - np.repeat(
        np.cumsum(counts) - counts, counts
    )
    return g.indices[starts + offsets]


def _bfs_fill(g: UndirectedGraph, source: int, dist: np.ndarray) -> np.ndarray:
    """Fill `dist` (pre-set to -1) with hop counts from `source`.

    Returns the positions reached, source included.
    """
    dist[source] = 0
    reached = [np.array([source], dtype=np.int64)]
    frontier = reached[0]
    level = 0
    while frontier.size:
        level += 1
        neighbors = _gather_neighbors(g, frontier)
        if neighbors.size == 0:
            break
        neighbors = neighbors[dist[neighbors] < 0]
        if neighbors.size == 0:
            break
        frontier = np.unique(neighbors)
        dist[frontier] = level
        reached.append(frontier)
    return np.concatenate(reached)


def components(network: CooccurrenceNetwork) -> ComponentStructure:
    """Weakly connected components (edge direction ignored)."""
    g = network.undirected_projection()
    n = g.n_nodes
    dist = np.full(n, -1, dtype=np.int64)
    assigned = np.zeros(n, dtype=bool)
    groups: list[np.ndarray] = []
    for start in range(n):
        if assigned[start]:
            continue
        positions = _bfs_fill(g, start, dist)
        assigned[positions] = True
        dist[positions] = -1  # reset only what was touched
        groups.append(np.sort(positions))

    # Directed edge count per component for the tie-break.
    comp_of_pos = np.empty(n, dtype=np.int64)
    for gi, positions in enumerate(groups):
        comp_of_pos[positions] = gi
    edge_counts = [0] * len(groups)
    node_ids = g.node_ids
    for u in network.nodes():
        gi = int(comp_of_pos[int(np.searchsorted(node_ids, u))])
        edge_counts[gi] += len(network.out_neighbors(u))

    def rank_key(gi: int):
        positions = groups[gi]
        return (-positions.size, -edge_counts[gi], int(node_ids[positions[0]]))

    order = sorted(range(len(groups)), key=rank_key)
    comps = tuple(
        tuple(int(w) for w in node_ids[groups[gi]]) for gi in order
    )
    membership = {w: ci for ci, comp in enumerate(comps) for w in comp}
    return ComponentStructure(components=comps, membership=membership)


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DistanceResult:
    """Hop distances over the largest component's undirected projection.

    `mean_distance[i]` is the mean hop count from `source_ids[i]` to every
    component node (self included, at distance 0), i.e. the row sum divided
    by the component size. `rows`, when kept, holds the raw per-source
    distance vectors aligned with `node_ids`.
    """

    node_ids: np.ndarray
    source_ids: np.ndarray
    mean_distance: np.ndarray
    sum_distances: int
    max_distance: int
    exact: bool
    rows: np.ndarray | None = None

    @property
    def n_nodes(self) -> int:
        return int(self.node_ids.size)

    @property
    def n_sources(self) -> int:
        return int(self.source_ids.size)

    @property
    def reachable_pairs(self) -> int:
        return self.n_sources * (self.n_nodes - 1)

    @property
    def avg_path_length(self) -> float:
        """Mean hop count over ordered reachable pairs (estimate if sampled)."""
        if self.n_nodes < 2:
            raise UndefinedMetricError(
                "average path length needs at least 2 nodes in the largest component"
            )
        return self.sum_distances / self.reachable_pairs

    @property
    def max_mean_distance(self) -> float:
        return float(self.mean_distance.max())

    def mean_distance_of(self, word_id: int) -> float:
        pos = int(np.searchsorted(self.source_ids, word_id))
        if pos >= self.source_ids.size or self.source_ids[pos] != word_id:
            raise KeyError(word_id)
        return float(self.mean_distance[pos])


def _largest_component_subgraph(
    network: CooccurrenceNetwork, comps: ComponentStructure
) -> tuple[np.ndarray, UndirectedGraph]:
    """CSR restricted to the largest component, positions renumbered 0..n-1."""
    g = network.undirected_projection()
    member_ids = np.fromiter(comps.largest, dtype=np.int64, count=len(comps.largest))
    positions = np.searchsorted(g.node_ids, member_ids)
    remap = np.full(g.n_nodes, -1, dtype=np.int64)
    remap[positions] = np.arange(positions.size, dtype=np.int64)

    counts = g.indptr[positions + 1] - g.indptr[positions]
    indptr = np.zeros(positions.size + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    gathered = _gather_neighbors(g, positions)
    sub = UndirectedGraph(
        node_ids=member_ids,
        indptr=indptr,
        indices=remap[gathered],
        weights=np.concatenate(
            [g.weights[g.indptr[p] : g.indptr[p + 1]] for p in positions]
        )
        if gathered.size
        else np.empty(0, dtype=np.int64),
        max_weight=g.max_weight,
    )
    return member_ids, sub


def distances(
    network: CooccurrenceNetwork,
    *,
    sample_sources: int | None = None,
    sample_seed: int = 0,
    keep_rows: bool = False,
) -> DistanceResult:
    """Breadth-first hop distances on the largest component.

    With `sample_sources` set, that many BFS sources are drawn uniformly
    without replacement (seeded); otherwise every component node is a source
    and the result is exact.
    """
    comps = components(network)
    if comps.count == 0:
        raise UndefinedMetricError("network has no nodes")
    member_ids, sub = _largest_component_subgraph(network, comps)
    n = member_ids.size

    if sample_sources is not None and sample_sources < 1:
        raise ValueError(f"sample_sources must be >= 1, got {sample_sources}")
    exact = sample_sources is None or sample_sources >= n
    if exact:
        source_positions = np.arange(n, dtype=np.int64)
    else:
        rng = np.random.Generator(np.random.PCG64(sample_seed))
        source_positions = np.sort(
            rng.choice(n, size=sample_sources, replace=False)
        ).astype(np.int64)

    dist = np.full(n, -1, dtype=np.int64)
    mean_distance = np.empty(source_positions.size, dtype=np.float64)
    rows = (
        np.empty((source_positions.size, n), dtype=np.int32) if keep_rows else None
    )
    total = 0
    max_distance = 0
    for i, src in enumerate(source_positions):
        dist[:] = -1
        _bfs_fill(sub, int(src), dist)
        row_sum = int(dist.sum())
        row_max = int(dist.max())
        total += row_sum
        if row_max > max_distance:
            max_distance = row_max
        mean_distance[i] = row_sum / n
        if rows is not None:
            rows[i] = dist
    return DistanceResult(
        node_ids=member_ids,
        source_ids=member_ids[source_positions],
        mean_distance=mean_distance,
        sum_distances=total,
        max_distance=max_distance,
        exact=exact,
        rows=rows,
    )


def average_path_length(
    network: CooccurrenceNetwork,
    *,
    sample_sources: int | None = None,
    sample_seed: int = 0,
) -> float:
    """Mean hop count between ordered node pairs of the largest component."""
    result = distances(
        network, sample_sources=sample_sources, sample_seed=sample_seed
    )
    return result.avg_path_length


def diameter(
    network: CooccurrenceNetwork,
    *,
    sample_sources: int | None = None,
    sample_seed: int = 0,
) -> int:
    """Largest hop count between nodes of the largest component."""
    result = distances(
        network, sample_sources=sample_sources, sample_seed=sample_seed
    )
    if result.n_nodes < 2:
        raise UndefinedMetricError(
            "diameter needs at least 2 nodes in the largest component"
        )
    return result.max_distance


def max_mean_distance(
    network: CooccurrenceNetwork,
    *,
    sample_sources: int | None = None,
    sample_seed: int = 0,
) -> float:
    """Diagnostic: largest per-node mean distance (non-integer diameter reading)."""
    result = distances(
        network, sample_sources=sample_sources, sample_seed=sample_seed
    )
    if result.n_nodes < 2:
        raise UndefinedMetricError(
            "max mean distance needs at least 2 nodes in the largest component"
        )
    return result.max_mean_distance


# ---------------------------------------------------------------------------
# Clustering
# ---------------------------------------------------------------------------


def clustering_vector(network: CooccurrenceNetwork) -> np.ndarray:
    """Clustering coefficient for every node, aligned with sorted node ids.

    Triangle enumeration: each undirected edge (u, v) with u < v is scanned
    once for common neighbors x > v, so each triangle is found exactly once
    and credits all three corners with both of their ordered pair terms.
    """
    g = network.undirected_projection()
    n = g.n_nodes
    sums = np.zeros(n, dtype=np.float64)
    deg = g.degrees()
    if g.max_weight == 0:
        return sums
    wc = np.cbrt(g.weights / g.max_weight)

    indptr, indices = g.indptr, g.indices
    for u in range(n):
        s, e = int(indptr[u]), int(indptr[u + 1])
        nbr_u = indices[s:e]
        wc_u = wc[s:e]
        # neighbors v > u: each undirected edge handled from its smaller endpoint
        first = int(np.searchsorted(nbr_u, u, side="right"))
        for j in range(first, e - s):
            v = int(nbr_u[j])
            wc_uv = wc_u[j]
            sv, ev = int(indptr[v]), int(indptr[v + 1])
            nbr_v = indices[sv:ev]
            wc_v = wc[sv:ev]
            ju = int(np.searchsorted(nbr_u, v, side="right"))
            jv = int(np.searchsorted(nbr_v, v, side="right"))
            common, iu, iv = np.intersect1d(
                nbr_u[ju:], nbr_v[jv:], assume_unique=True, return_indices=True
            )
            if common.size == 0:
                continue
            tri = wc_uv * wc_u[ju + iu] * wc_v[jv + iv]
            pair_sum = 2.0 * float(tri.sum())
            sums[u] += pair_sum
            sums[v] += pair_sum
            np.add.at(sums, common, 2.0 * tri)

    out = np.zeros(n, dtype=np.float64)
    mask = deg >= 2
    out[mask] = sums[mask] / (deg[mask] * (deg[mask] - 1))
    return out


def clustering_coefficient(network: CooccurrenceNetwork, word_id: int) -> float:
    """Clustering coefficient of a single node."""
    g = network.undirected_projection()
    pos = g.position_of(word_id)
    nbr, wts = g.row(pos)
    k = nbr.size
    if k < 2 or g.max_weight == 0:
        return 0.0
    wc_i = np.cbrt(wts / g.max_weight)
    total = 0.0
    for j_idx in range(k):
        j = int(nbr[j_idx])
        nbr_j, wts_j = g.row(j)
        common, ii, jj = np.intersect1d(
            nbr, nbr_j, assume_unique=True, return_indices=True
        )
        if common.size == 0:
            continue
        wc_j = np.cbrt(wts_j / g.max_weight)
        total += float((wc_i[j_idx] * wc_i[ii] * wc_j[jj]).sum())
    return total / (k * (k - 1))


def average_clustering(
    network: CooccurrenceNetwork, comps: ComponentStructure | None = None
) -> float:
    """Mean clustering coefficient; over the largest component when there
    are several, over all nodes otherwise."""
    if network.n_nodes == 0:
        raise UndefinedMetricError("average clustering of an empty network")
    values = clustering_vector(network)
    if comps is None:
        comps = components(network)
    if comps.count > 1:
        g = network.undirected_projection()
        member_ids = np.fromiter(
            comps.largest, dtype=np.int64, count=len(comps.largest)
        )
        values = values[np.searchsorted(g.node_ids, member_ids)]
    return float(values.mean())


# ---------------------------------------------------------------------------
# Degree, strength, selectivity
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NodeMetrics:
    """Per-node measures; selectivity is None where the degree is zero."""

    word_id: int
    k_in: int
    k_out: int
    s_in: int
    s_out: int
    e_in: float | None
    e_out: float | None
    clustering: float


@dataclass(frozen=True)
class NodeMetricsTable:
    """Columnar per-node metrics, rows aligned with sorted `node_ids`.

    Undefined selectivities are NaN in the arrays (None in `rows()`).
    """

    node_ids: np.ndarray
    k_in: np.ndarray
    k_out: np.ndarray
    s_in: np.ndarray
    s_out: np.ndarray
    e_in: np.ndarray
    e_out: np.ndarray
    clustering: np.ndarray

    def __len__(self) -> int:
        return int(self.node_ids.size)

    def rows(self) -> Iterator[NodeMetrics]:
        for i in range(len(self)):
            yield NodeMetrics(
                word_id=int(self.node_ids[i]),
                k_in=int(self.k_in[i]),
                k_out=int(self.k_out[i]),
                s_in=int(self.s_in[i]),
                s_out=int(self.s_out[i]),
                e_in=None if np.isnan(self.e_in[i]) else float(self.e_in[i]),
                e_out=None if np.isnan(self.e_out[i]) else float(self.e_out[i]),
                clustering=float(self.clustering[i]),
            )


def metrics_table(network: CooccurrenceNetwork) -> NodeMetricsTable:
    """Degrees, strengths, selectivities and clustering for every node."""
    g = network.undirected_projection()
    node_ids = g.node_ids
    n = node_ids.size
    k_in = np.zeros(n, dtype=np.int64)
    k_out = np.zeros(n, dtype=np.int64)
    s_in = np.zeros(n, dtype=np.int64)
    s_out = np.zeros(n, dtype=np.int64)
    for i, word_id in enumerate(node_ids):
        out_row = network.out_neighbors(int(word_id))
        in_row = network.in_neighbors(int(word_id))
        k_out[i] = len(out_row)
        s_out[i] = sum(out_row.values())
        k_in[i] = len(in_row)
        s_in[i] = sum(in_row.values())
    with np.errstate(divide="ignore", invalid="ignore"):
        e_in = np.where(k_in > 0, s_in / np.maximum(k_in, 1), np.nan)
        e_out = np.where(k_out > 0, s_out / np.maximum(k_out, 1), np.nan)
    return NodeMetricsTable(
        node_ids=node_ids.copy(),
        k_in=k_in,
        k_out=k_out,
        s_in=s_in,
        s_out=s_out,
        e_in=e_in,
        e_out=e_out,
        clustering=clustering_vector(network),
    )


def node_metrics(network: CooccurrenceNetwork, word_id: int) -> NodeMetrics:
    """Metrics of a single node; raises KeyError for unknown nodes."""
    if not network.has_node(word_id):
        raise KeyError(word_id)
    out_row = network.out_neighbors(word_id)
    in_row = network.in_neighbors(word_id)
    k_out, s_out = len(out_row), sum(out_row.values())
    k_in, s_in = len(in_row), sum(in_row.values())
    return NodeMetrics(
        word_id=word_id,
        k_in=k_in,
        k_out=k_out,
        s_in=s_in,
        s_out=s_out,
        e_in=s_in / k_in if k_in else None,
        e_out=s_out / k_out if k_out else None,
        clustering=clustering_coefficient(network, word_id),
    )


def node_metrics_csv(network: CooccurrenceNetwork) -> str:
    """CSV of per-node metrics: word,k_in,k_out,s_in,s_out,e_in,e_out,c."""
    table = metrics_table(network)
    lexeme = network.lexicon.lexeme_of
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["word", "k_in", "k_out", "s_in", "s_out", "e_in", "e_out", "c"])
    for row in table.rows():
        writer.writerow(
            [
                lexeme(row.word_id),
                row.k_in,
                row.k_out,
                row.s_in,
                row.s_out,
                "" if row.e_in is None else repr(row.e_in),
                "" if row.e_out is None else repr(row.e_out),
                repr(row.clustering),
            ]
        )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Summary
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NetworkSummary:
    """The headline network measures.

    `distance_method` records whether L and D came from exact all-source
    traversal or from the seeded source-sampling estimator.
    """

    n_nodes: int
    n_edges: int
    avg_path_length: float
    diameter: int
    avg_clustering: float
    n_components: int
    distance_method: str = "exact"

    def to_json_dict(self) -> dict:
        return {
            "N": self.n_nodes,
            "K": self.n_edges,
            "L": self.avg_path_length,
            "D": self.diameter,
            "C": self.avg_clustering,
            "omega": self.n_components,
            "distance_estimator": self.distance_method,
        }


def summarize(
    network: CooccurrenceNetwork,
    *,
    sample_sources: int | None = None,
    sample_seed: int = 0,
) -> NetworkSummary:
    """Assemble N, K, L, D, C and the component count for a network."""
    comps = components(network)
    if comps.count == 0:
        raise UndefinedMetricError("cannot summarize an empty network")
    result = distances(
        network, sample_sources=sample_sources, sample_seed=sample_seed
    )
    if result.n_nodes < 2:
        raise UndefinedMetricError(
            "summary needs at least 2 nodes in the largest component"
        )
    return NetworkSummary(
        n_nodes=network.n_nodes,
        n_edges=network.n_edges,
        avg_path_length=result.avg_path_length,
        diameter=result.max_distance,
        avg_clustering=average_clustering(network, comps),
        n_components=comps.count,
        distance_method="exact" if result.exact else f"sampled({result.n_sources})",
    )


def summary_to_json(summary: NetworkSummary) -> str:
    return json.dumps(summary.to_json_dict(), sort_keys=True, indent=2) + "\n"
