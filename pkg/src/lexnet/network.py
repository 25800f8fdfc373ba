"""Directed weighted word co-occurrence networks.

Each distinct word is a node; a directed edge u -> v accumulates one unit of
weight each time v appears after u within the co-occurrence window inside a
single sentence (window 1 links immediate neighbors only). Links never cross
sentence boundaries, so one-word sentences contribute nothing and words that
appear only in them stay out of the network entirely. Parallel occurrences
always merge into the edge weight; repeated adjacent words produce a
self-loop edge.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

import numpy as np

from .corpus import Corpus, Lexicon


@dataclass(frozen=True)
class UndirectedGraph:
    """CSR view of a network with edge directions ignored.

    Antiparallel weights are summed and self-loops dropped. `node_ids` is
    sorted; `indices` holds node positions (not word ids) with each row
    sorted, so rows intersect by merge. `max_weight` is the largest combined
    weight, 0 when there are no edges.
    """

    node_ids: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    max_weight: int

    @property
    def n_nodes(self) -> int:
        return int(self.node_ids.size)

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def row(self, pos: int) -> tuple[np.ndarray, np.ndarray]:
        """Neighbor positions and combined weights of the node at `pos`."""
        start, end = int(self.indptr[pos]), int(self.indptr[pos + 1])
        return self.indices[start:end], self.weights[start:end]

    def position_of(self, word_id: int) -> int:
        pos = int(np.searchsorted(self.node_ids, word_id))
        if pos >= self.node_ids.size or self.node_ids[pos] != word_id:
            raise KeyError(word_id)
        return pos


class CooccurrenceNetwork:
    """Immutable directed weighted graph over interned word ids.

    Adjacency is stored both ways for O(degree) iteration. Build once via
    `build` or `from_edges`, then treat as read-only; the undirected
    projection used by the metric routines is cached on first use and safe
    for concurrent readers afterwards.
    """

    def __init__(
        self,
        lexicon: Lexicon,
        window: int,
        out_adj: dict[int, dict[int, int]],
        in_adj: dict[int, dict[int, int]],
    ):
        self.lexicon = lexicon
        self.window = window
        self._out = out_adj
        self._in = in_adj
        self._n_edges = sum(len(row) for row in out_adj.values())
        self._total_weight = sum(sum(row.values()) for row in out_adj.values())
        self._projection: UndirectedGraph | None = None

    @classmethod
    def from_edges(
        cls,
        edges: Mapping[tuple[int, int], int] | Iterable[tuple[int, int, int]],
        lexicon: Lexicon | None = None,
        window: int = 1,
    ) -> "CooccurrenceNetwork":
        """Build directly from (source, target) -> weight data.

        Weights must be positive integers. Without a lexicon, word ids get
        their decimal string as lexeme.
        """
        if isinstance(edges, Mapping):
            triples: Iterable[tuple[int, int, int]] = (
                (u, v, w) for (u, v), w in edges.items()
            )
        else:
            triples = edges
        out_adj: dict[int, dict[int, int]] = {}
        in_adj: dict[int, dict[int, int]] = {}
        for u, v, w in triples:
            if not isinstance(w, (int, np.integer)) or w < 1:
                raise ValueError(f"edge weight must be a positive integer, got {w!r}")
            row = out_adj.setdefault(u, {})
            row[v] = row.get(v, 0) + int(w)
            in_adj.setdefault(v, {})[u] = row[v]
            out_adj.setdefault(v, {})
            in_adj.setdefault(u, {})
        if lexicon is None:
            max_id = max(out_adj) if out_adj else -1
            lexicon = Lexicon(str(i) for i in range(max_id + 1))
        return cls(lexicon, window, out_adj, in_adj)

    @property
    def n_nodes(self) -> int:
        return len(self._out)

    @property
    def n_edges(self) -> int:
        """Distinct directed edges, self-loops included."""
        return self._n_edges

    @property
    def total_weight(self) -> int:
        return self._total_weight

    def nodes(self) -> list[int]:
        return sorted(self._out)

    def has_node(self, word_id: int) -> bool:
        return word_id in self._out

    def weight(self, u: int, v: int) -> int:
        """Weight of edge u -> v, 0 when absent."""
        return self._out.get(u, {}).get(v, 0)

    def out_neighbors(self, word_id: int) -> Mapping[int, int]:
        return self._out[word_id]

    def in_neighbors(self, word_id: int) -> Mapping[int, int]:
        return self._in[word_id]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Directed (source, target, weight) triples, sorted by id pair."""
        for u in sorted(self._out):
            row = self._out[u]
            for v in sorted(row):
                yield u, v, row[v]

    def undirected_projection(self) -> UndirectedGraph:
        if self._projection is None:
            self._projection = _project(self._out)
        return self._projection

    def __repr__(self) -> str:
        return (
            f"CooccurrenceNetwork(N={self.n_nodes}, K={self.n_edges}, "
            f"window={self.window})"
        )


def build(corpus: Corpus, window: int = 1) -> CooccurrenceNetwork:
    """Construct the co-occurrence network of a corpus.

    Every word at position p links to each word at positions p+1 .. p+window
    of the same sentence, one weight unit per occurrence.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    out_adj: dict[int, dict[int, int]] = {}
    in_adj: dict[int, dict[int, int]] = {}
    for sentence in corpus.sentences:
        n = len(sentence)
        if n < 2:
            continue
        for p in range(n - 1):
            u = sentence[p]
            for q in range(p + 1, min(n, p + window + 1)):
                v = sentence[q]
                row = out_adj.setdefault(u, {})
                row[v] = row.get(v, 0) + 1
                in_adj.setdefault(v, {})[u] = row[v]
                out_adj.setdefault(v, {})
                in_adj.setdefault(u, {})
    return CooccurrenceNetwork(corpus.lexicon, window, out_adj, in_adj)


def _project(out_adj: dict[int, dict[int, int]]) -> UndirectedGraph:
    combined: dict[tuple[int, int], int] = {}
    for u, row in out_adj.items():
        for v, w in row.items():
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            combined[key] = combined.get(key, 0) + w

    node_ids = np.fromiter(sorted(out_adj), dtype=np.int64, count=len(out_adj))
    n = node_ids.size
    if not combined:
        return UndirectedGraph(
            node_ids=node_ids,
            indptr=np.zeros(n + 1, dtype=np.int64),
            indices=np.empty(0, dtype=np.int64),
            weights=np.empty(0, dtype=np.int64),
            max_weight=0,
        )

    m = len(combined)
    us = np.empty(m, dtype=np.int64)
    vs = np.empty(m, dtype=np.int64)
    ws = np.empty(m, dtype=np.int64)
    for i, ((u, v), w) in enumerate(combined.items()):
        us[i], vs[i], ws[i] = u, v, w
    upos = np.searchsorted(node_ids, us)
    vpos = np.searchsorted(node_ids, vs)

    rows = np.concatenate([upos, vpos])
    cols = np.concatenate([vpos, upos])
    wts = np.concatenate([ws, ws])
    order = np.lexsort((cols, rows))
    rows, cols, wts = rows[order], cols[order], wts[order]

    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, rows + 1, 1)
    np.cumsum(indptr, out=indptr)
    return UndirectedGraph(
        node_ids=node_ids,
        indptr=indptr,
        indices=cols,
        weights=wts,
        max_weight=int(ws.max()),
    )


def export_edge_list(network: CooccurrenceNetwork) -> str:
    """One line per directed edge, "source<TAB>target<TAB>weight".

    Lines are sorted by (source lexeme, target lexeme) in plain codepoint
    order, so the output is bit-exact for diffing.
    """
    lexeme = network.lexicon.lexeme_of
    rows = sorted((lexeme(u), lexeme(v), w) for u, v, w in network.edges())
    return "".join(f"{s}\t{t}\t{w}\n" for s, t, w in rows)


def _dot_quote(lexeme: str) -> str:
    return '"' + lexeme.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(network: CooccurrenceNetwork, name: str = "cooccurrence") -> str:
    """DOT digraph for small-network visualization; weights > 1 are labeled."""
    lexeme = network.lexicon.lexeme_of
    lines = [f"digraph {name} {{"]
    rows = sorted((lexeme(u), lexeme(v), w) for u, v, w in network.edges())
    for source, target, w in rows:
        label = f' [label="{w}"]' if w > 1 else ""
        lines.append(f"  {_dot_quote(source)} -> {_dot_quote(target)}{label};")
    lines.append("}")
    return "\n".join(lines) + "\n"
