"""Simple-graph representation and the connectivity primitives everything else uses.

Graphs are simple (no self-loops, no parallel edges), either undirected or
directed, with dense integer vertex ids ``0..n-1``.  Instances are immutable
after construction, so they can be shared freely between workers; algorithms
that mutate (percolation, rewiring) operate on their own edge copies.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

__all__ = [
    "Graph",
    "largest_connected_component",
    "hop_distances",
    "collapse_to_undirected",
]


def _canonical_edges(vertex_count: int, edges, directed: bool):
    """Validate, deduplicate and canonically sort an edge array.

    Returns ``(edges, self_loops_dropped, duplicates_dropped)``.  Undirected
    edges are stored once as ``(min, max)`` rows, sorted lexicographically.
    """
    arr = np.asarray(edges, dtype=np.int64)
    if arr.size == 0:
        return np.empty((0, 2), dtype=np.int64), 0, 0
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"edge array must have shape (M, 2), got {arr.shape}")
    if arr.min() < 0 or arr.max() >= vertex_count:
        raise ValueError("edge endpoint out of range for vertex_count "
                         f"{vertex_count}")
    loops = arr[:, 0] == arr[:, 1]
    n_loops = int(loops.sum())
    arr = arr[~loops]
    if not directed:
        arr = np.sort(arr, axis=1)
    keys = arr[:, 0] * vertex_count + arr[:, 1]
    uniq, idx = np.unique(keys, return_index=True)
    n_dup = len(arr) - len(uniq)
    arr = arr[np.sort(idx)]
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    return np.ascontiguousarray(arr[order]), n_loops, n_dup


class Graph:
    """Immutable simple graph with dense vertex ids ``0..vertex_count-1``."""

    def __init__(self, vertex_count: int, edges, directed: bool = False, *,
                 _clean: bool = False):
        if vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        self._n = int(vertex_count)
        self._directed = bool(directed)
        if _clean:
            self._edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
            self.dropped_self_loops = 0
            self.dropped_duplicates = 0
        else:
            self._edges, self.dropped_self_loops, self.dropped_duplicates = \
                _canonical_edges(self._n, edges, self._directed)
        self._edges.setflags(write=False)
        self._edge_keys = self._edges[:, 0] * max(self._n, 1) + self._edges[:, 1]
        self._edge_keys.setflags(write=False)
        if self._directed:
            self._out_deg = np.bincount(self._edges[:, 0], minlength=self._n)
            self._in_deg = np.bincount(self._edges[:, 1], minlength=self._n)
            self._out_deg.setflags(write=False)
            self._in_deg.setflags(write=False)
            self._deg = None
        else:
            self._deg = np.bincount(self._edges.ravel(), minlength=self._n)
            self._deg.setflags(write=False)
            self._out_deg = self._in_deg = None
        self._csr_cache = None

    # -- basic accessors ---------------------------------------------------

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def directed(self) -> bool:
        return self._directed

    @property
    def edges(self) -> np.ndarray:
        """Canonically ordered ``(M, 2)`` edge array (read-only)."""
        return self._edges

    def degrees(self):
        """Degree array; for directed graphs the ``(in, out)`` array pair."""
        if self._directed:
            return self._in_deg, self._out_deg
        return self._deg

    def degree(self, v: int):
        """Degree of ``v``; for directed graphs the ``(in, out)`` pair."""
        self._check_vertex(v)
        if self._directed:
            return int(self._in_deg[v]), int(self._out_deg[v])
        return int(self._deg[v])

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise ValueError(f"vertex id {v} out of range [0, {self._n})")

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            return False
        if not self._directed and u > v:
            u, v = v, u
        key = u * max(self._n, 1) + v
        i = np.searchsorted(self._edge_keys, key)
        return i < len(self._edge_keys) and self._edge_keys[i] == key

    # -- adjacency ---------------------------------------------------------

    def adjacency(self):
        """Undirected-view CSR adjacency ``(indptr, heads, edge_ids)``.

        Directed graphs are symmetrized (each arc contributes both ways);
        ``edge_ids`` maps every stored arc back to its row in ``edges``.
        """
        if self._csr_cache is None:
            m = len(self._edges)
            u, v = self._edges[:, 0], self._edges[:, 1]
            tails = np.concatenate([u, v])
            heads = np.concatenate([v, u])
            eids = np.concatenate([np.arange(m), np.arange(m)])
            order = np.argsort(tails, kind="stable")
            heads = heads[order]
            eids = eids[order]
            indptr = np.zeros(self._n + 1, dtype=np.int64)
            np.add.at(indptr, tails + 1, 1)
            indptr = np.cumsum(indptr)
            heads.setflags(write=False)
            eids.setflags(write=False)
            indptr.setflags(write=False)
            self._csr_cache = (indptr, heads, eids)
        return self._csr_cache

    def neighbors(self, v: int) -> np.ndarray:
        """Neighbors of ``v`` in the undirected view (read-only array)."""
        self._check_vertex(v)
        indptr, heads, _ = self.adjacency()
        return heads[indptr[v]:indptr[v + 1]]

    def subgraph(self, vertices) -> tuple["Graph", np.ndarray]:
        """Induced subgraph on ``vertices``; returns it with the old-id map."""
        keep = np.asarray(sorted(vertices), dtype=np.int64)
        new_id = np.full(self._n, -1, dtype=np.int64)
        new_id[keep] = np.arange(len(keep))
        mask = (new_id[self._edges[:, 0]] >= 0) & (new_id[self._edges[:, 1]] >= 0)
        sub_edges = new_id[self._edges[mask]]
        return Graph(len(keep), sub_edges, self._directed), keep

    def __repr__(self):
        kind = "directed" if self._directed else "undirected"
        return f"Graph({kind}, n={self._n}, m={self.edge_count})"


def largest_connected_component(g: Graph) -> set[int]:
    """Vertex set of the largest (weakly) connected component.

    Ties are broken in favor of the component containing the smallest
    vertex id.  The empty graph yields the empty set.
    """
    if g.vertex_count == 0:
        return set()
    if g.edge_count == 0:
        return {0}
    mat = csr_matrix((np.ones(g.edge_count, dtype=np.int8),
                      (g.edges[:, 0], g.edges[:, 1])),
                     shape=(g.vertex_count, g.vertex_count))
    _, labels = connected_components(mat, directed=False)
    sizes = np.bincount(labels)
    winners = np.flatnonzero(sizes == sizes.max())
    first_vertex = np.flatnonzero(np.isin(labels, winners))[0]
    return set(np.flatnonzero(labels == labels[first_vertex]).tolist())


def hop_distances(g: Graph, source: int, targets) -> dict[int, float]:
    """BFS hop distances from ``source`` to each vertex in ``targets``.

    Edge directions are ignored.  Unreachable targets map to ``math.inf``.
    The search stops as soon as every target has been resolved.
    """
    g._check_vertex(source)
    targets = set(int(t) for t in targets)
    for t in targets:
        g._check_vertex(t)
    out = {t: math.inf for t in targets}
    pending = set(targets)
    if source in pending:
        out[source] = 0
        pending.discard(source)
    if not pending:
        return out
    indptr, heads, _ = g.adjacency()
    dist = np.full(g.vertex_count, -1, dtype=np.int64)
    dist[source] = 0
    frontier = [source]
    d = 0
    while frontier and pending:
        d += 1
        nxt = []
        for v in frontier:
            for w in heads[indptr[v]:indptr[v + 1]]:
                w = int(w)
                if dist[w] < 0:
                    dist[w] = d
                    nxt.append(w)
                    if w in pending:
                        out[w] = d
                        pending.discard(w)
        frontier = nxt
    return out


def collapse_to_undirected(g: Graph) -> Graph:
    """Undirected simplification: reciprocal arc pairs become one edge."""
    if not g.directed:
        raise ValueError("collapse_to_undirected expects a directed graph")
    return Graph(g.vertex_count, g.edges, directed=False)
