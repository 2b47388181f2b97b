"""Reverse edge percolation and minimum-edge-cut analysis.

Percolation deletes edges in a measure-determined order from a private copy
of the graph and records the normalized largest-connected-component size at
requested fractions.  Ties in the ordering are broken by a seeded shuffle
(degree-difference values are small integers, so ties are everywhere and
edge-id order would leak generator artifacts).

The global minimum edge cut is computed exactly: fix a source, take the
minimum s-t max-flow over all other vertices, and read the cut off the
residual graph.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components, maximum_flow
from scipy.stats import rankdata

from .graph import Graph, largest_connected_component
from .measures import compute_measure

__all__ = [
    "ORDERINGS",
    "PercolationTrace",
    "PercolationEnsemble",
    "percolate",
    "aggregate_traces",
    "min_edge_cut",
    "MecPercentiles",
    "mec_percentiles",
]

# ordering name -> (measure, sort sign); sign +1 removes smallest first
ORDERINGS = {
    "dd_asc": ("dd", 1),
    "dd_desc": ("dd", -1),
    "rf_asc": ("forman_ricci", 1),
    "ro_asc": ("ollivier_ricci", 1),
    "ebw_desc": ("edge_betweenness", -1),
    "random": (None, 0),
}

# measures that are functions of endpoint degrees only; these support cheap
# incremental re-ranking during recompute-mode percolation
_DEGREE_LOCAL = {"dd", "forman_ricci"}


@dataclass(frozen=True)
class PercolationTrace:
    """One percolation run: normalized LCC size at each removed fraction."""

    removed_fraction: np.ndarray
    lcc_normalized: np.ndarray


@dataclass(frozen=True)
class PercolationEnsemble:
    """Mean/std aggregation of equally-checkpointed percolation runs."""

    removed_fraction: np.ndarray
    mean: np.ndarray
    std: np.ndarray
    sample_count: int


def aggregate_traces(traces: list[PercolationTrace]) -> PercolationEnsemble:
    if not traces:
        raise ValueError("no traces to aggregate")
    base = traces[0].removed_fraction
    for t in traces[1:]:
        if not np.array_equal(t.removed_fraction, base):
            raise ValueError("traces must share identical checkpoints")
    stack = np.vstack([t.lcc_normalized for t in traces])
    return PercolationEnsemble(base, stack.mean(axis=0), stack.std(axis=0),
                               len(traces))


def _lcc_size(n: int, edges: np.ndarray) -> int:
    if len(edges) == 0:
        return 1 if n else 0
    mat = csr_matrix((np.ones(len(edges), dtype=np.int8),
                      (edges[:, 0], edges[:, 1])), shape=(n, n))
    _, labels = connected_components(mat, directed=False)
    return int(np.bincount(labels).max())


def _static_order(g: Graph, measure: str | None, sign: int,
                  rng: np.random.Generator, idleness: float) -> np.ndarray:
    perm = rng.permutation(g.edge_count)
    if measure is None:
        return perm
    values = compute_measure(g, measure, idleness)
    return perm[np.argsort(sign * values[perm], kind="stable")]


def _recomputed_order(g: Graph, measure: str, sign: int,
                      rng: np.random.Generator, idleness: float) -> np.ndarray:
    """Removal order with the measure re-ranked after every deletion."""
    m = g.edge_count
    edges = g.edges
    alive = np.ones(m, dtype=bool)
    order = np.empty(m, dtype=np.int64)

    if measure in _DEGREE_LOCAL:
        deg = g.degrees().astype(np.int64).copy()
        incident: list[list[int]] = [[] for _ in range(g.vertex_count)]
        for i, (u, v) in enumerate(edges):
            incident[u].append(i)
            incident[v].append(i)

        def key_of(i: int) -> float:
            u, v = edges[i]
            if measure == "dd":
                return sign * abs(int(deg[u]) - int(deg[v]))
            return sign * (4 - int(deg[u]) - int(deg[v]))

        version = np.zeros(m, dtype=np.int64)
        heap = [(key_of(i), rng.random(), i, 0) for i in range(m)]
        heapq.heapify(heap)
        for step in range(m):
            while True:
                key, _, i, ver = heapq.heappop(heap)
                if alive[i] and ver == version[i]:
                    break
            alive[i] = False
            order[step] = i
            u, v = edges[i]
            deg[u] -= 1
            deg[v] -= 1
            for w in (int(u), int(v)):
                for jj in incident[w]:
                    if alive[jj]:
                        version[jj] += 1
                        heapq.heappush(heap, (key_of(jj), rng.random(), jj,
                                              int(version[jj])))
        return order

    # global measures: recompute over the whole remaining graph every step
    for step in range(m):
        live_ids = np.flatnonzero(alive)
        sub = Graph(g.vertex_count, edges[live_ids], directed=False)
        values = compute_measure(sub, measure, idleness)
        tiebreak = rng.random(len(values))
        pick = np.lexsort((tiebreak, sign * values))[0]
        i = int(live_ids[pick])
        alive[i] = False
        order[step] = i
    return order


def percolate(g: Graph, ordering: str, checkpoints=None, *,
              recompute: bool = False, seed=0, idleness: float = 0.0
              ) -> PercolationTrace:
    """Reverse edge percolation under one removal ordering.

    Parameters
    ----------
    g : undirected Graph
    ordering : one of ``ORDERINGS`` ("dd_asc", "dd_desc", "rf_asc",
        "ro_asc", "ebw_desc", "random")
    checkpoints : ascending fractions in [0, 1] at which the normalized LCC
        size is recorded (default: 0.00, 0.05, ..., 1.00)
    recompute : re-rank the measure after every removal instead of ranking
        once on the intact graph.  Degree-local measures update
        incrementally; global ones recompute fully per removal (expensive).
    seed : drives the tie-breaking shuffle (and the "random" ordering)
    idleness : passed through to the Ollivier-Ricci measure
    """
    if g.directed:
        raise ValueError("percolation runs on undirected graphs")
    if ordering not in ORDERINGS:
        raise ValueError(f"unknown ordering {ordering!r}; expected one of "
                         f"{sorted(ORDERINGS)}")
    if checkpoints is None:
        checkpoints = np.linspace(0.0, 1.0, 21)
    checkpoints = np.asarray(checkpoints, dtype=np.float64)
    if np.any(checkpoints < 0) or np.any(checkpoints > 1) or \
            np.any(np.diff(checkpoints) < 0):
        raise ValueError("checkpoints must be ascending fractions in [0, 1]")
    measure, sign = ORDERINGS[ordering]
    rng = np.random.Generator(np.random.PCG64(seed))
    if measure is None or not recompute:
        order = _static_order(g, measure, sign, rng, idleness)
    else:
        order = _recomputed_order(g, measure, sign, rng, idleness)
    n, m = g.vertex_count, g.edge_count
    lcc = np.empty(len(checkpoints))
    for ci, f in enumerate(checkpoints):
        k = int(round(f * m))
        lcc[ci] = _lcc_size(n, g.edges[order[k:]]) / n
    return PercolationTrace(checkpoints, lcc)


# -- minimum edge cut --------------------------------------------------------


def min_edge_cut(g: Graph) -> set[tuple[int, int]]:
    """One globally minimum edge cut of a connected undirected graph.

    Exact: the global cut separates a fixed source from some vertex, so the
    smallest s-t max-flow over all t realizes it; the cut set is read off
    the final residual graph.  The cut's size is unique, the set need not be.
    """
    if g.directed:
        raise ValueError("min_edge_cut expects an undirected graph")
    n, m = g.vertex_count, g.edge_count
    if n < 2:
        raise ValueError("min_edge_cut needs at least two vertices")
    u, v = g.edges[:, 0], g.edges[:, 1]
    cap = csr_matrix((np.ones(2 * m, dtype=np.int32),
                      (np.concatenate([u, v]), np.concatenate([v, u]))),
                     shape=(n, n), dtype=np.int32)
    ncomp, _ = connected_components(cap, directed=False)
    if ncomp != 1:
        raise ValueError("min_edge_cut requires a connected graph; pass the LCC")
    best_t, best_val = -1, None
    for t in range(1, n):
        val = maximum_flow(cap, 0, t).flow_value
        if best_val is None or val < best_val:
            best_val, best_t = val, t
            if best_val == 1:
                break
    flow = maximum_flow(cap, 0, best_t).flow
    residual = cap - flow
    residual.data = (residual.data > 0).astype(np.int32)
    residual.eliminate_zeros()
    reach = breadth_first_order(residual, 0, directed=True,
                                return_predecessors=False)
    side = np.zeros(n, dtype=bool)
    side[reach] = True
    crossing = side[g.edges[:, 0]] != side[g.edges[:, 1]]
    cut = {(int(a), int(b)) for a, b in g.edges[crossing]}
    if len(cut) != best_val:
        raise AssertionError("residual cut size disagrees with max-flow value")
    keep = g.edges[~crossing]
    ncomp_after, _ = connected_components(
        csr_matrix((np.ones(len(keep), dtype=np.int8),
                    (keep[:, 0], keep[:, 1])), shape=(n, n)), directed=False)
    if ncomp_after < 2:
        raise AssertionError("removing the computed cut failed to disconnect")
    return cut


@dataclass(frozen=True)
class MecPercentiles:
    """Percentile ranks of one graph's MEC edges under one measure."""

    measure_name: str
    percentiles: list[float]


def mec_percentiles(g: Graph, measure: str, idleness: float = 0.0
                    ) -> MecPercentiles:
    """Percentile rank of every minimum-cut edge of the LCC.

    Ranks use the mean-rank tie convention scaled so the smallest possible
    rank maps to 0, the largest to 100, and a constant measure to exactly 50.
    """
    lcc = largest_connected_component(g)
    sub, _ = g.subgraph(lcc)
    if sub.vertex_count < 2:
        raise ValueError("LCC has fewer than two vertices")
    cut = min_edge_cut(sub)
    values = compute_measure(sub, measure, idleness)
    m = sub.edge_count
    if m == 1:
        pct = np.array([50.0])
    else:
        ranks = rankdata(values, method="average")
        pct = (ranks - 1.0) / (m - 1.0) * 100.0
    index = {(int(a), int(b)): i for i, (a, b) in enumerate(sub.edges)}
    return MecPercentiles(measure, sorted(float(pct[index[e]]) for e in cut))
