"""Edge-based network measures and their cross-correlation.

Degree difference (DD) of an undirected edge {v,u} is |deg(v) - deg(u)|;
its directed variant (diDD) for an edge (v,u) is out-deg(u) - in-deg(v).
Alongside live the comparison measures: unweighted Forman-Ricci curvature
(4 minus the endpoint degree sum), Ollivier-Ricci curvature (1 minus the
Wasserstein-1 distance between endpoint neighbour measures, solved as an
exact transportation LP), and Brandes-style edge betweenness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog
from scipy.stats import rankdata

from .graph import Graph, collapse_to_undirected, hop_distances

__all__ = [
    "Pmf",
    "EdgeMeasureTable",
    "dd",
    "didd",
    "dd_values",
    "didd_values",
    "dd_distribution",
    "forman_ricci",
    "forman_values",
    "ollivier_ricci",
    "ollivier_values",
    "edge_betweenness",
    "measure_correlation",
    "compute_measure",
    "MEASURE_NAMES",
]

MEASURE_NAMES = ("dd", "didd", "forman_ricci", "ollivier_ricci", "edge_betweenness")


@dataclass(frozen=True)
class Pmf:
    """Probability mass function on integers, support ascending."""

    support: np.ndarray
    probabilities: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.support, dtype=np.int64)
        p = np.asarray(self.probabilities, dtype=np.float64)
        if s.shape != p.shape or s.ndim != 1:
            raise ValueError("support and probabilities must be equal-length 1-d arrays")
        if len(s) and np.any(np.diff(s) <= 0):
            raise ValueError("support must be strictly ascending")
        if np.any(p < -1e-15):
            raise ValueError("probabilities must be non-negative")
        object.__setattr__(self, "support", s)
        object.__setattr__(self, "probabilities", p)

    @classmethod
    def from_values(cls, values) -> "Pmf":
        vals = np.asarray(values, dtype=np.int64)
        if vals.size == 0:
            raise ValueError("cannot build a PMF from no values")
        support, counts = np.unique(vals, return_counts=True)
        return cls(support, counts / counts.sum())

    def probability(self, d: int) -> float:
        i = np.searchsorted(self.support, d)
        if i < len(self.support) and self.support[i] == d:
            return float(self.probabilities[i])
        return 0.0

    def first_moment(self) -> float:
        return float(np.dot(self.support, self.probabilities))

    def total_variation(self, other: "Pmf") -> float:
        """Half the L1 distance, aligning supports."""
        lo = min(self.support.min(initial=0), other.support.min(initial=0))
        hi = max(self.support.max(initial=0), other.support.max(initial=0))
        a = np.zeros(hi - lo + 1)
        b = np.zeros(hi - lo + 1)
        a[self.support - lo] = self.probabilities
        b[other.support - lo] = other.probabilities
        return 0.5 * float(np.abs(a - b).sum())

    def as_dict(self) -> dict[int, float]:
        return {int(d): float(p) for d, p in zip(self.support, self.probabilities)}


@dataclass(frozen=True)
class EdgeMeasureTable:
    """Per-edge values of one measure, aligned with ``graph.edges`` order."""

    measure_name: str
    edges: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if len(self.edges) != len(self.values):
            raise ValueError("one value per edge required")

    def as_dict(self) -> dict[tuple[int, int], float]:
        return {(int(u), int(v)): float(x)
                for (u, v), x in zip(self.edges, self.values)}


# -- degree difference ---------------------------------------------------


def _edge_index(g: Graph, e) -> int:
    u, v = int(e[0]), int(e[1])
    if not g.has_edge(u, v):
        raise ValueError(f"edge {(u, v)} not in graph")
    if not g.directed and u > v:
        u, v = v, u
    key = u * max(g.vertex_count, 1) + v
    return int(np.searchsorted(g._edge_keys, key))


def dd_values(g: Graph) -> np.ndarray:
    """DD of every edge of an undirected graph, in edge order."""
    if g.directed:
        raise ValueError("dd is defined on undirected graphs; collapse first")
    deg = g.degrees()
    return np.abs(deg[g.edges[:, 0]] - deg[g.edges[:, 1]])


def dd(g: Graph, e) -> int:
    """Absolute endpoint degree difference of one edge."""
    return int(dd_values(g)[_edge_index(g, e)])


def didd_values(g: Graph) -> np.ndarray:
    """diDD of every directed edge (v,u): out-deg(u) - in-deg(v)."""
    if not g.directed:
        raise ValueError("didd requires a directed graph")
    in_deg, out_deg = g.degrees()
    return out_deg[g.edges[:, 1]] - in_deg[g.edges[:, 0]]


def didd(g: Graph, e) -> int:
    return int(didd_values(g)[_edge_index(g, e)])


def dd_distribution(g: Graph, mode: str = "dd") -> Pmf:
    """Empirical PMF of DD (or diDD) over all edges, weight 1/M each.

    Directed graphs are collapsed to undirected for ``mode="dd"``; pass
    ``mode="didd"`` for the orientation-aware variant.
    """
    if g.edge_count == 0:
        raise ValueError("dd_distribution needs at least one edge")
    if mode == "dd":
        if g.directed:
            g = collapse_to_undirected(g)
        return Pmf.from_values(dd_values(g))
    if mode == "didd":
        return Pmf.from_values(didd_values(g))
    raise ValueError(f"unknown mode {mode!r}; expected 'dd' or 'didd'")


# -- curvatures ------------------------------------------------------------


def forman_values(g: Graph) -> np.ndarray:
    """Unweighted, unaugmented Forman-Ricci curvature 4 - deg(v) - deg(u)."""
    if g.directed:
        raise ValueError("forman_ricci is defined on undirected graphs")
    deg = g.degrees()
    return 4 - deg[g.edges[:, 0]] - deg[g.edges[:, 1]]


def forman_ricci(g: Graph, e) -> int:
    return int(forman_values(g)[_edge_index(g, e)])


_TRANSPORT_EQ_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _transport_constraints(a: int, b: int) -> np.ndarray:
    """Equality matrix of the a x b transportation LP (rows: sources+sinks)."""
    key = (a, b)
    mat = _TRANSPORT_EQ_CACHE.get(key)
    if mat is None:
        mat = np.zeros((a + b, a * b))
        for i in range(a):
            mat[i, i * b:(i + 1) * b] = 1.0
        for j in range(b):
            mat[a + j, j::b] = 1.0
        _TRANSPORT_EQ_CACHE[key] = mat
    return mat


def wasserstein_distance(mass_x: np.ndarray, mass_y: np.ndarray,
                         cost: np.ndarray) -> float:
    """Exact W1 between two finite measures via the transportation LP."""
    a, b = cost.shape
    res = linprog(cost.ravel(),
                  A_eq=_transport_constraints(a, b),
                  b_eq=np.concatenate([mass_x, mass_y]),
                  method="highs")
    if not res.success:
        raise RuntimeError(f"transport LP failed: {res.message}")
    return float(res.fun)


def _support_and_mass(g: Graph, v: int, idleness: float):
    nbrs = g.neighbors(v)
    if idleness > 0.0:
        support = np.concatenate([[v], nbrs])
        mass = np.concatenate([[idleness],
                               np.full(len(nbrs), (1.0 - idleness) / len(nbrs))])
    else:
        support = np.asarray(nbrs, dtype=np.int64)
        mass = np.full(len(nbrs), 1.0 / len(nbrs))
    return support, mass


def _ball3(g: Graph, x: int) -> dict[int, int]:
    """Distances from x to everything within 3 hops.

    Any two support points of one edge's transport problem are at most
    3 hops apart (neighbour - endpoint - endpoint - neighbour), so this
    truncated BFS resolves every ground distance the LP can ask for.
    """
    indptr, heads, _ = g.adjacency()
    dist = {x: 0}
    frontier = [x]
    for d in (1, 2, 3):
        nxt = []
        for v in frontier:
            for w in heads[indptr[v]:indptr[v + 1]]:
                w = int(w)
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def _cost_matrix(g: Graph, sup_x, sup_y, cache: dict | None) -> np.ndarray:
    cost = np.empty((len(sup_x), len(sup_y)), dtype=np.float64)
    for i, x in enumerate(sup_x):
        x = int(x)
        if cache is None:
            dists = hop_distances(g, x, [int(t) for t in sup_y])
        else:
            dists = cache.get(x)
            if dists is None:
                dists = cache[x] = _ball3(g, x)
        for j, y in enumerate(sup_y):
            cost[i, j] = dists[int(y)]
    return cost


def ollivier_ricci(g: Graph, e, idleness: float = 0.0,
                   _cache: dict | None = None) -> float:
    """Ollivier-Ricci curvature 1 - W1(m_v, m_u) of one edge.

    ``m_x`` puts ``idleness`` mass on x itself and spreads the rest uniformly
    over x's neighbours; the ground metric is hop distance and d(v,u) = 1.
    """
    if g.directed:
        raise ValueError("ollivier_ricci is defined on undirected graphs")
    if not 0.0 <= idleness < 1.0:
        raise ValueError("idleness must lie in [0, 1)")
    u, v = int(e[0]), int(e[1])
    if not g.has_edge(u, v):
        raise ValueError(f"edge {(u, v)} not in graph")
    sup_x, mass_x = _support_and_mass(g, u, idleness)
    sup_y, mass_y = _support_and_mass(g, v, idleness)
    cost = _cost_matrix(g, sup_x, sup_y, _cache)
    return 1.0 - wasserstein_distance(mass_x, mass_y, cost)


def ollivier_values(g: Graph, idleness: float = 0.0) -> np.ndarray:
    """Ollivier-Ricci curvature of every edge, sharing one distance cache."""
    cache: dict[int, dict[int, int]] = {}
    out = np.empty(g.edge_count, dtype=np.float64)
    for i, e in enumerate(g.edges):
        out[i] = ollivier_ricci(g, e, idleness, _cache=cache)
    return out


# -- edge betweenness ------------------------------------------------------


def edge_betweenness(g: Graph) -> EdgeMeasureTable:
    """Unnormalized edge betweenness over unordered vertex pairs.

    Brandes accumulation, vectorized level-by-level: each BFS level is
    processed with array operations instead of per-arc Python loops.
    """
    if g.directed:
        raise ValueError("edge_betweenness is defined on undirected graphs")
    n, m = g.vertex_count, g.edge_count
    indptr, heads, eids = g.adjacency()
    bw = np.zeros(m)
    for s in range(n):
        dist = np.full(n, -1, dtype=np.int64)
        sigma = np.zeros(n)
        dist[s] = 0
        sigma[s] = 1.0
        frontier = np.array([s], dtype=np.int64)
        level_arcs = []
        level = 0
        while frontier.size:
            starts = indptr[frontier]
            counts = indptr[frontier + 1] - starts
            total = int(counts.sum())
            if total == 0:
                break
            base = np.repeat(np.cumsum(counts) - counts, counts)
            pos = np.repeat(starts, counts) + (np.arange(total) - base)
            hs = heads[pos]
            ts = np.repeat(frontier, counts)
            es = eids[pos]
            undiscovered = dist[hs] == -1
            if undiscovered.any():
                dist[hs[undiscovered]] = level + 1
            mask = dist[hs] == level + 1
            if not mask.any():
                break
            tt, th, te = ts[mask], hs[mask], es[mask]
            sigma += np.bincount(th, weights=sigma[tt], minlength=n)
            level_arcs.append((tt, th, te))
            frontier = np.unique(th)
            level += 1
        delta = np.zeros(n)
        for tt, th, te in reversed(level_arcs):
            contrib = sigma[tt] / sigma[th] * (1.0 + delta[th])
            delta += np.bincount(tt, weights=contrib, minlength=n)
            bw += np.bincount(te, weights=contrib, minlength=m)
    # every unordered pair was counted from both endpoints
    return EdgeMeasureTable("edge_betweenness", g.edges, bw / 2.0)


# -- correlation -----------------------------------------------------------


def measure_correlation(t1: EdgeMeasureTable, t2: EdgeMeasureTable,
                        kind: str = "pearson") -> float | None:
    """Pearson or Spearman correlation of two tables over the same edges.

    Returns None when either vector has zero variance (the correlation is
    undefined there, never silently zero).
    """
    if len(t1.values) != len(t2.values) or not np.array_equal(t1.edges, t2.edges):
        raise ValueError("tables must cover the same edge set in the same order")
    if len(t1.values) < 2:
        raise ValueError("need at least two edges")
    x = np.asarray(t1.values, dtype=np.float64)
    y = np.asarray(t2.values, dtype=np.float64)
    if kind == "spearman":
        x = rankdata(x, method="average")
        y = rankdata(y, method="average")
    elif kind != "pearson":
        raise ValueError(f"unknown correlation kind {kind!r}")
    sx = x.std()
    sy = y.std()
    if sx == 0.0 or sy == 0.0:
        return None
    return float(((x - x.mean()) * (y - y.mean())).mean() / (sx * sy))


def compute_measure(g: Graph, name: str, idleness: float = 0.0) -> np.ndarray:
    """Uniform entry point used by the CLI and the percolation orderings."""
    if name == "dd":
        return dd_values(g).astype(np.float64)
    if name == "didd":
        return didd_values(g).astype(np.float64)
    if name == "forman_ricci":
        return forman_values(g).astype(np.float64)
    if name == "ollivier_ricci":
        return ollivier_values(g, idleness)
    if name == "edge_betweenness":
        return edge_betweenness(g).values
    raise ValueError(f"unknown measure {name!r}; expected one of {MEASURE_NAMES}")
