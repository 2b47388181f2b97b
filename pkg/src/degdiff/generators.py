"""Seeded random-graph generators: ER, WS, BA and RG families.

Reproducibility contract: every generator is a pure function of its
parameters and seed.  Randomness comes from numpy's PCG64 generator; an
ensemble member ``i`` uses ``SeedSequence(base_seed, spawn_key=(i,))`` so
ensembles replicate bit-for-bit across machines and worker counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .graph import Graph

__all__ = ["EnsembleSpec", "gen_er", "gen_ws", "gen_ba", "gen_rg", "generate"]

FAMILIES = ("er", "ws", "ba", "rg")


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def _pair_from_linear(idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Decode linear pair index into (i, j), i < j.

    Pairs are enumerated grouped by their larger endpoint j: indices
    [j(j-1)/2, j(j+1)/2) belong to j, offset giving i.
    """
    j = np.floor((1.0 + np.sqrt(1.0 + 8.0 * idx.astype(np.float64))) / 2.0).astype(np.int64)
    # guard against float rounding at block boundaries
    j = np.where(j * (j - 1) // 2 > idx, j - 1, j)
    j = np.where((j + 1) * j // 2 <= idx, j + 1, j)
    i = idx - j * (j - 1) // 2
    return i, j


def gen_er(n: int, p: float, seed) -> Graph:
    """Erdos-Renyi G(n, p): each of the C(n,2) pairs appears independently.

    Uses geometric skip-sampling over the linearized pair index, so the cost
    is proportional to the number of edges generated, not to C(n,2).
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        return Graph(n, [], directed=False)
    if p == 1.0:
        i, j = _pair_from_linear(np.arange(total))
        return Graph(n, np.column_stack([i, j]), directed=False)
    rng = _rng(seed)
    chunk = max(64, int(p * total * 1.2) + 16)
    positions = []
    last = -1
    while last < total:
        skips = rng.geometric(p, size=chunk)
        pos = last + np.cumsum(skips)
        positions.append(pos)
        last = int(pos[-1])
    pos = np.concatenate(positions)
    pos = pos[pos < total]
    i, j = _pair_from_linear(pos)
    return Graph(n, np.column_stack([i, j]), directed=False)


def gen_ws(n: int, k: int, beta_rewire: float, seed) -> Graph:
    """Watts-Strogatz: ring lattice with k nearest neighbours, then each
    edge's far endpoint is rewired with probability beta_rewire.

    Rewiring draws a uniform replacement endpoint, redrawing on self-loops
    and collisions; edge count is exactly n*k/2 in all cases.
    """
    if k % 2 != 0 or not 0 < k < n:
        raise ValueError("k must be even and satisfy 0 < k < n")
    if not 0.0 <= beta_rewire <= 1.0:
        raise ValueError("beta_rewire must lie in [0, 1]")
    rng = _rng(seed)
    # edges stay (near, far) oriented: the far endpoint is the rewired one
    edges = [(i, (i + j) % n) for j in range(1, k // 2 + 1) for i in range(n)]
    edge_set = {frozenset(e) for e in edges}
    if beta_rewire > 0.0:
        for idx, (u, v) in enumerate(edges):
            if rng.random() >= beta_rewire:
                continue
            for _ in range(8 * n):
                w = int(rng.integers(n))
                if w != u and frozenset((u, w)) not in edge_set:
                    break
            else:
                continue  # u is saturated; keep the original edge
            edge_set.discard(frozenset((u, v)))
            edge_set.add(frozenset((u, w)))
            edges[idx] = (u, w)
    return Graph(n, np.array(edges, dtype=np.int64), directed=False)


def gen_ba(n: int, beta_attach: int, seed) -> Graph:
    """Barabasi-Albert preferential attachment.

    The seed core is a star on beta_attach+1 vertices (center 0); every
    later vertex attaches beta_attach edges to distinct existing vertices
    drawn with probability proportional to degree (repeated draws, in-step
    duplicates rejected).
    """
    if not 1 <= beta_attach < n:
        raise ValueError("beta_attach must satisfy 1 <= beta_attach < n")
    rng = _rng(seed)
    m_total = beta_attach + beta_attach * (n - beta_attach - 1)
    edges = np.empty((m_total, 2), dtype=np.int64)
    # one entry per unit of degree; drawing uniformly from it is
    # degree-proportional sampling
    endpoint_pool = np.empty(2 * m_total, dtype=np.int64)
    m = 0
    for leaf in range(1, beta_attach + 1):
        edges[m] = (0, leaf)
        endpoint_pool[2 * m] = 0
        endpoint_pool[2 * m + 1] = leaf
        m += 1
    for v in range(beta_attach + 1, n):
        targets: set[int] = set()
        while len(targets) < beta_attach:
            draws = rng.integers(0, 2 * m, size=beta_attach - len(targets))
            targets.update(int(t) for t in endpoint_pool[draws])
        for t in sorted(targets):
            edges[m] = (t, v)
            endpoint_pool[2 * m] = t
            endpoint_pool[2 * m + 1] = v
            m += 1
    return Graph(n, edges, directed=False)


def gen_rg(n: int, eps: float, seed) -> Graph:
    """Random geometric graph on the unit square (no torus wrap).

    Vertices are uniform points; an edge joins every pair at Euclidean
    distance <= eps.
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    rng = _rng(seed)
    pos = rng.random((n, 2))
    pairs = cKDTree(pos).query_pairs(r=eps, output_type="ndarray")
    if len(pairs):
        pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
    return Graph(n, pairs, directed=False)


_GENERATORS = {
    "er": (gen_er, ("n", "p")),
    "ws": (gen_ws, ("n", "k", "beta_rewire")),
    "ba": (gen_ba, ("n", "beta_attach")),
    "rg": (gen_rg, ("n", "eps")),
}


def generate(family: str, params: dict, seed) -> Graph:
    """Dispatch a single graph by family name."""
    if family not in _GENERATORS:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    fn, names = _GENERATORS[family]
    missing = [k for k in names if k not in params]
    if missing:
        raise ValueError(f"family {family!r} missing parameters {missing}")
    return fn(*(params[k] for k in names), seed)


@dataclass
class EnsembleSpec:
    """A reproducible Monte Carlo ensemble of one generator family."""

    family: str
    params: dict = field(default_factory=dict)
    sample_count: int = 50
    base_seed: int = 0

    def __post_init__(self):
        if self.family not in _GENERATORS:
            raise ValueError(f"unknown family {self.family!r}")
        if self.sample_count < 1:
            raise ValueError("sample_count must be positive")
        # validate parameters eagerly by family rules
        p = self.params
        if self.family == "er":
            if not 0.0 <= p["p"] <= 1.0:
                raise ValueError("er: p must lie in [0, 1]")
        elif self.family == "ws":
            if p["k"] % 2 != 0 or not 0 < p["k"] < p["n"]:
                raise ValueError("ws: k must be even with 0 < k < n")
            if not 0.0 <= p["beta_rewire"] <= 1.0:
                raise ValueError("ws: beta_rewire must lie in [0, 1]")
        elif self.family == "ba":
            if not 1 <= p["beta_attach"] < p["n"]:
                raise ValueError("ba: need 1 <= beta_attach < n")
        elif self.family == "rg":
            if p["eps"] <= 0.0:
                raise ValueError("rg: eps must be positive")

    def seed_for(self, i: int) -> np.random.SeedSequence:
        """Deterministic child seed of sample ``i``."""
        if not 0 <= i < self.sample_count:
            raise ValueError("sample index out of range")
        return np.random.SeedSequence(entropy=self.base_seed, spawn_key=(i,))

    def sample(self, i: int) -> Graph:
        return generate(self.family, self.params, self.seed_for(i))

    def __iter__(self):
        for i in range(self.sample_count):
            yield self.sample(i)
