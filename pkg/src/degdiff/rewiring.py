"""Degree-preserving rewiring: assortativity climbing and GA-constrained
randomization.

Both procedures swap pairs of edges, which leaves every vertex degree
untouched; the excess-degree moments are therefore constants of the run and
GA updates reduce to the change in the endpoint excess-degree product sum,
an O(1) quantity per swap.  Tests cross-check the incremental GA against a
full recomputation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import Graph
from .assortativity import global_assortativity

__all__ = ["RewireOutcome", "assortative_rewire", "constrained_randomize"]


@dataclass
class RewireOutcome:
    """Result of a rewiring run; degree sequence always equals the input's."""

    graph: Graph
    accepted_steps: int
    attempted_steps: int
    ga_trajectory: list[float] = field(default_factory=list)
    budget_exhausted: bool = False


class _SwapState:
    """Mutable edge pool with O(1) pick/replace and incremental GA."""

    def __init__(self, g: Graph):
        if g.directed:
            raise ValueError("rewiring operates on undirected graphs")
        if g.edge_count < 2:
            raise ValueError("need at least two edges")
        self.n = g.vertex_count
        self.deg = g.degrees().astype(np.int64)
        self.excess = (self.deg - 1).astype(np.float64)
        self.edges: list[tuple[int, int]] = [(int(u), int(v)) for u, v in g.edges]
        self.edge_set = {frozenset(e) for e in self.edges}
        m = g.edge_count
        x = self.excess[g.edges[:, 0]]
        y = self.excess[g.edges[:, 1]]
        self.m = m
        self.mu = float((x.sum() + y.sum()) / (2 * m))
        self.var = float((np.dot(x, x) + np.dot(y, y)) / (2 * m) - self.mu ** 2)
        self.prod_sum = float(np.dot(x, y))

    def ga(self, prod_sum: float | None = None) -> float:
        p = self.prod_sum if prod_sum is None else prod_sum
        return (p / self.m - self.mu ** 2) / self.var

    def pick_two_disjoint(self, rng, tries: int = 200):
        """Two random distinct edges with four distinct endpoints, or None."""
        for _ in range(tries):
            i1 = int(rng.integers(self.m))
            i2 = int(rng.integers(self.m))
            if i1 == i2:
                continue
            v, u = self.edges[i1]
            w, z = self.edges[i2]
            if len({v, u, w, z}) == 4:
                return i1, i2
        return None

    def replace(self, i1, i2, new1, new2):
        old1 = frozenset(self.edges[i1])
        old2 = frozenset(self.edges[i2])
        self.edge_set.discard(old1)
        self.edge_set.discard(old2)
        self.edge_set.add(frozenset(new1))
        self.edge_set.add(frozenset(new2))
        self.edges[i1] = new1
        self.edges[i2] = new2

    def prod_delta(self, drop1, drop2, add1, add2) -> float:
        e = self.excess
        return (e[add1[0]] * e[add1[1]] + e[add2[0]] * e[add2[1]]
                - e[drop1[0]] * e[drop1[1]] - e[drop2[0]] * e[drop2[1]])

    def collides(self, i1, i2, new1, new2) -> bool:
        """Would either replacement edge duplicate a surviving edge?

        Re-creating one of the two edges being removed is not a collision
        (the swap is then partially a no-op); the replacement pair itself is
        always disjoint because the four endpoints are distinct.
        """
        old1 = frozenset(self.edges[i1])
        old2 = frozenset(self.edges[i2])
        for f in (frozenset(new1), frozenset(new2)):
            if f in self.edge_set and f != old1 and f != old2:
                return True
        return False

    def graph(self) -> Graph:
        return Graph(self.n, np.array(self.edges, dtype=np.int64))


def _check_degrees_preserved(state: _SwapState, g: Graph) -> None:
    after = np.zeros(state.n, dtype=np.int64)
    for u, v in state.edges:
        after[u] += 1
        after[v] += 1
    if not np.array_equal(after, g.degrees()):
        raise AssertionError("rewiring corrupted the degree sequence")


def assortative_rewire(g: Graph, steps: int, seed=0) -> RewireOutcome:
    """Greedy assortativity climbing.

    Each step draws two disjoint edges, relabels their four endpoints by
    decreasing degree (degree ties settled by a seeded coin), pairs the top
    two and the bottom two, and keeps the change only if GA strictly
    increases.  Replacement edges that already exist discard the attempt.
    Degrees never change, so the endpoint ranking uses the input degrees.
    """
    if steps < 1:
        raise ValueError("steps must be positive")
    state = _SwapState(g)
    if state.var <= 0.0:
        raise ValueError("GA undefined on a regular graph (zero excess-degree variance)")
    rng = np.random.Generator(np.random.PCG64(seed))
    trajectory: list[float] = []
    accepted = 0
    for _ in range(steps):
        picked = state.pick_two_disjoint(rng)
        if picked is None:
            continue
        i1, i2 = picked
        v, u = state.edges[i1]
        w, z = state.edges[i2]
        quad = sorted((v, u, w, z),
                      key=lambda t: (-int(state.deg[t]), rng.random()))
        new1 = (quad[0], quad[1])
        new2 = (quad[2], quad[3])
        if state.collides(i1, i2, new1, new2):
            continue
        delta = state.prod_delta((v, u), (w, z), new1, new2)
        if delta > 0.0:
            state.replace(i1, i2, new1, new2)
            state.prod_sum += delta
            accepted += 1
            trajectory.append(state.ga())
    out = state.graph()
    _check_degrees_preserved(state, g)
    return RewireOutcome(out, accepted, steps, trajectory)


def constrained_randomize(g: Graph, target_swaps: int,
                          ga_tolerance: float = 0.025, seed=0,
                          attempt_factor: int = 100) -> RewireOutcome:
    """Double-edge-swap randomization holding GA near the input's value.

    Swaps re-pair two random disjoint edges (uniform coin between the two
    pairings, self-loops and duplicates rejected) and are accepted only
    while |GA_new - GA_input| <= ga_tolerance.  Stops after ``target_swaps``
    acceptances or when ``attempt_factor * target_swaps`` attempts are
    exhausted, whichever comes first; exhaustion with zero acceptances is
    flagged rather than raised.
    """
    if target_swaps < 1:
        raise ValueError("target_swaps must be positive")
    if ga_tolerance <= 0.0:
        raise ValueError("ga_tolerance must be positive")
    state = _SwapState(g)
    if state.var <= 0.0:
        raise ValueError("GA undefined on a regular graph (zero excess-degree variance)")
    rng = np.random.Generator(np.random.PCG64(seed))
    ga_origin = state.ga()
    trajectory: list[float] = []
    accepted = 0
    attempts = 0
    budget = attempt_factor * target_swaps
    while accepted < target_swaps and attempts < budget:
        attempts += 1
        picked = state.pick_two_disjoint(rng)
        if picked is None:
            continue
        i1, i2 = picked
        v, u = state.edges[i1]
        w, z = state.edges[i2]
        if rng.random() < 0.5:
            new1, new2 = (v, w), (u, z)
        else:
            new1, new2 = (v, z), (u, w)
        if state.collides(i1, i2, new1, new2):
            continue
        delta = state.prod_delta((v, u), (w, z), new1, new2)
        if abs(state.ga(state.prod_sum + delta) - ga_origin) <= ga_tolerance:
            state.replace(i1, i2, new1, new2)
            state.prod_sum += delta
            accepted += 1
            trajectory.append(state.ga())
    out = state.graph()
    _check_degrees_preserved(state, g)
    return RewireOutcome(out, accepted, attempts, trajectory,
                         budget_exhausted=(accepted < target_swaps))


def recomputed_ga(outcome: RewireOutcome) -> float | None:
    """Full GA recomputation on the outcome graph (cross-check hook)."""
    return global_assortativity(outcome.graph)
