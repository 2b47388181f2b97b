"""Acceptance suite: every top-level behavioural guarantee, one test each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL line
per criterion with the measured numbers.  Runtime budgets are asserted where
a criterion states one.
"""

import time
from itertools import combinations

import numpy as np
import pytest

from degdiff import Graph, largest_connected_component
from degdiff.analytic import (ba_dd_pmf, er_dd_exact, er_dd_exact_pmf,
                              er_dd_poisson, er_dd_poisson_pmf)
from degdiff.assortativity import (degree_ga_collision_search,
                                   exact_assortativity, ga_double_sum,
                                   ga_from_joint, ga_pearson_pairs,
                                   global_assortativity, joint_degree_pmf,
                                   local_assortativity_vector)
from degdiff.generators import EnsembleSpec, gen_ba, gen_er, gen_rg, gen_ws
from degdiff.measures import (EdgeMeasureTable, Pmf, compute_measure,
                              dd_distribution, dd_values, edge_betweenness,
                              measure_correlation, ollivier_values,
                              wasserstein_distance)
from degdiff.rewiring import assortative_rewire, constrained_randomize
from degdiff.robustness import min_edge_cut, percolate

from test_measures import brute_edge_betweenness, brute_transport
from test_robustness import brute_min_cut_size_upto3, connected_random_graph


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


def _mean_pmf(pmfs, width: int) -> np.ndarray:
    acc = np.zeros(width)
    for p in pmfs:
        sub = p.probabilities[p.support < width]
        acc[p.support[p.support < width]] += sub
    return acc / len(pmfs)


def _tv(a: np.ndarray, b: np.ndarray) -> float:
    return 0.5 * float(np.abs(a - b).sum())


# -- analytic concordance -----------------------------------------------------


def test_er_exact_concordance_fig3a():
    t0 = time.time()
    n, p, samples, dlim = 200, 6 / 199, 2000, 18
    spec = EnsembleSpec("er", {"n": n, "p": p}, sample_count=samples,
                        base_seed=101)
    emp = _mean_pmf([dd_distribution(g) for g in spec], n)
    ana = er_dd_exact_pmf(n, p).probabilities
    tv = _tv(emp[: dlim + 1], ana[: dlim + 1])
    elapsed = time.time() - t0
    ok = tv <= 0.02 and elapsed <= 120
    _report("fig3a ER exact concordance", ok,
            f"TV(d<=18) = {tv:.5f} (<= 0.02), {samples} samples, "
            f"{elapsed:.0f}s (<= 120s)")
    assert tv <= 0.02
    assert elapsed <= 120


def test_er_poisson_empirical_concordance_fig3b():
    t0 = time.time()
    n, c, samples, dlim = 1000, 6.0, 500, 18
    spec = EnsembleSpec("er", {"n": n, "p": c / (n - 1)}, sample_count=samples,
                        base_seed=202)
    emp = _mean_pmf([dd_distribution(g) for g in spec], n)
    pois = er_dd_poisson_pmf(c, d_max=n - 2).probabilities[: n]
    width = max(len(emp), len(pois))
    tv = _tv(np.pad(emp, (0, width - len(emp)))[: dlim + 1],
             np.pad(pois, (0, width - len(pois)))[: dlim + 1])
    elapsed = time.time() - t0
    ok = tv <= 0.02
    _report("fig3b ER Poisson empirical concordance", ok,
            f"TV(d<=18) = {tv:.5f} (<= 0.02), {samples} samples, {elapsed:.0f}s")
    assert tv <= 0.02


def test_er_poisson_vs_exact_tail_agreement():
    # stated bound: pointwise relative error <= 2% for d <= 12 at n = 1000.
    # The gap between binomial and Poisson excess degrees is a genuine
    # finite-size property (it shrinks like 1/n; ~0.4% at n = 10^4) and
    # exceeds 2% from d = 9 at n = 1000, so this criterion fails honestly.
    n, c = 1000, 6.0
    p = c / (n - 1)
    rel = np.array([abs(er_dd_poisson(c, d) - er_dd_exact(n, p, d))
                    / er_dd_exact(n, p, d) for d in range(13)])
    worst = float(rel.max())
    profile = " ".join(f"d{d}:{rel[d]*100:.1f}%" for d in range(0, 13, 3))
    ok = worst <= 0.02
    _report("fig3b Poisson-vs-exact tail (n=1000)", ok,
            f"max rel err d<=12 = {worst*100:.2f}% (<= 2% required); "
            f"profile {profile}; bound holds for n >= ~5000")
    assert worst <= 0.02, (
        f"Poisson-vs-exact relative error reaches {worst*100:.2f}% at "
        f"n=1000 (threshold 2%). The deviation is the binomial-vs-Poisson "
        f"excess-degree gap, shrinking like 1/n: it is 0.80% at n=5000 and "
        f"0.40% at n=10000 (see test_er_poisson_converges_to_exact_in_n). "
        f"Unattainable as stated at n=1000; kept faithful and red.")


def test_ba_concordance_fig4c():
    t0 = time.time()
    beta, n, samples = 5, 10000, 20
    spec = EnsembleSpec("ba", {"n": n, "beta_attach": beta},
                        sample_count=samples, base_seed=303)
    width = 2000
    emp = _mean_pmf([dd_distribution(g) for g in spec], width)
    ana = np.zeros(width)
    probs = ba_dd_pmf(beta, k_max=2000).probabilities
    ana[: min(width, len(probs))] = probs[: width]
    support = emp >= 1e-4
    tv = _tv(emp[support], ana[support])
    elapsed = time.time() - t0
    ok = tv <= 0.05 and elapsed <= 300
    _report("fig4c BA concordance", ok,
            f"TV on empirical support >= 1e-4 ({support.sum()} points) = "
            f"{tv:.5f} (<= 0.05), {elapsed:.0f}s (<= 300s)")
    assert tv <= 0.05
    assert elapsed <= 300


def test_normalization_suite():
    checks = {
        "er_exact(200, c~6)": er_dd_exact_pmf(200, 6 / 199),
        "er_poisson(c=6)": er_dd_poisson_pmf(6.0),
        "ba(beta=5)": ba_dd_pmf(5, k_max=2000),
    }
    worst = 0.0
    for pmf in checks.values():
        gap = abs(pmf.probabilities.sum() + pmf.truncation_mass - 1.0)
        worst = max(worst, gap)
    ok = worst <= 1e-6
    _report("normalization suite", ok,
            f"max |sum + truncation - 1| = {worst:.2e} (<= 1e-6); "
            f"truncations: " + ", ".join(
                f"{k}={v.truncation_mass:.2e}" for k, v in checks.items()))
    assert worst <= 1e-6


# -- assortativity -------------------------------------------------------------


def _mixed_random_graphs(count: int):
    rng = np.random.default_rng(404)
    out = []
    while len(out) < count:
        pick = len(out) % 5
        n = int(rng.integers(8, 51))
        seed = int(rng.integers(2 ** 32))
        if pick == 0:
            g = gen_er(n, float(rng.uniform(0.08, 0.4)), seed)
        elif pick == 1:
            k = int(min(n - 2, 2 * rng.integers(1, 4)))
            g = gen_ws(n, max(k, 2), float(rng.uniform(0, 1)), seed)
        elif pick == 2:
            g = gen_ba(n, int(rng.integers(1, 5)), seed)
        elif pick == 3:
            g = gen_rg(n, float(rng.uniform(0.15, 0.4)), seed)
        else:
            pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
            mask = rng.random(len(pairs)) < 0.2
            g = Graph(n, np.array([e for e, m in zip(pairs, mask) if m],
                                  dtype=np.int64).reshape(-1, 2))
        if g.edge_count >= 2:
            out.append(g)
    return out


def test_assortativity_identities():
    graphs = _mixed_random_graphs(200)
    worst_route = 0.0
    worst_lna = 0.0
    defined = 0
    for g in graphs:
        r = global_assortativity(g)
        stats = joint_degree_pmf(g)
        routes = [ga_from_joint(stats), ga_double_sum(stats),
                  ga_pearson_pairs(g)]
        if r is None:
            assert all(x is None for x in routes)
            continue
        defined += 1
        worst_route = max(worst_route, *(abs(x - r) for x in routes))
        lna_sum = float(np.nansum(local_assortativity_vector(g)))
        worst_lna = max(worst_lna, abs(lna_sum - r))
    ok = worst_route <= 1e-9 and worst_lna <= 1e-6
    _report("assortativity identities", ok,
            f"{defined}/200 graphs defined; max route spread = "
            f"{worst_route:.2e} (<= 1e-9); max |sum LNA - GA| = "
            f"{worst_lna:.2e} (<= 1e-6)")
    assert worst_route <= 1e-9
    assert worst_lna <= 1e-6


def test_same_degrees_same_ga_different_dd():
    res = degree_ga_collision_search(n=7, m=9, count=3, target=-0.358)
    ga_values = [exact_assortativity(g) for g in res.graphs]
    pmfs = {tuple(sorted(dd_distribution(g).as_dict().items()))
            for g in res.graphs}
    degseqs = {tuple(sorted(g.degrees().tolist())) for g in res.graphs}
    pair_diff = max(abs(float(a - b)) for a in ga_values for b in ga_values)
    ok = (len(res.graphs) == 3 and pair_diff < 1e-9 and len(pmfs) >= 2
          and len(degseqs) == 1)
    _report("three graphs, one degree sequence + GA, distinct DD", ok,
            f"GA = {float(res.assortativity):.6f} "
            f"({res.assortativity}, target -0.358), degseq {res.degree_sequence}, "
            f"{len(pmfs)} distinct DD pmfs, pairwise GA diff = {pair_diff:.1e}")
    assert len(res.graphs) == 3
    assert pair_diff < 1e-9
    assert len(pmfs) >= 2
    assert len(degseqs) == 1


# -- oracle suites --------------------------------------------------------------


def test_oracle_edge_betweenness_all_small_graphs():
    t0 = time.time()
    checked = 0
    worst = 0.0
    for n in range(2, 7):
        pairs = list(combinations(range(n), 2))
        for r in range(n - 1, len(pairs) + 1):
            for subset in combinations(pairs, r):
                g = Graph(n, np.array(subset))
                if len(largest_connected_component(g)) != n:
                    continue
                got = edge_betweenness(g).as_dict()
                want = brute_edge_betweenness(g)
                worst = max(worst, *(abs(got[e] - want[e]) for e in want))
                checked += 1
    ok = worst <= 1e-9
    _report("oracle: edge betweenness (all connected graphs n<=6)", ok,
            f"{checked} graphs, max abs deviation = {worst:.2e} (<= 1e-9), "
            f"{time.time()-t0:.0f}s")
    assert worst <= 1e-9


def test_oracle_min_edge_cut_exhaustive():
    rng = np.random.default_rng(505)
    checked = 0
    for _ in range(60):
        g = connected_random_graph(rng, n_max=7, m_max=12)
        cut = min_edge_cut(g)
        oracle = brute_min_cut_size_upto3(g)
        if oracle is None:
            assert len(cut) > 3
        else:
            assert len(cut) == oracle
        checked += 1
    _report("oracle: min edge cut (exhaustive subsets, n<=7)", True,
            f"{checked} random graphs, all cut sizes match the <=3-subset sweep")


def test_oracle_wasserstein_exhaustive_plans():
    rng = np.random.default_rng(606)
    worst = 0.0
    # random transport instances on supports up to 4x4
    for _ in range(30):
        a, b = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        cost = rng.integers(0, 4, size=(a, b)).astype(float)
        mx = rng.dirichlet(np.ones(a))
        my = rng.dirichlet(np.ones(b))
        worst = max(worst, abs(wasserstein_distance(mx, my, cost)
                               - brute_transport(mx, my, cost)))
    # instances arising from actual curvature computations
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)])
    for (u, v) in map(tuple, g.edges):
        nu = g.neighbors(u)
        nv = g.neighbors(v)
        if len(nu) > 4 or len(nv) > 4:
            continue
        from degdiff.graph import hop_distances
        cost = np.array([[hop_distances(g, int(x), [int(y)])[int(y)]
                          for y in nv] for x in nu], dtype=float)
        mx = np.full(len(nu), 1 / len(nu))
        my = np.full(len(nv), 1 / len(nv))
        worst = max(worst, abs(wasserstein_distance(mx, my, cost)
                               - brute_transport(mx, my, cost)))
    ok = worst <= 1e-9
    _report("oracle: W1 vs exhaustive basic plans (supports <= 4)", ok,
            f"max abs deviation = {worst:.2e} (<= 1e-9)")
    assert worst <= 1e-9


# -- model-class behaviour -------------------------------------------------------


def test_rg_assortative_er_neutral():
    t0 = time.time()
    rg_spec = EnsembleSpec("rg", {"n": 1000, "eps": 0.06}, sample_count=20,
                           base_seed=707)
    er_spec = EnsembleSpec("er", {"n": 1000, "p": 6 / 999}, sample_count=20,
                           base_seed=708)
    rg_ga = [global_assortativity(g) for g in rg_spec]
    er_ga = [global_assortativity(g) for g in er_spec]
    rg_mean = float(np.mean(rg_ga))
    er_mean = float(np.mean(er_ga))
    ok = 0.40 <= rg_mean <= 0.70 and -0.05 <= er_mean <= 0.05
    _report("RG assortative / ER neutral", ok,
            f"RG mean GA = {rg_mean:.3f} (in [0.40, 0.70]), "
            f"ER mean GA = {er_mean:+.3f} (in [-0.05, 0.05]), "
            f"{time.time()-t0:.0f}s")
    assert 0.40 <= rg_mean <= 0.70
    assert -0.05 <= er_mean <= 0.05


def test_percolation_dominance_fig8b():
    # DD-ordered removal needs re-ranking to show its damage (the ranking
    # collapses as degrees fall); betweenness is ranked once on the intact
    # graph, which is the only tractable protocol at this scale
    t0 = time.time()
    spec = EnsembleSpec("ba", {"n": 1000, "beta_attach": 5}, sample_count=50,
                        base_seed=808)
    at_half = [0.5]
    dd_vals, ebw_vals, rand_vals = [], [], []
    for i, g in enumerate(spec):
        seed = 808 + 31 * i
        dd_vals.append(percolate(g, "dd_desc", at_half, recompute=True,
                                 seed=seed).lcc_normalized[0])
        ebw_vals.append(percolate(g, "ebw_desc", at_half,
                                  seed=seed).lcc_normalized[0])
        rand_vals.append(percolate(g, "random", at_half,
                                   seed=seed).lcc_normalized[0])
    dd50 = float(np.mean(dd_vals))
    ebw50 = float(np.mean(ebw_vals))
    rand50 = float(np.mean(rand_vals))
    elapsed = time.time() - t0
    ok = dd50 <= rand50 - 0.05 and abs(dd50 - ebw50) <= 0.10 and elapsed <= 600
    _report("fig8b percolation dominance (BA 1000/5, 50 samples)", ok,
            f"LCC@50%: dd_desc = {dd50:.3f} <= random - 0.05 = "
            f"{rand50 - 0.05:.3f}; |dd - ebw| = {abs(dd50 - ebw50):.3f} "
            f"(<= 0.10); {elapsed:.0f}s (<= 600s)")
    assert dd50 <= rand50 - 0.05
    assert abs(dd50 - ebw50) <= 0.10
    assert elapsed <= 600


def test_rewiring_guarantees():
    t0 = time.time()
    # GA-constrained randomization never drifts past the tolerance
    worst_drift = 0.0
    for family_graph, seed in ((gen_ba(500, 5, 11), 21),
                               (gen_er(500, 0.012, 12), 22)):
        ga0 = global_assortativity(family_graph)
        out = constrained_randomize(family_graph, 1000, ga_tolerance=0.025,
                                    seed=seed)
        assert not out.budget_exhausted
        drift = max(abs(ga - ga0) for ga in out.ga_trajectory)
        worst_drift = max(worst_drift, drift,
                          abs(global_assortativity(out.graph) - ga0))
    # assortativity climbing lifts the ensemble mean by at least 0.3
    gains = []
    for i in range(20):
        g = gen_ba(100, 5, np.random.SeedSequence(entropy=909, spawn_key=(i,)))
        out = assortative_rewire(g, 10000, seed=910 + i)
        gains.append(out.ga_trajectory[-1] - global_assortativity(g))
    mean_gain = float(np.mean(gains))
    elapsed = time.time() - t0
    ok = worst_drift <= 0.025 + 1e-12 and mean_gain >= 0.3
    _report("rewiring guarantees", ok,
            f"constrained max |dGA| = {worst_drift:.4f} (<= 0.025); "
            f"assortative mean GA gain over 10^4 steps = {mean_gain:.3f} "
            f"(>= 0.3); {elapsed:.0f}s")
    assert worst_drift <= 0.025 + 1e-12
    assert mean_gain >= 0.3


def test_correlation_signs_fig7_ba():
    t0 = time.time()
    # BA: dd vs forman negative, dd vs betweenness positive
    ba_spec = EnsembleSpec("ba", {"n": 1000, "beta_attach": 5},
                           sample_count=12, base_seed=111)
    rf_corr, ebw_corr = [], []
    for g in ba_spec:
        dd_t = EdgeMeasureTable("dd", g.edges, dd_values(g).astype(float))
        rf_t = EdgeMeasureTable("rf", g.edges,
                                compute_measure(g, "forman_ricci"))
        eb_t = edge_betweenness(g)
        rf_corr.append(measure_correlation(dd_t, rf_t))
        ebw_corr.append(measure_correlation(dd_t, eb_t))
    rf_mean = float(np.mean(rf_corr))
    ebw_mean = float(np.mean(ebw_corr))
    elapsed = time.time() - t0
    ok = rf_mean < 0 and ebw_mean > 0
    _report("fig7 BA correlation signs", ok,
            f"Pearson(dd, forman) = {rf_mean:+.3f} (< 0), "
            f"Pearson(dd, ebw) = {ebw_mean:+.3f} (> 0); {elapsed:.0f}s")
    assert rf_mean < 0
    assert ebw_mean > 0


def test_correlation_negligible_ollivier_fig7():
    # |Pearson(dd, ollivier)| <= 0.15 on ER/WS/RG.  ER and WS hold; random
    # geometric graphs do not: the anticorrelation there is intrinsic
    # (degree differences track local density gradients, which also curve
    # edges), measured at -0.18..-0.21 across n = 1000..4000, mean degree
    # 11..30, and idleness 0 and 0.5.  The RG clause fails honestly.
    t0 = time.time()
    ro_means = {}
    specs = {
        "er": EnsembleSpec("er", {"n": 1000, "p": 6 / 999}, 5, 112),
        "ws": EnsembleSpec("ws", {"n": 1000, "k": 6, "beta_rewire": 0.5}, 5, 113),
        "rg": EnsembleSpec("rg", {"n": 1000, "eps": 0.06}, 5, 114),
    }
    for name, spec in specs.items():
        vals = []
        for g in spec:
            dd_t = EdgeMeasureTable("dd", g.edges, dd_values(g).astype(float))
            ro_t = EdgeMeasureTable("ro", g.edges, ollivier_values(g))
            corr = measure_correlation(dd_t, ro_t)
            if corr is not None:
                vals.append(corr)
        ro_means[name] = float(np.mean(vals))
    worst_ro = max(abs(v) for v in ro_means.values())
    elapsed = time.time() - t0
    ok = worst_ro <= 0.15
    _report("fig7 negligible dd-ollivier correlation", ok,
            "mean Pearson(dd, ollivier) = "
            + ", ".join(f"{k}:{v:+.3f}" for k, v in ro_means.items())
            + f"; threshold |r| <= 0.15; {elapsed:.0f}s")
    assert worst_ro <= 0.15, (
        f"dd-ollivier correlation exceeds 0.15 for random geometric graphs "
        f"({ro_means}). ER and WS satisfy the bound; the RG anticorrelation "
        f"is a stable property of geometric graphs under the uniform-"
        f"neighbour, hop-metric curvature convention (checked across sizes, "
        f"densities and idleness values), so this clause is kept faithful "
        f"and red rather than tuned away.")
