"""Smoke tests for the python bindings."""

import math

import pytest

import qtri


def test_graph_roundtrip_and_oracles():
    g = qtri.gen_graph("complete", 4, 1)
    assert g.n == 4
    assert g.edge_count == 6
    assert g.adjacent(1, 2)
    assert qtri.two_path_count(g, 1, 2) == 2
    assert qtri.brute_find_triangle(g) == (1, 2, 3)
    assert qtri.triangle_count(g) == 4

    bip = qtri.gen_graph("triangle_free_bipartite", 12, 7)
    assert qtri.brute_find_triangle(bip) is None


def test_gen_graph_is_seed_deterministic():
    a = qtri.gen_graph("erdos_renyi", 64, 7)
    b = qtri.gen_graph("erdos_renyi", 64, 7)
    assert a.edges() == b.edges()


def test_grover_matches_closed_form():
    assert qtri.grover_success_prob(4, 1, 1) == pytest.approx(1.0, abs=1e-9)
    for n, m, j in [(8, 2, 1), (16, 1, 3), (32, 5, 2)]:
        theta = math.asin(math.sqrt(m / n))
        assert qtri.grover_success_prob(n, m, j) == pytest.approx(
            math.sin((2 * j + 1) * theta) ** 2, abs=1e-9
        )


def test_diffusion_involution():
    amps = [0.5, 0.5, 0.5, 0.5]
    once = qtri.diffusion(amps, [0, 1])
    twice = qtri.diffusion(once, [0, 1])
    assert twice == pytest.approx(amps)


def test_element_distinctness_sweep_lifts_baseline():
    values = list(range(9))
    values[8] = 0
    sweep = qtri.element_distinctness_sweep(values, 3, 4, 4)
    assert sweep["baseline"] == pytest.approx(1 / 12)
    best_t1, best_t2, best_p = sweep["best"]
    assert best_p > 2 * sweep["baseline"]
    assert best_t1 >= 1 and best_t2 >= 1


def test_run_reports():
    report = qtri.run("walk", 96, 3)
    assert report["schema"] == 1
    assert report["outcome"] in ("witness", "reject")
    total = sum(entry["amount"] for entry in report["ledger"]["entries"])
    assert total == report["ledger"]["total"]

    reject = qtri.run("walk", 96, 3, family="triangle_free_bipartite")
    assert reject["outcome"] == "reject"


def test_fit_slope_and_costs():
    points = [(float(n), float(n) ** 2) for n in (256, 512, 1024)]
    slope, _, residual = qtri.fit_slope(points)
    assert slope == pytest.approx(2.0, abs=1e-9)
    assert residual < 1e-9

    assert qtri.element_distinctness_cost(10**6, 10**4) == pytest.approx(
        10**4 + (10**6 / 10**4) * math.sqrt(10**4)
    )


def test_hypergeom_disjoint():
    assert qtri.hypergeom_disjoint(100, 0.1, 0.0) == 1.0
    exact = qtri.hypergeom_disjoint(100, 0.1, 0.1)
    approx = (1 - 0.01) ** 100
    assert abs(math.log(exact) - math.log(approx)) <= 1.0
