"""Exact simulation and charged-query cost models for triangle finding."""

import json as _json

from ._qtri import (  # noqa: F401
    Graph,
    brute_find_copy,
    brute_find_triangle,
    diffusion,
    element_distinctness_cost,
    element_distinctness_sweep,
    fit_slope,
    gen_graph,
    generic_cost,
    grover_success_prob,
    hypergeom_disjoint,
    read_edge_list,
    run_json,
    sweep_csv,
    threshold_graph,
    triangle_count,
    triangle_walk_cost,
    two_path_count,
    write_edge_list,
)


def run(algorithm, n, seed, family="erdos_renyi", p=0.5, graph_file="", pattern_file=""):
    """Run one cost-model algorithm and return the report as a dict."""
    return _json.loads(run_json(algorithm, n, seed, family, p, graph_file, pattern_file))
