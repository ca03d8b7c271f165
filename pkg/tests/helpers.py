"""Shared test fixtures and independent oracles.

The dense tilde/bar constructions here build the full v^2 x v^2 matrices
straight from their definitions and power them in exact object
arithmetic; they exist to check the restricted kernels and must stay
independent of them.
"""

from __future__ import annotations

import random

import numpy as np

from srginv.catalog import (
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    paley_graph,
    path_graph,
    petersen_graph,
    rook_graph,
    shrikhande_graph,
    star_graph,
    triangular_graph,
)
from srginv.graph import Graph


def er_graph(v: int, seed: int, p: float = 0.5) -> Graph:
    """Seeded Erdos-Renyi graph."""
    rng = random.Random(seed)
    edges = [(a, b) for a in range(v) for b in range(a + 1, v) if rng.random() < p]
    return Graph.from_edges(v, edges)


def prism_graph() -> Graph:
    """K3 x K2: 3-regular on 6 vertices, with triangles (unlike K33)."""
    return Graph.from_edges(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    )


def fixture_graphs() -> dict[str, Graph]:
    return {
        "rook4": rook_graph(4),
        "shrikhande": shrikhande_graph(),
        "petersen": petersen_graph(),
        "c5": cycle_graph(5),
        "paley13": paley_graph(13),
        "paley17": paley_graph(17),
        "t5": triangular_graph(5),
        "k33": complete_bipartite_graph(3, 3),
        "prism": prism_graph(),
        "k4": complete_graph(4),
        "star3": star_graph(3),
        "path4": path_graph(4),
    }


def srg_fixtures() -> dict[str, Graph]:
    keep = ("rook4", "shrikhande", "petersen", "c5", "paley13", "paley17", "t5", "k33")
    fx = fixture_graphs()
    return {k: fx[k] for k in keep}


def dense_tilde_power_diag(g: Graph, p: int) -> dict[tuple[int, int], int]:
    """Diagonal of the p-th power of the full v^2 x v^2 matrix with entry
    A_ab * A_ac * delta_bd at ((a,b),(c,d)), keyed by (a, b)."""
    v = g.v
    a = g.dense().astype(object)
    m = np.zeros((v * v, v * v), dtype=object)
    for x in range(v):
        for y in range(v):
            for c in range(v):
                m[x * v + y, c * v + y] = int(a[x, y]) * int(a[x, c])
    pw = np.linalg.matrix_power(m, p)
    return {(x, y): int(pw[x * v + y, x * v + y]) for x in range(v) for y in range(v)}


def dense_bar_power_diag(g: Graph, p: int) -> dict[tuple[int, int], int]:
    """Diagonal of the p-th power of the full v^2 x v^2 matrix with entry
    A_ab * A_ac * A_bd at ((a,b),(c,d)), keyed by (a, b)."""
    v = g.v
    a = g.dense().astype(object)
    m = np.zeros((v * v, v * v), dtype=object)
    for x in range(v):
        for y in range(v):
            for c in range(v):
                for d in range(v):
                    m[x * v + y, c * v + d] = int(a[x, y]) * int(a[x, c]) * int(a[y, d])
    pw = np.linalg.matrix_power(m, p)
    return {(x, y): int(pw[x * v + y, x * v + y]) for x in range(v) for y in range(v)}
