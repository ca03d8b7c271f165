"""Small named graphs used as fixtures and desk-scale ground truth."""

from __future__ import annotations

from itertools import combinations

from .graph import Graph


def empty_graph(n: int) -> Graph:
    return Graph.from_edges(n, [])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite_graph(m: int, n: int) -> Graph:
    return Graph.from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def star_graph(n: int) -> Graph:
    """K_{1,n}: one center joined to n leaves."""
    return complete_bipartite_graph(1, n)


def rook_graph(n: int = 4) -> Graph:
    """n x n rook's graph: cells adjacent in the same row or column.

    The 4x4 case is SRG(16, 6, 2, 2); each neighborhood is two disjoint
    triangles.
    """
    edges = []
    for i in range(n):
        for j in range(n):
            for jj in range(j + 1, n):
                edges.append((i * n + j, i * n + jj))
            for ii in range(i + 1, n):
                edges.append((i * n + j, ii * n + j))
    return Graph.from_edges(n * n, edges)


def shrikhande_graph() -> Graph:
    """The Shrikhande graph, the other SRG(16, 6, 2, 2).

    Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)};
    each neighborhood is a 6-cycle, so it has no neighborhood triangles.
    """
    conn = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)]
    edges = []
    for i in range(4):
        for j in range(4):
            for di, dj in conn:
                edges.append((i * 4 + j, ((i + di) % 4) * 4 + (j + dj) % 4))
    return Graph.from_edges(16, edges)


def petersen_graph() -> Graph:
    """Kneser graph K(5,2): SRG(10, 3, 0, 1) with edge-free neighborhoods."""
    pairs = list(combinations(range(5), 2))
    edges = [
        (a, b)
        for a in range(10)
        for b in range(a + 1, 10)
        if not set(pairs[a]) & set(pairs[b])
    ]
    return Graph.from_edges(10, edges)


def paley_graph(q: int) -> Graph:
    """Paley graph on a prime q = 1 (mod 4): SRG(q, (q-1)/2, (q-5)/4, (q-1)/4)."""
    if q % 4 != 1:
        raise ValueError(f"Paley graph needs q = 1 (mod 4), got {q}")
    for f in range(2, int(q**0.5) + 1):
        if q % f == 0:
            raise ValueError(f"Paley graph here supports prime q only, got {q}")
    squares = {(x * x) % q for x in range(1, q)}
    edges = [(a, b) for a in range(q) for b in range(a + 1, q) if (b - a) % q in squares]
    return Graph.from_edges(q, edges)


def triangular_graph(n: int) -> Graph:
    """Line graph of K_n (Johnson J(n,2)); T(5) is the Petersen complement."""
    pairs = list(combinations(range(n), 2))
    edges = [
        (a, b)
        for a in range(len(pairs))
        for b in range(a + 1, len(pairs))
        if set(pairs[a]) & set(pairs[b])
    ]
    return Graph.from_edges(len(pairs), edges)


def complement_graph(g: Graph) -> Graph:
    edges = [
        (a, b)
        for a in range(g.v)
        for b in range(a + 1, g.v)
        if not g.has_edge(a, b)
    ]
    return Graph.from_edges(g.v, edges)


def seidel_switch(g: Graph, subset) -> Graph:
    """Complement all adjacencies between ``subset`` and the rest."""
    inside = set(subset)
    for s in inside:
        g._check_vertex(s)
    edges = []
    for a in range(g.v):
        for b in range(a + 1, g.v):
            crossing = (a in inside) != (b in inside)
            if g.has_edge(a, b) != crossing:
                edges.append((a, b))
    return Graph.from_edges(g.v, edges)


def chang_graphs() -> tuple[Graph, Graph, Graph]:
    """The three Chang graphs, Seidel switches of the triangular graph T(8).

    Together with T(8) itself they are all four graphs with parameters
    (28, 12, 6, 4). The switching sets, as edge sets of K8: a perfect
    matching, a triangle plus a pentagon, and an 8-cycle.
    """
    pairs = list(combinations(range(8), 2))
    pos = {p: i for i, p in enumerate(pairs)}
    t8 = triangular_graph(8)

    def key(a, b):
        return pos[(min(a, b), max(a, b))]

    matching = [key(0, 1), key(2, 3), key(4, 5), key(6, 7)]
    tri_pent = [key(0, 1), key(1, 2), key(0, 2)] + [
        key(3, 4), key(4, 5), key(5, 6), key(6, 7), key(3, 7)
    ]
    octagon = [key(i, (i + 1) % 8) for i in range(8)]
    return (
        seidel_switch(t8, matching),
        seidel_switch(t8, tri_pent),
        seidel_switch(t8, octagon),
    )
