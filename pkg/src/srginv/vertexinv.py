"""Vertex invariants from powers of neighborhood-restricted adjacency matrices.

For a vertex ``a`` the matrix A|_{N_a} is the adjacency matrix induced on
its neighborhood; the diagonal of its p-th power counts closed length-p
walks that stay inside the neighborhood. Either the trace or the
ascending-sorted diagonal is a relabeling invariant of the vertex; the
lexicographically sorted list over all vertices is a graph invariant.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .graph import Graph, SrgParams
from .matpow import power_cache


class InvariantMode(enum.Enum):
    TRACE = "trace"
    SORTED_DIAG = "sortdiag"


@dataclass(frozen=True)
class VertexSignature:
    vertex: int
    values: tuple[int, ...]


@dataclass(frozen=True)
class GraphSignature:
    """Per-vertex invariant vectors, lexicographically sorted ascending."""

    rows: tuple[tuple[int, ...], ...]
    params: SrgParams | None = None


@dataclass(frozen=True)
class VertexPartition:
    """Blocks of vertices sharing identical signatures.

    Blocks are ordered by ascending signature (shorter vectors first, then
    elementwise); vertices inside a block ascend. Automorphisms can only
    permute vertices within a block.
    """

    blocks: tuple[tuple[int, ...], ...]
    signatures: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class OutblockSignature:
    """Base graph signature, extended by the signature of the subgraph left
    after deleting the first (smallest-signature) block.

    ``refined`` is False when the base partition has a single block; the
    tail is then absent and the base signature stands alone.
    """

    base: GraphSignature
    refined: bool
    removed: tuple[int, ...]
    tail: GraphSignature | None


def row_sort_key(values: tuple[int, ...]):
    # Different lengths only occur across different-degree vertices; compare
    # by length first so the order is total.
    return (len(values), values)


def _validate_powers(powers) -> tuple[int, ...]:
    powers = tuple(int(p) for p in powers)
    if not powers:
        raise ValueError("power list must be nonempty")
    prev = 0
    for p in powers:
        if p < 1:
            raise ValueError(f"powers must be >= 1, got {p}")
        if p <= prev:
            raise ValueError(f"powers must be strictly ascending, got {powers}")
        prev = p
    return powers


def _restricted_power_table(
    g: Graph, powers: tuple[int, ...], modulus: tuple[int, int] | None
) -> tuple[dict[int, list[tuple[int, ...]]], dict[int, list[int]]]:
    """Sorted diagonals and traces of (A|_{N_a})^p for every vertex at once.

    Vertices are batched by degree so each batch is one stacked matrix
    power; a k-regular graph is a single (v, k, k) stack.
    """
    dense = g.dense()
    by_degree: dict[int, list[int]] = {}
    for a in range(g.v):
        by_degree.setdefault(g.degree(a), []).append(a)

    diag: dict[int, list] = {p: [None] * g.v for p in powers}
    trace: dict[int, list] = {p: [None] * g.v for p in powers}
    for d, verts in by_degree.items():
        subs = [dense[np.ix_(g.neighborhood(a), g.neighborhood(a))] for a in verts]
        stack = np.stack(subs) if subs else np.zeros((0, d, d), dtype=np.uint8)
        cache = power_cache(stack, modulus)
        for p in powers:
            rows = cache.diagonals(p)
            traces = cache.traces(p)
            for a, row, t in zip(verts, rows, traces):
                diag[p][a] = tuple(sorted(row))
                trace[p][a] = t
    return diag, trace


class NeighborhoodPowerCache:
    """Per-vertex diagonals/traces of neighborhood powers, cached by power.

    Only the small diagonal tuples persist; matrices are dropped after each
    batch, so this stays cheap enough to keep alive per graph across the
    escalation ladder.
    """

    def __init__(self, g: Graph, modulus: tuple[int, int] | None = None):
        self.graph = g
        self.modulus = modulus
        self._diag: dict[int, list[tuple[int, ...]]] = {}
        self._trace: dict[int, list[int]] = {}

    def ensure(self, powers) -> None:
        missing = tuple(sorted(set(powers) - self._diag.keys()))
        if missing:
            diag, trace = _restricted_power_table(self.graph, missing, self.modulus)
            self._diag.update(diag)
            self._trace.update(trace)

    def diag(self, p: int) -> list[tuple[int, ...]]:
        self.ensure((p,))
        return self._diag[p]

    def trace(self, p: int) -> list[int]:
        self.ensure((p,))
        return self._trace[p]

    def signature_values(
        self, powers: tuple[int, ...], mode: InvariantMode
    ) -> list[tuple[int, ...]]:
        """Per-vertex concatenation across powers, in vertex order."""
        self.ensure(powers)
        out = []
        for a in range(self.graph.v):
            vals: list[int] = []
            for p in powers:
                if mode is InvariantMode.TRACE:
                    vals.append(self._trace[p][a])
                else:
                    vals.extend(self._diag[p][a])
            out.append(tuple(vals))
        return out


def nbhd_power_diag(
    g: Graph,
    a: int,
    p: int,
    mode: InvariantMode,
    *,
    modulus: tuple[int, int] | None = None,
) -> tuple[int, ...]:
    """Trace (one element) or ascending diagonal of (A|_{N_a})^p."""
    g._check_vertex(a)
    if p < 1:
        raise ValueError(f"power must be >= 1, got {p}")
    nb = g.neighborhood(a)
    sub = g.dense()[np.ix_(nb, nb)]
    cache = power_cache(sub[None, :, :], modulus)
    if mode is InvariantMode.TRACE:
        return (cache.traces(p)[0],)
    return tuple(sorted(cache.diagonals(p)[0]))


def vertex_signatures(
    g: Graph,
    powers,
    mode: InvariantMode,
    *,
    modulus: tuple[int, int] | None = None,
) -> list[VertexSignature]:
    powers = _validate_powers(powers)
    cache = NeighborhoodPowerCache(g, modulus)
    values = cache.signature_values(powers, mode)
    return [VertexSignature(a, vals) for a, vals in enumerate(values)]


def graph_signature(
    g: Graph,
    powers,
    mode: InvariantMode,
    *,
    modulus: tuple[int, int] | None = None,
    params: SrgParams | None = None,
) -> GraphSignature:
    """Lex-sorted vertex signatures; identical for isomorphic graphs."""
    sigs = vertex_signatures(g, powers, mode, modulus=modulus)
    rows = tuple(sorted((s.values for s in sigs), key=row_sort_key))
    return GraphSignature(rows, params)


def partition_vertices(signatures) -> VertexPartition:
    """Group vertices by identical signature vectors.

    A single block is a normal outcome (the invariants could not split the
    vertices), not an error.
    """
    signatures = list(signatures)
    if not signatures:
        raise ValueError("cannot partition an empty signature list")
    groups: dict[tuple[int, ...], list[int]] = {}
    for s in signatures:
        groups.setdefault(s.values, []).append(s.vertex)
    ordered = sorted(groups, key=row_sort_key)
    return VertexPartition(
        blocks=tuple(tuple(sorted(groups[key])) for key in ordered),
        signatures=tuple(ordered),
    )


def outblock_signature(
    g: Graph,
    powers,
    mode: InvariantMode,
    *,
    modulus: tuple[int, int] | None = None,
) -> OutblockSignature:
    """Base signature plus the signature after deleting the first block.

    The "first block" is the one with the lexicographically smallest
    signature; removal happens exactly once.
    """
    powers = _validate_powers(powers)
    sigs = vertex_signatures(g, powers, mode, modulus=modulus)
    base = GraphSignature(tuple(sorted((s.values for s in sigs), key=row_sort_key)))
    part = partition_vertices(sigs)
    if len(part.blocks) < 2:
        return OutblockSignature(base, False, (), None)
    removed = part.blocks[0]
    keep = tuple(a for a in range(g.v) if a not in set(removed))
    tail = graph_signature(g.induced_subgraph(keep), powers, mode, modulus=modulus)
    return OutblockSignature(base, True, removed, tail)
