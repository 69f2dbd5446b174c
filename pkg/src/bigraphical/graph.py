"""Graphs, sink extensions, cycles and spanning-tree counts.

Vertices of a :class:`SimpleGraph` are ``1..n``. The sink of a
:class:`SinkedGraph` is vertex ``0``. A chip configuration is a plain tuple of
``n`` integers whose ``k``-th entry belongs to vertex ``k + 1``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CapExceeded, DuplicateEdgeError, LoopError, PreconditionError, VertexRangeError

ChipConfig = tuple  # tuple[int, ...], length n

DEFAULT_MAX_CYCLES = 100_000


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: tuple  # sorted tuple of (i, j) with i < j

    @cached_property
    def adjacency(self) -> dict:
        adj = {v: [] for v in range(1, self.n + 1)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return {v: tuple(sorted(nb)) for v, nb in adj.items()}

    @cached_property
    def edge_index(self) -> dict:
        return {e: k for k, e in enumerate(self.edges)}

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edge_index

    def components(self) -> list:
        return _components(self.n, self.edges, start=1)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __str__(self):
        body = ", ".join(f"{i}-{j}" for i, j in self.edges)
        return f"SimpleGraph(n={self.n}, edges=[{body}])"


@dataclass(frozen=True)
class SinkedGraph:
    """``G`` together with a sink vertex 0 joined to every vertex of ``G``."""

    base: SimpleGraph

    @property
    def n(self) -> int:
        return self.base.n

    @cached_property
    def edges(self) -> tuple:
        return tuple((0, i) for i in self.base.vertices) + self.base.edges

    @property
    def genus(self) -> int:
        return len(self.base.edges)

    def degree(self, v: int) -> int:
        if v == 0:
            return self.n
        return self.base.degree(v) + 1

    def neighbors(self, v: int) -> tuple:
        if v == 0:
            return tuple(self.base.vertices)
        return (0,) + self.base.adjacency[v]


@dataclass(frozen=True)
class Multigraph:
    """Vertices ``1..n``; edges may repeat and may be loops."""

    n: int
    edges: tuple  # sorted tuple of (i, j) with i <= j

    def components(self) -> list:
        return _components(self.n, self.edges, start=1)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    @classmethod
    def from_simple(cls, G: SimpleGraph) -> "Multigraph":
        return cls(G.n, G.edges)

    @classmethod
    def from_sinked(cls, Gs: SinkedGraph) -> "Multigraph":
        # relabel the sink as vertex n + 1 to keep 1-based indices
        n = Gs.n
        edges = [(i, j) if i else (j, n + 1) for i, j in Gs.edges]
        return cls(n + 1, tuple(sorted(edges)))


def build_graph(n: int, edge_list: Iterable) -> SimpleGraph:
    """Validate ``edge_list`` and return the simple graph on ``1..n``.

    Raises :class:`LoopError`, :class:`DuplicateEdgeError` or
    :class:`VertexRangeError` on bad input.
    """
    if n < 0:
        raise VertexRangeError(f"vertex count must be nonnegative, got {n}")
    seen = set()
    for pair in edge_list:
        i, j = pair
        for v in (i, j):
            if not 1 <= v <= n:
                raise VertexRangeError(f"vertex {v} outside 1..{n}")
        if i == j:
            raise LoopError(f"loop at vertex {i}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicateEdgeError(f"duplicate edge {{{i},{j}}}")
        seen.add(key)
    return SimpleGraph(n, tuple(sorted(seen)))


def build_multigraph(n: int, edge_list: Iterable) -> Multigraph:
    edges = []
    for i, j in edge_list:
        for v in (i, j):
            if not 1 <= v <= n:
                raise VertexRangeError(f"vertex {v} outside 1..{n}")
        edges.append((min(i, j), max(i, j)))
    return Multigraph(n, tuple(sorted(edges)))


def sink_extension(G: SimpleGraph) -> SinkedGraph:
    return SinkedGraph(G)


def cut_degree(Gs: SinkedGraph, v: int, W) -> int:
    """Number of edges of ``Gs`` joining ``v`` to a vertex outside ``W``.

    The sink never lies in ``W``, so its edge always counts.
    """
    W = set(W)
    if v not in W:
        raise PreconditionError(f"vertex {v} is not in W")
    return 1 + sum(1 for u in Gs.base.adjacency[v] if u not in W)


def simple_cycles(G: SimpleGraph, max_cycles: int = DEFAULT_MAX_CYCLES) -> list:
    """All simple cycles of ``G`` as vertex tuples, each listed once.

    A cycle is written starting at its least vertex, in the direction whose
    second vertex is smaller. Raises :class:`CapExceeded` past ``max_cycles``.
    """
    adj = G.adjacency
    out = []

    def extend(start, path, on_path):
        last = path[-1]
        for nb in adj[last]:
            if nb == start:
                if len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                    if len(out) > max_cycles:
                        raise CapExceeded(f"more than {max_cycles} simple cycles")
            elif nb > start and nb not in on_path:
                path.append(nb)
                on_path.add(nb)
                extend(start, path, on_path)
                on_path.discard(nb)
                path.pop()

    for s in G.vertices:
        extend(s, [s], {s})
    out.sort()
    return out


def laplacian(n_vertices: int, edges: Iterable, labels: Sequence) -> list:
    """Integer Laplacian over ``labels`` (loops ignored, multi-edges counted)."""
    pos = {v: k for k, v in enumerate(labels)}
    L = [[0] * n_vertices for _ in range(n_vertices)]
    for i, j in edges:
        if i == j:
            continue
        a, b = pos[i], pos[j]
        L[a][a] += 1
        L[b][b] += 1
        L[a][b] -= 1
        L[b][a] -= 1
    return L


def bareiss_determinant(M: list) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    A = [row[:] for row in M]
    size = len(A)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if A[k][k] == 0:
            for r in range(k + 1, size):
                if A[r][k] != 0:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = A[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                A[i][j] = (A[i][j] * pivot - A[i][k] * A[k][j]) // prev
        prev = pivot
    return sign * A[-1][-1]


def spanning_tree_count(graph) -> int:
    """Number of spanning trees, by the Matrix-Tree theorem.

    Accepts a :class:`SinkedGraph`, :class:`Multigraph` or :class:`SimpleGraph`.
    Disconnected graphs give 0.
    """
    if isinstance(graph, SinkedGraph):
        labels = list(range(0, graph.n + 1))
        edges = graph.edges
    else:
        labels = list(range(1, graph.n + 1))
        edges = graph.edges
    if len(labels) <= 1:
        return 1
    L = laplacian(len(labels), edges, labels)
    reduced = [row[1:] for row in L[1:]]
    return bareiss_determinant(reduced)


def _components(n: int, edges: Iterable, start: int) -> list:
    parent = {v: v for v in range(start, start + n)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    groups = defaultdict(list)
    for v in parent:
        groups[find(v)].append(v)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


# named graphs used throughout the tests and the CLI

def complete_graph(n: int) -> SimpleGraph:
    return build_graph(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def cycle_graph(n: int) -> SimpleGraph:
    """``C_n`` with edges ``{v_i, v_{i+1}}`` and ``{v_1, v_n}``."""
    return build_graph(n, [(i, i + 1) for i in range(1, n)] + [(1, n)])


def path_graph(n: int) -> SimpleGraph:
    return build_graph(n, [(i, i + 1) for i in range(1, n)])


def dipole(k: int) -> Multigraph:
    """Two vertices joined by ``k`` parallel edges (the planar dual of ``C_k``)."""
    return Multigraph(2, ((1, 2),) * k)
