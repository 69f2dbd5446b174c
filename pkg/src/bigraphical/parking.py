"""Parking functions of the sink extension G• and the labels that realize them.

Three independent routes produce the same set of chip configurations:
the subset definition (:func:`enumerate_parking`), indegree sequences of
acyclic partial orientations (:func:`acyclic_indeg_set`), and indegree
sequences of admissible orientations (:func:`pak_stanley_labels`).
"""

from __future__ import annotations

import itertools
from collections import Counter

from .errors import CapExceeded, VerificationError
from .graph import SimpleGraph, SinkedGraph, cut_degree, sink_extension
from .orientations import (
    DEFAULT_MAX_EDGES,
    FORWARD,
    BACKWARD,
    AdmissibilityClass,
    ParameterList,
    PartialOrientation,
    all_orientations,
    classify,
    validate_parameters,
)

MAX_SUBSET_VERTICES = 16
MAX_BOX = 2_000_000


def is_parking(Gs: SinkedGraph, c) -> bool:
    """Check the definition directly: every nonempty ``W`` has a vertex with ``0 <= c_i < d_W(v_i)``."""
    n = Gs.n
    if n > MAX_SUBSET_VERTICES:
        raise CapExceeded(f"n = {n} exceeds the subset cap of {MAX_SUBSET_VERTICES}")
    vertices = list(Gs.base.vertices)
    for size in range(1, n + 1):
        for W in itertools.combinations(vertices, size):
            Wset = set(W)
            if not any(0 <= c[v - 1] < cut_degree(Gs, v, Wset) for v in W):
                return False
    return True


def burning_check(Gs: SinkedGraph, c) -> bool:
    """Burn from the sink; a vertex burns once it has fewer chips than burnt neighbours."""
    if any(x < 0 for x in c):
        return False
    burnt = {0}
    unburnt = set(Gs.base.vertices)
    progress = True
    while unburnt and progress:
        progress = False
        for v in sorted(unburnt):
            fire = sum(1 for u in Gs.neighbors(v) if u in burnt)
            if c[v - 1] < fire:
                burnt.add(v)
                unburnt.discard(v)
                progress = True
    return not unburnt


def _box(Gs: SinkedGraph):
    # W = {v_i} forces c_i < d_W(v_i) = deg_{G•}(v_i)
    ranges = [range(Gs.degree(v)) for v in Gs.base.vertices]
    size = 1
    for r in ranges:
        size *= len(r)
    if size > MAX_BOX:
        raise CapExceeded(f"degree box has {size} points, cap is {MAX_BOX}")
    return itertools.product(*ranges)


def enumerate_parking(Gs: SinkedGraph) -> frozenset:
    return frozenset(c for c in _box(Gs) if is_parking(Gs, c))


def h_vector(Gs: SinkedGraph) -> list:
    h = [0] * (Gs.genus + 1)
    for c in enumerate_parking(Gs):
        h[sum(c)] += 1
    return h


def acyclic_indeg_set(G: SimpleGraph, max_edges: int = DEFAULT_MAX_EDGES) -> frozenset:
    return frozenset(O.indegree for O in all_orientations(G, max_edges) if O.is_acyclic())


def label_multiset(G: SimpleGraph, A: ParameterList, max_edges: int = DEFAULT_MAX_EDGES) -> Counter:
    """How many regions carry each label."""
    validate_parameters(G, A)
    return Counter(O.indegree for O in all_orientations(G, max_edges)
                   if classify(O, A) is AdmissibilityClass.ADMISSIBLE)


def pak_stanley_labels(G: SimpleGraph, A: ParameterList, max_edges: int = DEFAULT_MAX_EDGES) -> frozenset:
    return frozenset(label_multiset(G, A, max_edges))


def parking_wrt_vertex(G: SimpleGraph, i: int, max_edges: int = DEFAULT_MAX_EDGES) -> frozenset:
    """Parking functions of G with respect to ``v_i``, read off acyclic orientations."""
    out = set()
    for O in all_orientations(G, max_edges):
        if not O.is_acyclic():
            continue
        c = tuple(x - 1 for x in O.indegree)
        if c[i - 1] == -1 and all(x >= 0 for k, x in enumerate(c) if k != i - 1):
            out.add(c)
    return frozenset(out)


def maximal_elements(configs) -> frozenset:
    configs = list(configs)
    return frozenset(
        c for c in configs
        if not any(d != c and all(x <= y for x, y in zip(c, d)) for d in configs)
    )


def acyclic_total_orientations(G: SimpleGraph) -> list:
    out = []
    for states in itertools.product((FORWARD, BACKWARD), repeat=len(G.edges)):
        O = PartialOrientation(G, states)
        if O.is_acyclic():
            out.append(O)
    return out


def bct_maximal(G: SimpleGraph):
    """Maximal parking functions of G• and the number of acyclic total orientations of G.

    Orienting every sink edge away from ``v_0`` extends an acyclic total
    orientation of G to one of G• with unique source ``v_0``; its indegree
    minus one at each vertex of G must hit every maximal parking function
    exactly once. Raises :class:`VerificationError` otherwise.
    """
    Gs = sink_extension(G)
    maximal = maximal_elements(enumerate_parking(Gs))
    orientations = acyclic_total_orientations(G)
    # indeg in G• = indeg in G + 1 (the sink edge), then subtract one
    images = [O.indegree for O in orientations]
    if len(set(images)) != len(images) or set(images) != set(maximal):
        raise VerificationError("acyclic total orientations do not biject onto maximal parking functions")
    return maximal, len(orientations)
