"""Partial orientations, parameter lists and admissibility.

A partial orientation stores one state per edge of ``G`` (in the order of
``G.edges``): ``BLANK``, ``FORWARD`` (``i -> j`` for the stored pair
``(i, j)``, ``i < j``) or ``BACKWARD`` (``j -> i``).

Scores are exact rationals. Internally every parameter list is scaled by the
lcm of its denominators so the shortest-path routines run on integers; the
scaling is positive, so signs of cycle scores are unchanged.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import CapExceeded, InputError, InvalidParameters, PreconditionError
from .graph import DEFAULT_MAX_CYCLES, SimpleGraph, simple_cycles

DEFAULT_MAX_EDGES = 14

BLANK, FORWARD, BACKWARD = 0, 1, -1
EDGE_STATES = (BLANK, FORWARD, BACKWARD)


class AdmissibilityClass(enum.Enum):
    ADMISSIBLE = "admissible"
    ALMOST = "almost"
    FAR = "far"


@dataclass(frozen=True)
class PartialOrientation:
    graph: SimpleGraph
    states: tuple

    @classmethod
    def empty(cls, G: SimpleGraph) -> "PartialOrientation":
        return cls(G, (BLANK,) * len(G.edges))

    @classmethod
    def from_steps(cls, G: SimpleGraph, steps) -> "PartialOrientation":
        states = [BLANK] * len(G.edges)
        for u, v in steps:
            key = (min(u, v), max(u, v))
            if key not in G.edge_index:
                raise InputError(f"({u},{v}) is not a step of G")
            k = G.edge_index[key]
            s = FORWARD if u < v else BACKWARD
            if states[k] not in (BLANK, s):
                raise InputError(f"edge {key} oriented both ways")
            states[k] = s
        return cls(G, tuple(states))

    @cached_property
    def steps(self) -> tuple:
        out = []
        for (i, j), s in zip(self.graph.edges, self.states):
            if s == FORWARD:
                out.append((i, j))
            elif s == BACKWARD:
                out.append((j, i))
        return tuple(sorted(out))

    @cached_property
    def indegree(self) -> tuple:
        indeg = [0] * self.graph.n
        for _, v in self.steps:
            indeg[v - 1] += 1
        return tuple(indeg)

    def __len__(self):
        return sum(1 for s in self.states if s != BLANK)

    def state(self, i: int, j: int) -> int:
        """State of edge ``{i, j}`` seen from ``i``: +1 if ``(i, j)`` is in O."""
        k = self.graph.edge_index[(min(i, j), max(i, j))]
        s = self.states[k]
        return s if i < j else -s

    def contains(self, u: int, v: int) -> bool:
        return self.state(u, v) == FORWARD

    def is_compatible(self, u: int, v: int) -> bool:
        return not self.contains(v, u)

    def with_step(self, u: int, v: int) -> "PartialOrientation":
        k = self.graph.edge_index[(min(u, v), max(u, v))]
        if self.states[k] != BLANK:
            raise PreconditionError(f"edge {{{u},{v}}} is not blank")
        states = list(self.states)
        states[k] = FORWARD if u < v else BACKWARD
        return PartialOrientation(self.graph, tuple(states))

    def is_acyclic(self) -> bool:
        out = {v: [] for v in self.graph.vertices}
        indeg = {v: 0 for v in self.graph.vertices}
        for u, v in self.steps:
            out[u].append(v)
            indeg[v] += 1
        stack = [v for v in self.graph.vertices if indeg[v] == 0]
        seen = 0
        while stack:
            u = stack.pop()
            seen += 1
            for v in out[u]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    stack.append(v)
        return seen == self.graph.n

    def __str__(self):
        return "{" + ", ".join(f"({u},{v})" for u, v in self.steps) + "}"


@dataclass(frozen=True, eq=False)
class ParameterList:
    """Exact rational ``a_ij`` for every step ``(i, j)`` of ``graph``."""

    graph: SimpleGraph
    values: dict
    name: str = "custom"

    def __post_init__(self):
        clean = {}
        for (i, j), val in self.values.items():
            if not self.graph.has_edge(i, j) or i == j:
                raise InputError(f"parameter for ({i},{j}) but {{{i},{j}}} is not an edge")
            clean[(i, j)] = Fraction(val)
        for i, j in self.graph.edges:
            for step in ((i, j), (j, i)):
                if step not in clean:
                    raise InputError(f"missing parameter a_{step[0]}{step[1]}")
        object.__setattr__(self, "values", clean)

    def __getitem__(self, step) -> Fraction:
        return self.values[step]

    def __eq__(self, other):
        if not isinstance(other, ParameterList):
            return NotImplemented
        return self.graph == other.graph and self.values == other.values

    def items(self):
        return sorted(self.values.items())

    @cached_property
    def scale(self) -> int:
        return math.lcm(*(v.denominator for v in self.values.values())) if self.values else 1

    @cached_property
    def scaled(self) -> dict:
        return {k: int(v * self.scale) for k, v in self.values.items()}


@dataclass(frozen=True)
class ScoreDigraph:
    """Arcs are exactly the steps compatible with O; arc weight is the step score."""

    n: int
    arcs: tuple  # (u, v, Fraction)

    def cycle_weight(self, cycle) -> Fraction:
        w = {(u, v): x for u, v, x in self.arcs}
        return sum((w[(cycle[k], cycle[(k + 1) % len(cycle)])] for k in range(len(cycle))), Fraction(0))


@dataclass
class RegionCensus:
    r: int
    b: int
    almost: int
    far: int
    p: list = field(default_factory=list)


# parameter presets

def preset(G: SimpleGraph, kind: str, eta=None) -> ParameterList:
    """``semi``, ``shi`` or ``interval`` (with positive integers ``eta``)."""
    values = {}
    if kind == "semi":
        for i, j in G.edges:
            values[(i, j)] = values[(j, i)] = 1
        name = "semi"
    elif kind == "shi":
        for i, j in G.edges:  # i < j
            values[(i, j)], values[(j, i)] = 1, 0
        name = "shi"
    elif kind == "interval":
        if eta is None or len(eta) != G.n:
            raise InputError(f"interval preset needs {G.n} lengths")
        if any(int(x) != x or x <= 0 for x in eta):
            raise InputError("interval lengths must be positive integers")
        for i, j in G.edges:
            values[(i, j)], values[(j, i)] = eta[i - 1], eta[j - 1]
        name = "interval:" + ",".join(str(x) for x in eta)
    else:
        raise InputError(f"unknown preset {kind!r}")
    A = ParameterList(G, values, name)
    validate_parameters(G, A)
    return A


def signed_cycle_sums_vanish(G: SimpleGraph, A: ParameterList, max_cycles: int = DEFAULT_MAX_CYCLES):
    """Return a (cycle, choice) pair with zero signed sum, or None.

    Along a traversal each step ``(u, v)`` contributes ``+a_uv`` or ``-a_vu``.
    Reversing the traversal negates every sum, so one direction suffices.
    """
    for cyc in simple_cycles(G, max_cycles=max_cycles):
        k = len(cyc)
        sums = {Fraction(0): ()}
        for t in range(k):
            u, v = cyc[t], cyc[(t + 1) % k]
            nxt = {}
            for s, choice in sums.items():
                nxt.setdefault(s + A[(u, v)], choice + (+1,))
                nxt.setdefault(s - A[(v, u)], choice + (-1,))
            sums = nxt
        if 0 in sums:
            return cyc, sums[Fraction(0)]
    return None


def is_generic(G: SimpleGraph, A: ParameterList, max_cycles: int = DEFAULT_MAX_CYCLES) -> bool:
    return signed_cycle_sums_vanish(G, A, max_cycles) is None


def sample_generic(G: SimpleGraph, seed: int, max_cycles: int = DEFAULT_MAX_CYCLES,
                   denominator: int = 1_000_003, max_attempts: int = 1000) -> ParameterList:
    """Deterministic generic parameter list with entries in (1/2, 3/2).

    Resamples until no signed cycle sum vanishes.
    """
    rng = random.Random(seed)
    lo, hi = denominator // 2 + 1, (3 * denominator) // 2 - 1
    for _ in range(max_attempts):
        values = {}
        for i, j in G.edges:
            values[(i, j)] = Fraction(rng.randint(lo, hi), denominator)
            values[(j, i)] = Fraction(rng.randint(lo, hi), denominator)
        A = ParameterList(G, values, f"generic:{seed}")
        if is_generic(G, A, max_cycles):
            return A
    raise CapExceeded(f"no generic parameter list found in {max_attempts} attempts")


# score digraph and shortest-path machinery

def _edge_arcs(i, j, state, a):
    """Integer arcs contributed by edge ``{i, j}`` (``i < j``) in ``state``."""
    if state == BLANK:
        return ((i, j, a[(i, j)]), (j, i, a[(j, i)]))
    if state == FORWARD:
        return ((i, j, -a[(j, i)]),)
    return ((j, i, -a[(i, j)]),)


def score_digraph(O: PartialOrientation, A: ParameterList) -> ScoreDigraph:
    arcs = []
    for (i, j), s in zip(O.graph.edges, O.states):
        arcs.extend(_edge_arcs(i, j, s, A.values))
    return ScoreDigraph(O.graph.n, tuple(sorted(arcs)))


def step_score(e, O: PartialOrientation, A: ParameterList) -> Fraction:
    u, v = e
    s = O.state(u, v)
    if s == BACKWARD:
        raise PreconditionError(f"step ({u},{v}) is incompatible with O")
    return A[(u, v)] if s == BLANK else -A[(v, u)]


def _has_negative_cycle(n: int, arcs) -> bool:
    dist = [0] * (n + 1)
    for _ in range(n + 1):
        changed = False
        for u, v, w in arcs:
            d = dist[u] + w
            if d < dist[v]:
                dist[v] = d
                changed = True
        if not changed:
            return False
    return True


def _negative_cycle(n: int, arcs):
    """A negative cycle as a list of arcs ``(u, v)``, or None."""
    dist = [0] * (n + 1)
    pred = [None] * (n + 1)
    last = None
    for _ in range(n + 1):
        last = None
        for u, v, w in arcs:
            d = dist[u] + w
            if d < dist[v]:
                dist[v] = d
                pred[v] = u
                last = v
        if last is None:
            return None
    x = last
    for _ in range(n + 1):
        x = pred[x]
    cycle = [x]
    y = pred[x]
    while y != x:
        cycle.append(y)
        y = pred[y]
    cycle.reverse()
    return [(cycle[k], cycle[(k + 1) % len(cycle)]) for k in range(len(cycle))]


def _lex_arcs(n: int, arcs):
    # (score, -1 per arc) ordered lexicographically, packed into one integer:
    # simple cycles have at most n arcs, so n + 1 separates the two levels
    m = n + 1
    return [(u, v, m * w - 1) for u, v, w in arcs]


def _integer_arcs(O: PartialOrientation, A: ParameterList):
    arcs = []
    a = A.scaled
    for (i, j), s in zip(O.graph.edges, O.states):
        arcs.extend(_edge_arcs(i, j, s, a))
    return arcs


def classify(O: PartialOrientation, A: ParameterList) -> AdmissibilityClass:
    n = O.graph.n
    arcs = _integer_arcs(O, A)
    if _has_negative_cycle(n, arcs):
        return AdmissibilityClass.FAR
    if _has_negative_cycle(n, _lex_arcs(n, arcs)):
        return AdmissibilityClass.ALMOST
    return AdmissibilityClass.ADMISSIBLE


def bad_cycle(O: PartialOrientation, A: ParameterList):
    """Some potential cycle with nonpositive score, as a list of steps, or None."""
    n = O.graph.n
    return _negative_cycle(n, _lex_arcs(n, _integer_arcs(O, A)))


def validate_parameters(G: SimpleGraph, A: ParameterList) -> None:
    """Raise :class:`InvalidParameters` unless the central region is nonempty."""
    witness = bad_cycle(PartialOrientation.empty(G), A)
    if witness is not None:
        score = sum(A[s] for s in witness)
        raise InvalidParameters(
            f"no central region: cycle {witness} has score {score}", witness=witness)


def _reachable(n: int, arcs, src: int) -> set:
    out = {v: [] for v in range(1, n + 1)}
    for u, v, _ in arcs:
        out[u].append(v)
    seen = {src}
    stack = [src]
    while stack:
        x = stack.pop()
        for y in out[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _bounded_given_arcs(O: PartialOrientation, arcs) -> bool:
    cache = {}
    for u, v in O.steps:
        if v not in cache:
            cache[v] = _reachable(O.graph.n, arcs, v)
        if u not in cache[v]:
            return False
    return True


def is_relatively_bounded(O: PartialOrientation, A: ParameterList) -> bool:
    """Whether every oriented step of an admissible O lies on a potential cycle."""
    if classify(O, A) is not AdmissibilityClass.ADMISSIBLE:
        raise PreconditionError("orientation is not admissible")
    return _bounded_given_arcs(O, _integer_arcs(O, A))


def all_orientations(G: SimpleGraph, max_edges: int = DEFAULT_MAX_EDGES):
    if len(G.edges) > max_edges:
        raise CapExceeded(f"|E| = {len(G.edges)} exceeds the cap of {max_edges} edges")
    for states in itertools.product(EDGE_STATES, repeat=len(G.edges)):
        yield PartialOrientation(G, states)


def census(G: SimpleGraph, A: ParameterList, max_edges: int = DEFAULT_MAX_EDGES) -> RegionCensus:
    """Classify all ``3^|E|`` partial orientations."""
    validate_parameters(G, A)
    if len(G.edges) > max_edges:
        raise CapExceeded(f"|E| = {len(G.edges)} exceeds the cap of {max_edges} edges")
    n = G.n
    a = A.scaled
    per_edge = []
    for i, j in G.edges:
        plain = {s: _edge_arcs(i, j, s, a) for s in EDGE_STATES}
        lex = {s: tuple(_lex_arcs(n, plain[s])) for s in EDGE_STATES}
        per_edge.append((plain, lex))
    g = len(G.edges)
    p = [0] * (g + 1)
    r = b = almost = far = 0
    for states in itertools.product(EDGE_STATES, repeat=g):
        arcs = [x for (plain, _), s in zip(per_edge, states) for x in plain[s]]
        if _has_negative_cycle(n, arcs):
            far += 1
            continue
        lex = [x for (_, lx), s in zip(per_edge, states) for x in lx[s]]
        if _has_negative_cycle(n, lex):
            almost += 1
            continue
        r += 1
        k = g - states.count(BLANK)
        p[k] += 1
        if _bounded_given_arcs(PartialOrientation(G, states), arcs):
            b += 1
    return RegionCensus(r=r, b=b, almost=almost, far=far, p=p)


def admissible_orientations(G: SimpleGraph, A: ParameterList, max_edges: int = DEFAULT_MAX_EDGES) -> list:
    return [O for O in all_orientations(G, max_edges) if classify(O, A) is AdmissibilityClass.ADMISSIBLE]


# zero cycles of almost-admissible orientations

def _all_pairs_shortest(n: int, arcs):
    INF = None
    d = [[INF] * (n + 1) for _ in range(n + 1)]
    for v in range(1, n + 1):
        d[v][v] = 0
    for u, v, w in arcs:
        if d[u][v] is None or w < d[u][v]:
            d[u][v] = w
    for k in range(1, n + 1):
        dk = d[k]
        for i in range(1, n + 1):
            dik = d[i][k]
            if dik is None:
                continue
            di = d[i]
            for j in range(1, n + 1):
                if dk[j] is None:
                    continue
                cand = dik + dk[j]
                if di[j] is None or cand < di[j]:
                    di[j] = cand
    return d


def _directed_simple_cycles(n: int, arcs, max_cycles: int):
    """Simple directed cycles (length >= 2) as tuples of vertices, least vertex first."""
    out_nb = {v: [] for v in range(1, n + 1)}
    for u, v, _ in arcs:
        out_nb[u].append(v)
    for v in out_nb:
        out_nb[v].sort()
    found = []

    def extend(start, path, on_path):
        for nb in out_nb[path[-1]]:
            if nb == start:
                found.append(tuple(path))
                if len(found) > max_cycles:
                    raise CapExceeded(f"more than {max_cycles} zero-score cycles")
            elif nb > start and nb not in on_path:
                path.append(nb)
                on_path.add(nb)
                extend(start, path, on_path)
                on_path.discard(nb)
                path.pop()

    for s in range(1, n + 1):
        extend(s, [s], {s})
    return found


def zero_cycles(O: PartialOrientation, A: ParameterList, max_cycles: int = DEFAULT_MAX_CYCLES) -> list:
    """All simple potential cycles of O with score 0, as tuples of steps."""
    n = O.graph.n
    arcs = _integer_arcs(O, A)
    d = _all_pairs_shortest(n, arcs)
    tight = [(u, v, w) for u, v, w in arcs if d[v][u] is not None and w + d[v][u] == 0]
    weight = {(u, v): w for u, v, w in tight}
    out = []
    for cyc in _directed_simple_cycles(n, tight, max_cycles):
        steps = tuple((cyc[k], cyc[(k + 1) % len(cyc)]) for k in range(len(cyc)))
        if sum(weight[s] for s in steps) == 0:
            out.append(steps)
    return out


def _max_disjoint(cycles) -> int:
    sets = [frozenset(c) for c in cycles]
    best = 0

    def search(k, used, count):
        nonlocal best
        if count + (len(sets) - k) <= best:
            return
        if k == len(sets):
            best = max(best, count)
            return
        if not (sets[k] & used):
            search(k + 1, used | sets[k], count + 1)
        search(k + 1, used, count)

    search(0, frozenset(), 0)
    return best


def zero_cycle_stats(O: PartialOrientation, A: ParameterList, max_cycles: int = DEFAULT_MAX_CYCLES):
    """``(w, z)`` for an almost-admissible O.

    ``w`` counts compatible steps lying on some zero-score potential cycle.
    ``z`` is the largest number of pairwise step-disjoint zero-score cycles.
    """
    if classify(O, A) is not AdmissibilityClass.ALMOST:
        raise PreconditionError("orientation is not almost-admissible")
    n = O.graph.n
    arcs = _integer_arcs(O, A)
    d = _all_pairs_shortest(n, arcs)
    w = sum(1 for u, v, x in arcs if d[v][u] is not None and x + d[v][u] == 0)
    z = _max_disjoint(zero_cycles(O, A, max_cycles))
    return w, z


def region_count_bounds(G: SimpleGraph, A: ParameterList, max_edges: int = DEFAULT_MAX_EDGES,
                        max_cycles: int = DEFAULT_MAX_CYCLES):
    """Bracket for ``r(GEN) - r(A)``: sums of ``2^-w`` and ``2^-z`` over almost-admissible O."""
    validate_parameters(G, A)
    lower = upper = Fraction(0)
    for O in all_orientations(G, max_edges):
        if classify(O, A) is AdmissibilityClass.ALMOST:
            w, z = zero_cycle_stats(O, A, max_cycles)
            lower += Fraction(1, 2 ** w)
            upper += Fraction(1, 2 ** z)
    return lower, upper


# building admissible orientations with a prescribed indegree sequence

def _extend_across(O: PartialOrientation, A: ParameterList, W: set) -> PartialOrientation:
    """Orient one blank edge from outside ``W`` into ``W``, keeping O admissible.

    Each failed attempt ``(u, w)`` yields a bad cycle which must leave ``W``
    again through a blank step ``(w', u')``; the next attempt is ``(u', w')``.
    """
    crossing = sorted((u, w) for w in W for u in O.graph.adjacency[w]
                      if u not in W and O.state(u, w) == BLANK)
    if not crossing:
        raise PreconditionError("no blank edge enters W")
    u, w = crossing[0]
    tried = set()
    while True:
        candidate = O.with_step(u, w)
        cyc = bad_cycle(candidate, A)
        if cyc is None:
            return candidate
        if (u, w) in tried:
            raise AssertionError("extension did not terminate; is O admissible?")
        tried.add((u, w))
        if (u, w) not in cyc:
            raise AssertionError("bad cycle avoids the new step; is O admissible?")
        k = cyc.index((u, w))
        rotated = cyc[k:] + cyc[:k]
        exit_step = next((x, y) for x, y in rotated if x in W and y not in W)
        u, w = exit_step[1], exit_step[0]


def realize_indegree(G: SimpleGraph, A: ParameterList, target: PartialOrientation) -> PartialOrientation:
    """An A-admissible orientation with the same indegree sequence as ``target``."""
    if not target.is_acyclic():
        raise PreconditionError("target orientation has a directed cycle")
    goal = target.indegree
    O = PartialOrientation.empty(G)
    for _ in range(len(target)):
        W = {v for v in G.vertices if O.indegree[v - 1] < goal[v - 1]}
        if not W:
            break
        O = _extend_across(O, A, W)
    if O.indegree != goal:
        raise AssertionError("indegree realization failed")
    return O
