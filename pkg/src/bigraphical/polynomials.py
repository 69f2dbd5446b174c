"""Tutte polynomial, the generic characteristic polynomial, and reliability.

Everything here is exact: integer coefficients for the Tutte polynomial and
``Fraction`` arithmetic for evaluations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import CapExceeded, InputError, VerificationError
from .graph import Multigraph, SimpleGraph

DEFAULT_TUTTE_CAP = 18
DEFAULT_BRUTE_CAP = 16


@dataclass(frozen=True)
class BiPoly:
    """Integer polynomial in ``x, y``; ``coeffs`` maps ``(a, b)`` to the coefficient of ``x^a y^b``."""

    coeffs: tuple  # sorted ((a, b), c) pairs with c != 0

    @classmethod
    def from_dict(cls, d) -> "BiPoly":
        return cls(tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __call__(self, x, y) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        return sum((c * x ** a * y ** b for (a, b), c in self.coeffs), Fraction(0))

    def __add__(self, other):
        d = self.as_dict()
        for k, v in other.coeffs:
            d[k] = d.get(k, 0) + v
        return BiPoly.from_dict(d)

    def __mul__(self, other):
        d = {}
        for (a1, b1), c1 in self.coeffs:
            for (a2, b2), c2 in other.coeffs:
                k = (a1 + a2, b1 + b2)
                d[k] = d.get(k, 0) + c1 * c2
        return BiPoly.from_dict(d)

    def swap(self) -> "BiPoly":
        return BiPoly.from_dict({(b, a): c for (a, b), c in self.coeffs})

    def to_json(self) -> dict:
        return {f"x^{a} y^{b}": c for (a, b), c in self.coeffs}

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for (a, b), c in sorted(self.coeffs, key=lambda t: (-t[0][0] - t[0][1], -t[0][0])):
            mono = "*".join(p for p in (_power("x", a), _power("y", b)) if p)
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")


@dataclass(frozen=True)
class UniPoly:
    """Rational polynomial in ``t``; ``coeffs[k]`` multiplies ``t^k``."""

    coeffs: tuple

    @classmethod
    def from_list(cls, cs) -> "UniPoly":
        cs = [Fraction(c) for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def to_json(self) -> dict:
        return {f"t^{k}": str(c) for k, c in enumerate(self.coeffs) if c}

    def __str__(self):
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = _power("t", k)
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _power(var, k):
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


# multigraph plumbing on 0-based edge lists

def _as_edges(graph):
    if isinstance(graph, (SimpleGraph, Multigraph)):
        return graph.n, [(i - 1, j - 1) for i, j in graph.edges]
    raise InputError(f"expected a graph, got {type(graph).__name__}")


def _rank(n, edges) -> int:
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    r = 0
    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            r += 1
    return r


def _canonical_key(n, edges):
    """Sound memo key: the edge multiset after a degree-refined relabeling.

    Ties are broken by original index, so isomorphic graphs may get different
    keys; equal keys always mean isomorphic graphs.
    """
    nbrs = [[] for _ in range(n)]
    for i, j in edges:
        nbrs[i].append(j)
        if i != j:
            nbrs[j].append(i)
    colour = [len(nb) for nb in nbrs]
    for _ in range(3):
        sig = [(colour[v], tuple(sorted(colour[u] for u in nbrs[v]))) for v in range(n)]
        ranks = {s: k for k, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if new == colour:
            break
        colour = new
    order = sorted(range(n), key=lambda v: (colour[v], v))
    relabel = {v: k for k, v in enumerate(order)}
    return n, tuple(sorted(tuple(sorted((relabel[i], relabel[j]))) for i, j in edges))


def _is_bridge(n, edges, idx) -> bool:
    i, j = edges[idx]
    if i == j:
        return False
    rest = edges[:idx] + edges[idx + 1:]
    return _rank(n, rest) < _rank(n, edges)


def _tutte_rec(n, edges, memo):
    key = _canonical_key(n, edges)
    if key in memo:
        return memo[key]
    loops = sum(1 for i, j in edges if i == j)
    rest = [e for e in edges if e[0] != e[1]]
    chosen = None
    bridges = 0
    for k in range(len(rest)):
        if _is_bridge(n, rest, k):
            bridges += 1
        elif chosen is None:
            chosen = k
    if chosen is None:
        result = BiPoly.from_dict({(bridges, loops): 1})
    else:
        i, j = rest[chosen]
        deleted = rest[:chosen] + rest[chosen + 1:]
        # contract j into i, then drop vertex j by shifting higher labels down
        def squash(v):
            v = i if v == j else v
            return v - 1 if v > j else v
        contracted = [(squash(a), squash(b)) for a, b in deleted]
        result = _tutte_rec(n, deleted, memo) + _tutte_rec(n - 1, contracted, memo)
        result = result * BiPoly.from_dict({(0, loops): 1})
    memo[key] = result
    return result


def tutte(graph, max_edges: int = DEFAULT_TUTTE_CAP) -> BiPoly:
    """Tutte polynomial by memoized deletion-contraction."""
    n, edges = _as_edges(graph)
    if len(edges) > max_edges:
        raise CapExceeded(f"|E| = {len(edges)} exceeds the Tutte cap of {max_edges}")
    return _tutte_rec(n, edges, {})


def tutte_corank_nullity(graph, max_edges: int = DEFAULT_BRUTE_CAP) -> BiPoly:
    """Tutte polynomial as the subset expansion (brute force oracle)."""
    n, edges = _as_edges(graph)
    if len(edges) > max_edges:
        raise CapExceeded(f"|E| = {len(edges)} exceeds the brute-force cap of {max_edges}")
    rE = _rank(n, edges)
    total = {}
    for mask in range(1 << len(edges)):
        S = [edges[k] for k in range(len(edges)) if mask >> k & 1]
        rS = _rank(n, S)
        a, b = rE - rS, len(S) - rS
        # expand (x-1)^a (y-1)^b
        for p in range(a + 1):
            for q in range(b + 1):
                c = comb(a, p) * comb(b, q) * (-1) ** (a - p + b - q)
                total[(p, q)] = total.get((p, q), 0) + c
    return BiPoly.from_dict(total)


def forest_counts(graph, max_edges: int = DEFAULT_BRUTE_CAP) -> list:
    """``f[i]`` = number of forests with ``i`` edges."""
    n, edges = _as_edges(graph)
    if len(edges) > max_edges:
        raise CapExceeded(f"|E| = {len(edges)} exceeds the brute-force cap of {max_edges}")
    f = [0] * (n + 1)
    for size in range(len(edges) + 1):
        for S in itertools.combinations(edges, size):
            if _rank(n, S) == size:
                f[size] += 1
    return f[: _rank(n, edges) + 1]


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for a, x in enumerate(p):
        for b, y in enumerate(q):
            out[a + b] += x * y
    return out


def char_poly_generic(G: SimpleGraph, max_edges: int = DEFAULT_TUTTE_CAP) -> UniPoly:
    """Characteristic polynomial of a generic bigraphical arrangement of G.

    Computed as the forest sum and again by substituting into the Tutte
    polynomial; a disagreement raises :class:`VerificationError`.
    For ``k`` components the substitution reads ``(-2)^(n-k) t^k T(1 - t/2, 1)``.
    """
    n = G.n
    f = forest_counts(G, max_edges=max_edges)
    by_forests = [Fraction(0)] * (n + 1)
    for i, count in enumerate(f):
        by_forests[n - i] += (-2) ** i * count
    forest_poly = UniPoly.from_list(by_forests)

    T = tutte(G, max_edges)
    k = len(G.components()) if n else 0
    x_sub = [Fraction(1), Fraction(-1, 2)]  # 1 - t/2
    acc = [Fraction(0)]
    for (a, _b), c in T.coeffs:  # y = 1
        term = [Fraction(c)]
        for _ in range(a):
            term = _poly_mul(term, x_sub)
        acc = [x + y for x, y in itertools.zip_longest(acc, term, fillvalue=Fraction(0))]
    scaled = [c * (-2) ** (n - k) for c in acc]
    tutte_poly = UniPoly.from_list([Fraction(0)] * k + scaled)

    if forest_poly != tutte_poly:
        raise VerificationError(f"forest sum {forest_poly} != Tutte substitution {tutte_poly}")
    return forest_poly


def generic_region_counts(G: SimpleGraph, max_edges: int = DEFAULT_TUTTE_CAP):
    """``(r, b)`` for a generic arrangement, from the characteristic polynomial."""
    chi = char_poly_generic(G, max_edges)
    r, b = abs(chi(-1)), abs(chi(1))
    T = tutte(G, max_edges)
    k = len(G.components()) if G.n else 0
    scale = 2 ** (G.n - k)
    if r != scale * T(Fraction(3, 2), 1) or b != abs(scale * T(Fraction(1, 2), 1)):
        raise VerificationError("Zaslavsky counts disagree with Tutte evaluations")
    return int(r), int(b)


def _components_count(n, edges) -> int:
    return n - _rank(n, edges)


def reliability_brute(graph, p, max_edges: int = DEFAULT_BRUTE_CAP) -> Fraction:
    """Probability that deleting each edge independently with probability ``p``
    leaves the component count unchanged."""
    n, edges = _as_edges(graph)
    if len(edges) > max_edges:
        raise CapExceeded(f"|E| = {len(edges)} exceeds the brute-force cap of {max_edges}")
    p = Fraction(p)
    q = 1 - p
    k = _components_count(n, edges)
    m = len(edges)
    total = Fraction(0)
    for mask in range(1 << m):
        kept = [edges[t] for t in range(m) if mask >> t & 1]
        if _components_count(n, kept) == k:
            s = len(kept)
            total += q ** s * p ** (m - s)
    return total


def reliability_tutte(graph, p, max_edges: int = DEFAULT_TUTTE_CAP) -> Fraction:
    n, edges = _as_edges(graph)
    p = Fraction(p)
    k = _components_count(n, edges)
    T = tutte(graph, max_edges)
    if p == 0:
        return Fraction(1)
    return (1 - p) ** (n - k) * p ** (len(edges) - n + k) * T(1, 1 / p)


def reliability(graph, p, max_edges: int = DEFAULT_BRUTE_CAP) -> Fraction:
    """All-terminal reliability, by subset enumeration and by the Tutte formula."""
    brute = reliability_brute(graph, p, max_edges)
    formula = reliability_tutte(graph, p)
    if brute != formula:
        raise VerificationError(f"reliability mismatch: brute force {brute}, Tutte formula {formula}")
    return brute


def dual_probabilities(G: SimpleGraph, Gdual: Multigraph):
    """The two probabilities of the planar-duality identity.

    Returns ``(connectivity, admissibility)``: the chance that ``Gdual`` stays
    connected after deleting edges with probability 2/3, and the fraction of
    the ``3^|E|`` partial orientations of G that are generic-admissible.
    """
    faces = Gdual.n
    if len(Gdual.edges) != len(G.edges):
        raise InputError(f"dual has {len(Gdual.edges)} edges, G has {len(G.edges)}")
    if not G.is_connected() or G.n - len(G.edges) + faces != 2:
        raise InputError(f"Euler check failed: {G.n} - {len(G.edges)} + {faces} != 2")
    connectivity = reliability(Gdual, Fraction(2, 3))
    r, _ = generic_region_counts(G)
    return connectivity, Fraction(r, 3 ** len(G.edges))


def dual_check(G: SimpleGraph, Gdual: Multigraph) -> bool:
    connectivity, admissibility = dual_probabilities(G, Gdual)
    return connectivity == admissibility


def cycle_closed_forms(n: int, kind: str):
    """``(r, b)`` for the cycle ``C_n`` under the semiorder or Shi parameters."""
    if n < 3:
        raise InputError("cycles need n >= 3")
    r_gen, b_gen = 3 ** n - 2 ** n, 2 ** n - 1
    if kind == "semi":
        loss = comb(n, n // 2) if n % 2 == 0 else 0
    elif kind == "shi":
        loss = n
    else:
        raise InputError(f"closed forms exist for semi and shi, not {kind!r}")
    return r_gen - loss, b_gen - loss
