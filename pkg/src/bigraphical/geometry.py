"""Exact strict feasibility and the region-by-region geometry of the arrangement.

Feasibility is decided by Fourier-Motzkin elimination over ``Fraction``
with strictness tracking; every witness point is re-checked against the
original system before it is returned.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import CapExceeded, PreconditionError
from .graph import SimpleGraph
from .orientations import (
    BLANK,
    DEFAULT_MAX_EDGES,
    AdmissibilityClass,
    ParameterList,
    PartialOrientation,
    admissible_orientations,
    classify,
    validate_parameters,
)

DEFAULT_MAX_CONSTRAINTS = 20_000

LESS = "<"
LESS_EQUAL = "<="
EQUAL = "="


@dataclass(frozen=True)
class LinearConstraint:
    """``coeffs . x  (relation)  rhs``."""

    coeffs: tuple
    rhs: Fraction
    relation: str = LESS

    def __post_init__(self):
        if not any(self.coeffs):
            raise ValueError("constraint has an all-zero coefficient vector")
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def holds(self, x) -> bool:
        lhs = sum(c * v for c, v in zip(self.coeffs, x) if c)
        if self.relation == LESS:
            return lhs < self.rhs
        if self.relation == LESS_EQUAL:
            return lhs <= self.rhs
        return lhs == self.rhs

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            terms.append(f"{sign} {mag}x_{k}")
        lhs = " ".join(terms).lstrip("+ ")
        return f"{lhs} {self.relation} {self.rhs}"


@dataclass(frozen=True)
class ConstraintSystem:
    nvars: int
    constraints: tuple

    def satisfied_by(self, x) -> bool:
        return all(c.holds(x) for c in self.constraints)


def difference_constraint(n: int, i: int, j: int, rhs, relation=LESS) -> LinearConstraint:
    """``x_i - x_j (relation) rhs`` over variables ``x_1..x_n``."""
    coeffs = [0] * n
    coeffs[i - 1] = 1
    coeffs[j - 1] = -1
    return LinearConstraint(tuple(coeffs), rhs, relation)


def region_system(O: PartialOrientation, A: ParameterList) -> ConstraintSystem:
    n = O.graph.n
    rows = []
    for (i, j), s in zip(O.graph.edges, O.states):
        if s == BLANK:
            rows.append(difference_constraint(n, i, j, A[(i, j)]))
            rows.append(difference_constraint(n, j, i, A[(j, i)]))
        else:
            u, v = (i, j) if s > 0 else (j, i)
            rows.append(difference_constraint(n, u, v, -A[(v, u)]))
    return ConstraintSystem(n, tuple(rows))


# Fourier-Motzkin

def _normalize(coeffs, rhs, strict):
    """Divide by the gcd of the (integer) coefficients so equal directions compare equal."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    if g == 0:
        return (), rhs * den, strict
    return tuple(c // g for c in ints), rhs * den / g, strict


def _add_row(table, coeffs, rhs, strict):
    """Keep only the tightest bound per direction."""
    old = table.get(coeffs)
    if old is None or rhs < old[0] or (rhs == old[0] and strict and not old[1]):
        table[coeffs] = (rhs, strict)


def _substitute_equalities(system: ConstraintSystem):
    """Eliminate variables through the equalities.

    Returns ``(rows, substitutions)`` where rows are inequality triples and
    each substitution ``(k, coeffs, rhs)`` means ``x_k = rhs - sum(coeffs . x)``
    with ``coeffs[k] == 0``; or ``None`` if the equalities are inconsistent.
    """
    n = system.nvars
    eqs = [([Fraction(c) for c in con.coeffs], Fraction(con.rhs))
           for con in system.constraints if con.relation == EQUAL]
    ineqs = [([Fraction(c) for c in con.coeffs], Fraction(con.rhs), con.relation == LESS)
             for con in system.constraints if con.relation != EQUAL]
    subs = []
    while eqs:
        coeffs, rhs = eqs.pop()
        k = next((t for t in range(n) if coeffs[t] != 0), None)
        if k is None:
            if rhs != 0:
                return None
            continue
        piv = coeffs[k]
        expr = [c / piv for c in coeffs]
        expr[k] = Fraction(0)
        value = rhs / piv
        subs.append((k, expr, value))

        def plug(cs, r):
            f = cs[k]
            if f == 0:
                return cs, r
            new = [c - f * e for c, e in zip(cs, expr)]
            new[k] = Fraction(0)
            return new, r - f * value

        eqs = [plug(cs, r) for cs, r in eqs]
        ineqs = [(*plug(cs, r), s) for cs, r, s in ineqs]
    return ineqs, subs


def _pick_between(lo, lo_strict, hi, hi_strict):
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1 if hi_strict else hi
    if hi is None:
        return lo + 1 if lo_strict else lo
    if lo == hi:
        return lo
    return (lo + hi) / 2


def strict_feasible(system: ConstraintSystem, max_constraints: int = DEFAULT_MAX_CONSTRAINTS):
    """A rational point satisfying every constraint, or None if there is none.

    Strict and non-strict inequalities and equalities are all supported. A
    combined row is strict when either parent is. Raises :class:`CapExceeded`
    if an elimination step would hold more than ``max_constraints`` rows.
    """
    n = system.nvars
    prepared = _substitute_equalities(system)
    if prepared is None:
        return None
    ineqs, subs = prepared

    table = {}
    for cs, r, s in ineqs:
        key, rhs, strict = _normalize(cs, r, s)
        if not key:
            if rhs < 0 or (rhs == 0 and strict):
                return None
            continue
        _add_row(table, key, rhs, strict)

    history = []  # rows in force just before each variable is eliminated
    for k in range(n):
        rows = list(table.items())
        history.append((k, rows))
        pos = [(c, r) for c, r in rows if c[k] > 0]
        neg = [(c, r) for c, r in rows if c[k] < 0]
        nxt = {c: r for c, r in rows if c[k] == 0}
        if len(nxt) + len(pos) * len(neg) > max_constraints:
            raise CapExceeded(f"elimination would exceed {max_constraints} constraints")
        for cp, (rp, sp) in pos:
            for cn, (rn, sn) in neg:
                fp, fn = -cn[k], cp[k]  # both positive
                combo = tuple(fp * a + fn * b for a, b in zip(cp, cn))
                rhs = fp * rp + fn * rn
                strict = sp or sn
                key, rhs, strict = _normalize(combo, rhs, strict)
                if not key:
                    if rhs < 0 or (rhs == 0 and strict):
                        return None
                    continue
                _add_row(nxt, key, rhs, strict)
        table = nxt

    # back-substitute in reverse elimination order
    x = [Fraction(0)] * n
    sub_vars = {k for k, _, _ in subs}
    for k, rows in reversed(history):
        if k in sub_vars:
            continue
        lo = hi = None
        lo_strict = hi_strict = False
        for c, (r, s) in rows:
            if c[k] == 0:
                continue
            rest = sum(c[t] * x[t] for t in range(n) if t != k and c[t])
            bound = (r - rest) / c[k]
            if c[k] > 0:
                if hi is None or bound < hi or (bound == hi and s):
                    hi, hi_strict = bound, s
            else:
                if lo is None or bound > lo or (bound == lo and s):
                    lo, lo_strict = bound, s
        x[k] = _pick_between(lo, lo_strict, hi, hi_strict)
    for k, expr, value in reversed(subs):
        x[k] = value - sum(e * v for e, v in zip(expr, x))

    if not system.satisfied_by(x):
        raise AssertionError("Fourier-Motzkin witness failed re-verification")
    return tuple(x)


# adjacency and the breadth-first labeling

def _differing_edge(O: PartialOrientation, O2: PartialOrientation):
    diff = [k for k, (s, t) in enumerate(zip(O.states, O2.states)) if s != t]
    if len(diff) != 1:
        raise PreconditionError(f"orientations differ on {len(diff)} edges, expected exactly 1")
    k = diff[0]
    if BLANK not in (O.states[k], O2.states[k]):
        raise PreconditionError("neither orientation is blank on the differing edge")
    return k


def facet_adjacent(O: PartialOrientation, O2: PartialOrientation, A: ParameterList) -> bool:
    """Whether the two regions share a facet on the hyperplane separating them.

    Adds the crossing hyperplane as an equality to the strict constraints
    common to both regions and asks for a point.
    """
    k = _differing_edge(O, O2)
    for P in (O, O2):
        if classify(P, A) is not AdmissibilityClass.ADMISSIBLE:
            raise PreconditionError(f"orientation {P} is not admissible")
    G = O.graph
    i, j = G.edges[k]
    oriented = O2 if O.states[k] == BLANK else O
    u, v = (i, j) if oriented.states[k] > 0 else (j, i)
    # (u, v) oriented means x_v - x_u > a_vu; the facet lies on x_v - x_u = a_vu
    n = G.n
    other = set(region_system(O2, A).constraints)
    common = [c for c in region_system(O, A).constraints if c in other]
    common.append(difference_constraint(n, v, u, A[(v, u)], EQUAL))
    return strict_feasible(ConstraintSystem(n, tuple(common))) is not None


def _neighbours(O: PartialOrientation):
    for k, s in enumerate(O.states):
        choices = (1, -1) if s == BLANK else (BLANK,)
        for t in choices:
            states = list(O.states)
            states[k] = t
            yield k, PartialOrientation(O.graph, tuple(states))


def pak_stanley_bfs(G: SimpleGraph, A: ParameterList, max_edges: int = DEFAULT_MAX_EDGES) -> dict:
    """Label regions outward from the central region, adding ``v_j`` at each upward crossing.

    Crossing ``x_j - x_i = a_ji`` from ``x_j - x_i < a_ji`` into
    ``x_j - x_i > a_ji`` adds one chip at ``v_j``; the reverse crossing removes it.
    """
    validate_parameters(G, A)
    regions = set(admissible_orientations(G, A, max_edges))
    start = PartialOrientation.empty(G)
    labels = {start: (0,) * G.n}
    queue = deque([start])
    while queue:
        R = queue.popleft()
        c = labels[R]
        for k, R2 in _neighbours(R):
            if R2 in labels or R2 not in regions:
                continue
            if not facet_adjacent(R, R2, A):
                continue
            i, j = G.edges[k]
            if R.states[k] == BLANK:
                head = j if R2.states[k] > 0 else i
                delta = 1
            else:
                head = j if R.states[k] > 0 else i
                delta = -1
            new = list(c)
            new[head - 1] += delta
            labels[R2] = tuple(new)
            queue.append(R2)
    return labels
