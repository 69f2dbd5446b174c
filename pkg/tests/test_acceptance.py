"""Acceptance suite: one test per criterion, run with ``pytest tests/test_acceptance.py``.

The terminal summary prints a PASS/FAIL line per criterion.
"""

import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from bigraphical import (
    AdmissibilityClass,
    Multigraph,
    build_graph,
    census,
    classify,
    complete_graph,
    cycle_closed_forms,
    cycle_graph,
    dipole,
    dual_check,
    enumerate_parking,
    acyclic_indeg_set,
    pak_stanley_bfs,
    pak_stanley_labels,
    path_graph,
    preset,
    realize_indegree,
    region_count_bounds,
    region_system,
    sample_generic,
    sink_extension,
    spanning_tree_count,
    strict_feasible,
    tutte,
)
from bigraphical.orientations import admissible_orientations, all_orientations
from bigraphical.polynomials import dual_probabilities, generic_region_counts

from conftest import connected_family, parameter_family

FAMILY = connected_family(6)


def elapsed(start):
    return time.perf_counter() - start


def random_connected_graph(rng, n_max=6, e_max=8):
    """Uniform spanning-tree skeleton plus random extra edges."""
    n = rng.randint(2, n_max)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    edges = {tuple(sorted((order[k], order[rng.randrange(k)]))) for k in range(1, n)}
    others = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if (i, j) not in edges]
    rng.shuffle(others)
    extra = rng.randint(0, min(len(others), e_max - len(edges)))
    return build_graph(n, sorted(edges | set(others[:extra])))


@pytest.mark.acceptance(1, "K_3 SEMI/SHI regions and labels")
def test_criterion_1():
    start = time.perf_counter()
    K3 = complete_graph(3)
    pf = enumerate_parking(sink_extension(K3))
    assert len(pf) == 16
    semi, shi = preset(K3, "semi"), preset(K3, "shi")
    assert census(K3, semi).r == 19
    assert census(K3, shi).r == 16
    assert pak_stanley_labels(K3, semi) == pf
    assert pak_stanley_labels(K3, shi) == pf
    assert elapsed(start) < 1


@pytest.mark.acceptance(2, "Shi counts (n+1)^(n-1), n = 2..5")
def test_criterion_2():
    for n in range(2, 6):
        start = time.perf_counter()
        G = complete_graph(n)
        assert census(G, preset(G, "shi")).r == (n + 1) ** (n - 1)
        assert elapsed(start) < 30


@pytest.mark.acceptance(3, "cycle closed forms, n = 3..8")
def test_criterion_3():
    start = time.perf_counter()
    for n in range(3, 9):
        G = cycle_graph(n)
        for kind in ("semi", "shi"):
            c = census(G, preset(G, kind))
            assert (c.r, c.b) == cycle_closed_forms(n, kind), (n, kind)
    assert cycle_closed_forms(4, "shi")[0] == 61 and cycle_closed_forms(4, "semi")[0] == 59
    assert elapsed(start) < 120


@pytest.mark.acceptance(4, "generic regions = 2^(n-1) T(3/2,1), bounded = 2^(n-1) T(1/2,1)")
def test_criterion_4():
    rng = random.Random(20240601)
    graphs = [random_connected_graph(rng) for _ in range(20)]
    assert all(G.is_connected() and G.n <= 6 and len(G.edges) <= 8 for G in graphs)
    for G in graphs:
        T = tutte(G)
        scale = 2 ** (G.n - 1)
        expected = (scale * T(Fraction(3, 2), 1), scale * T(Fraction(1, 2), 1))
        for seed in (1, 2, 3):
            c = census(G, sample_generic(G, seed))
            assert (c.r, c.b) == expected, (G, seed)


@pytest.mark.acceptance(5, "classification agrees with strict feasibility")
def test_criterion_5():
    mismatches = []
    for G in FAMILY:
        for A in parameter_family(G):
            for O in all_orientations(G):
                admissible = classify(O, A) is AdmissibilityClass.ADMISSIBLE
                feasible = strict_feasible(region_system(O, A)) is not None
                if admissible != feasible:
                    mismatches.append((G, A.name, O))
    assert mismatches == []


@pytest.mark.acceptance(6, "parking triple agreement and cardinality")
def test_criterion_6():
    P3 = path_graph(3)
    assert sorted(enumerate_parking(sink_extension(P3))) == sorted(
        [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1)])
    for G in FAMILY:
        Gs = sink_extension(G)
        pf = enumerate_parking(Gs)
        assert acyclic_indeg_set(G) == pf
        assert len(pf) == spanning_tree_count(Gs)
        for A in parameter_family(G):
            assert pak_stanley_labels(G, A) == pf, (G, A.name)


@pytest.mark.acceptance(7, "zero-cycle bounds on C_4")
def test_criterion_7():
    C4 = cycle_graph(4)
    r_gen, _ = generic_region_counts(C4)
    assert region_count_bounds(C4, preset(C4, "semi")) == (Fraction(3, 4), 6)
    assert r_gen - census(C4, preset(C4, "semi")).r == 6
    lower, upper = region_count_bounds(C4, preset(C4, "shi"))
    assert upper == 4
    gap = r_gen - census(C4, preset(C4, "shi")).r
    assert gap == 4 and lower <= gap <= upper


@pytest.mark.acceptance(8, "dual connectivity = generic admissibility")
def test_criterion_8():
    pairs = [
        (cycle_graph(3), dipole(3), Fraction(19, 27)),
        (cycle_graph(4), dipole(4), Fraction(65, 81)),
        (complete_graph(4), Multigraph.from_simple(complete_graph(4)), None),
    ]
    for G, D, expected in pairs:
        connectivity, admissibility = dual_probabilities(G, D)
        assert isinstance(connectivity, Fraction) and isinstance(admissibility, Fraction)
        assert connectivity == admissibility
        if expected is not None:
            assert connectivity == expected
        assert dual_check(G, D)


@pytest.mark.acceptance(9, "every parking function realized by an admissible orientation")
def test_criterion_9():
    for G in FAMILY:
        pf = enumerate_parking(sink_extension(G))
        targets = [O for O in all_orientations(G) if O.is_acyclic()]
        for A in (preset(G, "semi"), preset(G, "shi"), sample_generic(G, 1)):
            seen = set()
            for target in targets:
                O = realize_indegree(G, A, target)
                assert O.indegree == target.indegree
                assert classify(O, A) is AdmissibilityClass.ADMISSIBLE
                seen.add(O.indegree)
            assert seen == pf


@pytest.mark.acceptance(10, "breadth-first labels equal indegrees on every region")
def test_criterion_10():
    for G in FAMILY:
        for A in parameter_family(G):
            labels = pak_stanley_bfs(G, A)
            regions = admissible_orientations(G, A)
            assert len(labels) == census(G, A).r == len(regions)
            assert set(labels) == set(regions)
            assert all(O.indegree == c for O, c in labels.items())
