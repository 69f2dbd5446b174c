import itertools
from fractions import Fraction

import pytest

from bigraphical import build_graph, complete_graph, cycle_graph, path_graph, preset, sample_generic
from bigraphical.orientations import PartialOrientation, step_score


@pytest.fixture
def K3():
    return complete_graph(3)


@pytest.fixture
def P3():
    return path_graph(3)


@pytest.fixture
def C4():
    return cycle_graph(4)


@pytest.fixture
def K4():
    return complete_graph(4)


@pytest.fixture
def five_vertex():
    """The five-vertex orientation drawn next to the admissibility definition."""
    G = build_graph(5, [(1, 2), (1, 5), (3, 4), (4, 5), (2, 5), (2, 3)])
    return G, PartialOrientation.from_steps(G, [(1, 2), (5, 2), (2, 3)])


def connected_family(max_edges=6):
    """All connected graphs with at most ``max_edges`` edges, up to isomorphism."""
    import networkx as nx

    out = []
    for H in nx.graph_atlas_g():
        if H.number_of_nodes() == 0 or H.number_of_edges() > max_edges or not nx.is_connected(H):
            continue
        out.append(build_graph(H.number_of_nodes(), [(i + 1, j + 1) for i, j in H.edges()]))
    return out


def parameter_family(G):
    """SEMI, SHI, one interval list and three certified generic samples."""
    eta = [1 + (k % 3) for k in range(G.n)]
    return [preset(G, "semi"), preset(G, "shi"), preset(G, "interval", eta)] + [
        sample_generic(G, seed) for seed in (1, 2, 3)
    ]


def brute_potential_cycles(O):
    """Every simple potential cycle of O (length >= 2), by enumerating vertex sequences."""
    G = O.graph
    found = []
    verts = list(G.vertices)
    for k in range(2, G.n + 1):
        for seq in itertools.permutations(verts, k):
            if seq[0] != min(seq):
                continue
            steps = [(seq[t], seq[(t + 1) % k]) for t in range(k)]
            if all(G.has_edge(u, v) and O.is_compatible(u, v) for u, v in steps):
                found.append(tuple(steps))
    return found


def brute_cycle_score(O, A, steps):
    return sum((step_score(e, O, A) for e in steps), Fraction(0))


# one pass/fail line per acceptance criterion in the terminal summary

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _ACCEPTANCE[number] = (title, rep.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, outcome = _ACCEPTANCE[number]
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] criterion {number:>2}: {title}")
