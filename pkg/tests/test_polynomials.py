import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bigraphical import (
    BiPoly,
    InputError,
    build_graph,
    build_multigraph,
    census,
    char_poly_generic,
    complete_graph,
    cycle_closed_forms,
    cycle_graph,
    dipole,
    dual_check,
    generic_region_counts,
    path_graph,
    preset,
    reliability,
    sample_generic,
    sink_extension,
    spanning_tree_count,
    tutte,
)
from bigraphical.errors import CapExceeded
from bigraphical.graph import Multigraph
from bigraphical.polynomials import (
    dual_probabilities,
    forest_counts,
    reliability_brute,
    reliability_tutte,
    tutte_corank_nullity,
)

from conftest import connected_family


@st.composite
def multigraphs(draw, max_n=5, max_edges=9):
    n = draw(st.integers(1, max_n))
    pair = st.tuples(st.integers(1, n), st.integers(1, n))
    return build_multigraph(n, draw(st.lists(pair, max_size=max_edges)))


def brute_forest_counts(G):
    """Acyclic edge subsets by size, checked with a fresh DFS per subset."""
    counts = [0] * (len(G.edges) + 1)
    for k in range(len(G.edges) + 1):
        for S in itertools.combinations(G.edges, k):
            adj = {v: [] for v in G.vertices}
            for i, j in S:
                adj[i].append(j)
                adj[j].append(i)
            seen, comps = set(), 0
            for v in G.vertices:
                if v in seen:
                    continue
                comps += 1
                stack = [v]
                seen.add(v)
                while stack:
                    x = stack.pop()
                    for y in adj[x]:
                        if y not in seen:
                            seen.add(y)
                            stack.append(y)
            counts[k] += G.n - comps == k
    return counts


# planar pairs (G, G*) given by hand
PLANAR_PAIRS = [
    (cycle_graph(3), dipole(3)),
    (cycle_graph(4), dipole(4)),
    (complete_graph(4), Multigraph.from_simple(complete_graph(4))),
    # triangle with a pendant edge: dual has a loop for the bridge
    (build_graph(4, [(1, 2), (2, 3), (1, 3), (3, 4)]), build_multigraph(2, [(1, 2), (1, 2), (1, 2), (1, 1)])),
    # C_4 with a chord: two triangles sharing an edge
    (build_graph(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]),
     build_multigraph(3, [(1, 3), (1, 3), (2, 3), (2, 3), (1, 2)])),
]


class TestTutte:
    @pytest.mark.parametrize("n", range(3, 9))
    def test_cycle(self, n):
        expected = BiPoly.from_dict({(0, 1): 1, **{(i, 0): 1 for i in range(1, n)}})
        assert tutte(cycle_graph(n)) == expected

    def test_k3(self):
        K3 = complete_graph(3)
        assert tutte(K3) == tutte_corank_nullity(K3) == BiPoly.from_dict({(2, 0): 1, (1, 0): 1, (0, 1): 1})

    @pytest.mark.parametrize("m", range(0, 6))
    def test_tree(self, m):
        assert tutte(path_graph(m + 1)) == BiPoly.from_dict({(m, 0): 1})

    def test_loops_and_multiedges(self):
        assert tutte(build_multigraph(1, [(1, 1), (1, 1)])) == BiPoly.from_dict({(0, 2): 1})
        assert tutte(dipole(3)) == BiPoly.from_dict({(1, 0): 1, (0, 1): 1, (0, 2): 1})

    @given(multigraphs())
    @settings(max_examples=80, deadline=None)
    def test_matches_corank_nullity(self, G):
        assert tutte(G) == tutte_corank_nullity(G)

    @pytest.mark.parametrize("G", connected_family(6)[::2])
    def test_spanning_trees(self, G):
        assert tutte(G)(1, 1) == spanning_tree_count(G)

    @pytest.mark.parametrize("G, D", PLANAR_PAIRS)
    def test_duality(self, G, D):
        assert tutte(D).swap() == tutte(G)

    def test_k5_and_cap(self):
        assert tutte(complete_graph(5))(1, 1) == 125
        with pytest.raises(CapExceeded):
            tutte(complete_graph(7), max_edges=18)

    def test_json(self):
        assert tutte(complete_graph(3)).to_json() == {"x^0 y^1": 1, "x^1 y^0": 1, "x^2 y^0": 1}


class TestCharPoly:
    def test_k3(self):
        assert char_poly_generic(complete_graph(3)).coeffs == (0, 12, -6, 1)

    def test_p3(self):
        assert char_poly_generic(path_graph(3)).coeffs == (0, 4, -4, 1)

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_edgeless(self, n):
        chi = char_poly_generic(build_graph(n, []))
        assert chi.degree == n and chi.coeffs[-1] == 1 and not any(chi.coeffs[:-1])

    @pytest.mark.parametrize("G", connected_family(6)[::3] + [build_graph(5, [(1, 2), (3, 4), (4, 5)])])
    def test_forests_oracle(self, G):
        brute = brute_forest_counts(G)
        rank = max(k for k, x in enumerate(brute) if x)
        assert forest_counts(G) == brute[: rank + 1]
        assert not any(brute[rank + 1:])
        chi = char_poly_generic(G)  # raises on internal mismatch
        assert chi.degree == G.n

    def test_disconnected_counts(self):
        G = build_graph(5, [(1, 2), (3, 4), (4, 5)])
        r, b = generic_region_counts(G)
        assert r == census(G, sample_generic(G, 1)).r


class TestRegionCounts:
    @pytest.mark.parametrize("G, expected", [
        (complete_graph(3), (19, 7)), (cycle_graph(4), (65, 15)), (path_graph(3), (9, 1))])
    def test_examples(self, G, expected):
        assert generic_region_counts(G) == expected

    @pytest.mark.parametrize("G", connected_family(6)[::3])
    def test_census_of_generic_samples(self, G):
        expected = generic_region_counts(G)
        for seed in (1, 2, 3):
            c = census(G, sample_generic(G, seed))
            assert (c.r, c.b) == expected


class TestClosedForms:
    def test_values(self):
        assert cycle_closed_forms(4, "shi") == (61, 11)
        assert cycle_closed_forms(4, "semi") == (59, 9)
        assert cycle_closed_forms(3, "semi") == (19, 7)

    def test_rejects(self):
        with pytest.raises(InputError):
            cycle_closed_forms(2, "semi")


class TestReliability:
    def test_k3(self):
        assert reliability(Multigraph.from_simple(complete_graph(3)), Fraction(2, 3)) == Fraction(7, 27)

    def test_dipole(self):
        assert reliability(dipole(3), Fraction(2, 3)) == Fraction(19, 27)
        # parallel edges: disconnected only when every edge fails
        assert reliability(dipole(4), Fraction(2, 3)) == 1 - Fraction(2, 3) ** 4

    def test_zero(self):
        assert reliability(dipole(2), 0) == 1

    @given(multigraphs(max_edges=10), st.fractions(min_value=0, max_value=1, max_denominator=7))
    @settings(max_examples=60, deadline=None)
    def test_brute_equals_formula(self, G, p):
        assert reliability_brute(G, p) == reliability_tutte(G, p)


class TestDual:
    def test_c3(self):
        assert dual_probabilities(cycle_graph(3), dipole(3)) == (Fraction(19, 27), Fraction(19, 27))

    def test_c4(self):
        assert dual_probabilities(cycle_graph(4), dipole(4)) == (Fraction(65, 81), Fraction(65, 81))

    @pytest.mark.parametrize("G, D", PLANAR_PAIRS)
    def test_pairs(self, G, D):
        assert dual_check(G, D)

    def test_euler_violation(self):
        with pytest.raises(InputError):
            dual_check(cycle_graph(4), dipole(3))
        with pytest.raises(InputError):
            dual_check(cycle_graph(4), build_multigraph(3, [(1, 2), (1, 2), (2, 3), (2, 3)]))
