import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from girthfive.graphs import (
    FlipAction,
    Graph,
    count_squares,
    count_triangles,
    counts_from_numpy,
    flip,
    flip_delta,
    graph_from_edges,
    graph_from_rows,
    new_graph,
    pad_nodes,
    random_graph,
)

from conftest import graphs, graphs_with_pair, naive_squares, naive_triangles

C5 = graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
K3 = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
K4 = graph_from_edges(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
PETERSEN = graph_from_edges(
    10,
    [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
     (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
     (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)],
)


class TestConstruction:
    def test_empty(self):
        g = new_graph(1)
        assert g.edge_count == 0 and g.n == 1
        assert new_graph(64).edge_count == 0

    @pytest.mark.parametrize("n", [0, -3, 257])
    def test_bad_sizes(self, n):
        with pytest.raises(ValueError):
            new_graph(n)

    def test_from_rows_validates(self):
        with pytest.raises(ValueError, match="symmetric"):
            graph_from_rows(2, [0b10, 0b00])
        with pytest.raises(ValueError, match="loop"):
            graph_from_rows(2, [0b01, 0b10])
        with pytest.raises(ValueError, match=">="):
            graph_from_rows(2, [0b100, 0b0])

    def test_from_edges_rejects_duplicates(self):
        with pytest.raises(ValueError, match="duplicate"):
            graph_from_edges(3, [(0, 1), (1, 0)])

    def test_numpy_round_trip(self):
        a = PETERSEN.to_numpy()
        assert a.sum() == 30 and not a.diagonal().any()
        from girthfive.graphs import graph_from_numpy

        assert graph_from_numpy(a) == PETERSEN


class TestFlip:
    def test_single_edge(self):
        g = flip(new_graph(2), FlipAction(0, 1))
        assert g.edge_count == 1 and g.has_edge(0, 1)

    def test_cycle_edge_removal(self):
        g = flip(C5, FlipAction(0, 1))
        assert g.edge_count == 4
        assert count_triangles(g) == 0 and count_squares(g) == 0

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            flip(new_graph(3), FlipAction(0, 3))

    def test_action_ordering(self):
        with pytest.raises(ValueError):
            FlipAction(2, 1)
        assert FlipAction.of(3, 1) == FlipAction(1, 3)

    @given(graphs_with_pair())
    def test_involution(self, gp):
        g, u, v = gp
        e = FlipAction(u, v)
        assert flip(flip(g, e), e) == g


class TestCounting:
    def test_known_counts(self):
        assert count_triangles(K3) == 1
        assert count_triangles(K4) == 4
        assert count_squares(K4) == 3
        c4 = graph_from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        assert count_squares(c4) == 1
        assert count_squares(C5) == 0
        assert count_triangles(PETERSEN) == 0
        assert count_squares(PETERSEN) == 0
        assert naive_triangles(PETERSEN) == 0 and naive_squares(PETERSEN) == 0

    @given(graphs(max_n=9))
    @settings(max_examples=150)
    def test_against_enumeration(self, g):
        assert count_triangles(g) == naive_triangles(g)
        assert count_squares(g) == naive_squares(g)

    @given(graphs(max_n=9))
    @settings(max_examples=60)
    def test_codegree_formulas(self, g):
        # triangle: one third of the per-edge codegree sum
        tri3 = sum((g.rows[u] & g.rows[v]).bit_count() for u, v in g.edges())
        assert tri3 % 3 == 0 and tri3 // 3 == count_triangles(g)
        # squares: half the sum of C(codeg, 2) over unordered pairs
        total = 0
        for u in range(g.n - 1):
            for v in range(u + 1, g.n):
                c = (g.rows[u] & g.rows[v]).bit_count()
                total += c * (c - 1) // 2
        assert total % 2 == 0 and total // 2 == count_squares(g)

    @given(graphs(max_n=9))
    @settings(max_examples=60)
    def test_matrix_route_matches(self, g):
        assert counts_from_numpy(g.to_numpy()) == (count_triangles(g), count_squares(g))


class TestFlipDelta:
    def test_closing_a_triangle(self):
        g = graph_from_edges(3, [(0, 2), (1, 2)])  # path u-w-v with w=2
        d = flip_delta(g, FlipAction(0, 1))
        assert (d.edges, d.triangles, d.squares, d.score) == (1, 1, 0, 0)

    def test_closing_a_square(self):
        g = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
        d = flip_delta(g, FlipAction(0, 3))
        assert (d.edges, d.triangles, d.squares, d.score) == (1, 0, 1, 0)

    def test_deleting_cycle_edge(self):
        d = flip_delta(C5, FlipAction(0, 1))
        assert (d.edges, d.triangles, d.squares, d.score) == (-1, 0, 0, -1)

    @given(graphs_with_pair())
    @settings(max_examples=200)
    def test_matches_recount(self, gp):
        g, u, v = gp
        e = FlipAction(u, v)
        d = flip_delta(g, e)
        g2 = flip(g, e)
        assert d.edges == g2.edge_count - g.edge_count
        assert d.triangles == count_triangles(g2) - count_triangles(g)
        assert d.squares == count_squares(g2) - count_squares(g)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            flip_delta(new_graph(4), FlipAction(1, 5))


class TestPadNodes:
    def test_empty_pad(self):
        assert pad_nodes(new_graph(3), 2) == new_graph(5)

    def test_preserves_structure(self):
        g = pad_nodes(C5, 1)
        assert g.n == 6 and g.edge_count == 5
        assert count_triangles(g) == 0 and count_squares(g) == 0

    def test_preserves_edges_at_scale(self, rng):
        g = random_graph(50, 0.12, rng)
        padded = pad_nodes(g, 1)
        assert padded.n == 51 and padded.edge_count == g.edge_count
        assert padded.rows[:50] == g.rows and padded.rows[50] == 0

    def test_ceiling(self):
        with pytest.raises(ValueError):
            pad_nodes(new_graph(250), 7)
        assert pad_nodes(new_graph(250), 6).n == 256

    @given(graphs(max_n=8), st.integers(0, 4))
    @settings(max_examples=60)
    def test_score_unchanged(self, g, k):
        p = pad_nodes(g, k)
        assert p.edge_count == g.edge_count
        assert count_triangles(p) == count_triangles(g)
        assert count_squares(p) == count_squares(g)
