import pytest

from girthfive.canon import canonical_certificate
from girthfive.graphs import graph_from_edges
from girthfive.oracle import exhaustive_extremal
from girthfive.scoring import is_feasible, reference_lookup
from girthfive.tabu import TabuConfig, restart_loop

# (best score, number of non-isomorphic feasible witnesses) for n = 1..6;
# n = 7 runs in the acceptance suite
EXPECTED = {1: (0, 1), 2: (1, 1), 3: (2, 1), 4: (3, 2), 5: (5, 1), 6: (6, 2)}


class TestSmallValues:
    @pytest.mark.parametrize("n", sorted(EXPECTED))
    def test_matches_table(self, n):
        r = exhaustive_extremal(n)
        assert (r.best_score, r.witness_count) == EXPECTED[n]
        assert r.best_score == reference_lookup(n).edges

    def test_witnesses_are_feasible_extremal(self):
        r = exhaustive_extremal(6)
        for w in r.witnesses:
            assert w.n == 6
            assert is_feasible(w)
            assert w.edge_count == r.best_score
        certs = {canonical_certificate(w) for w in r.witnesses}
        assert len(certs) == r.witness_count

    def test_n4_witnesses_are_path_and_star(self):
        r = exhaustive_extremal(4)
        got = {canonical_certificate(w) for w in r.witnesses}
        p4 = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
        star = graph_from_edges(4, [(0, 1), (0, 2), (0, 3)])
        assert got == {canonical_certificate(p4), canonical_certificate(star)}

    def test_ceiling(self):
        with pytest.raises(ValueError):
            exhaustive_extremal(9)
        with pytest.raises(ValueError):
            exhaustive_extremal(0)


class TestCrossChecks:
    def test_tabu_agrees_at_n6(self):
        out = restart_loop(6, TabuConfig(iterations=500), 8, 0)
        assert out.best_score == exhaustive_extremal(6).best_score

    def test_score_maximum_includes_infeasible_ties(self):
        # K3 scores 2 = f(3): the max over all graphs equals the feasible max
        k3 = graph_from_edges(3, [(0, 1), (1, 2), (0, 2)])
        from girthfive.scoring import score

        assert score(k3).score == exhaustive_extremal(3).best_score
        assert not is_feasible(k3)  # yet it is not counted as a witness
