import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from girthfive.fixtures import published_graph, published_sparse6
from girthfive.graphs import graph_from_edges, new_graph
from girthfive.scoring import score
from girthfive.sparse6 import Sparse6Error, decode_sparse6, encode_sparse6

from conftest import fast_random_graph, graphs

nx = pytest.importorskip("networkx")


def reference_bytes(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges())
    return nx.to_sparse6_bytes(G, header=False).rstrip(b"\n")


class TestGolden:
    def test_single_node(self):
        assert encode_sparse6(new_graph(1)) == b":@"
        assert decode_sparse6(b":@") == new_graph(1)

    def test_single_edge(self):
        k2 = graph_from_edges(2, [(0, 1)])
        assert decode_sparse6(encode_sparse6(k2)) == k2
        assert encode_sparse6(k2) == reference_bytes(k2)

    def test_header_accepted(self):
        k2 = graph_from_edges(2, [(0, 1)])
        data = encode_sparse6(k2, header=True)
        assert data.startswith(b">>sparse6<<")
        assert decode_sparse6(data) == k2

    def test_str_input(self):
        assert decode_sparse6(":@") == new_graph(1)


class TestPublishedFixture:
    def test_decodes_to_claimed_counts(self):
        g = published_graph()
        br = score(g)
        assert (g.n, br.edges, br.triangles, br.squares) == (64, 230, 0, 0)

    def test_whitespace_wrapping_tolerated(self):
        raw = published_sparse6()
        wrapped = b"\n".join(raw[i : i + 50] for i in range(0, len(raw), 50))
        assert decode_sparse6(wrapped) == published_graph()
        assert decode_sparse6(b"  " + raw + b"\r\n") == published_graph()

    def test_reencodes_losslessly(self):
        g = published_graph()
        assert decode_sparse6(encode_sparse6(g)) == g


class TestRoundTrip:
    @given(graphs(max_n=12))
    @settings(max_examples=200)
    def test_small(self, g):
        assert decode_sparse6(encode_sparse6(g)) == g

    @given(graphs(max_n=12))
    @settings(max_examples=100)
    def test_bytes_match_reference(self, g):
        assert encode_sparse6(g) == reference_bytes(g)

    def test_large_sizes(self, rng):
        for n in (63, 64, 65, 100, 200, 256):
            g = fast_random_graph(n, 3.0 / n, rng)
            assert decode_sparse6(encode_sparse6(g)) == g
            assert encode_sparse6(g) == reference_bytes(g)

    def test_decodes_reference_encodings(self, rng):
        for _ in range(40):
            n = int(rng.integers(1, 40))
            g = fast_random_graph(n, float(rng.uniform(0, 0.5)), rng)
            assert decode_sparse6(reference_bytes(g)) == g


class TestErrors:
    @pytest.mark.parametrize(
        "payload",
        [
            b"",
            b"@",  # no colon
            b">>sparse6<<",  # header only
            b":",  # missing node count
            b":~?",  # truncated long-form count
            b":\x1f\x1f",  # bytes below the alphabet
            b":?",  # zero nodes
            b":~~??????@??",  # 36-bit form encoding zero nodes
        ],
    )
    def test_malformed(self, payload):
        with pytest.raises(Sparse6Error):
            decode_sparse6(payload)

    def test_loop_rejected(self):
        # n=3, k=2: group (b=0, x=0) with v=0 encodes a loop at 0
        with pytest.raises(Sparse6Error, match="loop"):
            decode_sparse6(b":B?")

    def test_duplicate_edge_rejected(self):
        # n=3, k=2: (1,00) then (0,00) encodes edge (0,1) twice
        with pytest.raises(Sparse6Error, match="duplicate"):
            decode_sparse6(b":B_")

    @given(st.binary(max_size=60))
    @settings(max_examples=300)
    def test_total_on_fuzz(self, blob):
        try:
            g = decode_sparse6(blob)
            assert 1 <= g.n <= 256
        except Sparse6Error:
            pass
