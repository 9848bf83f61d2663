import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcol.graph import (
    Assignment,
    EdgeListError,
    gen_circulant,
    gen_join_empty_complete,
    gen_square_graph,
    gen_star,
    has_collision,
    new_graph,
    parse_edge_list,
    write_edge_list,
)
from oracles import naive_collision, naive_edges_ci, naive_edges_cs


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return new_graph(n, chosen)


class TestNewGraph:
    def test_single_edge(self):
        G = new_graph(3, [(0, 1)])
        assert G.edges() == [(0, 1)]
        assert G.degree(2) == 0

    def test_isolated_vertex(self):
        G = new_graph(1, [])
        assert G.n == 1 and G.m == 0

    def test_dedup(self):
        assert new_graph(4, [(0, 1), (1, 0)]).m == 1

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            new_graph(2, [(0, 2)])

    def test_self_loop(self):
        with pytest.raises(ValueError):
            new_graph(3, [(1, 1)])


class TestCirculant:
    def test_ci_20_4_6_neighbours(self):
        assert gen_circulant(20, 4, 6).neighbors(0) == [4, 5, 6, 14, 15, 16]

    def test_antipodal_matching(self):
        assert gen_circulant(4, 2, 2).edges() == [(0, 2), (1, 3)]

    def test_cycle(self):
        G = gen_circulant(6, 1, 1)
        assert G.edges() == [(0, 1), (0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]

    @pytest.mark.parametrize("n,a,b", [(5, 3, 2), (6, 0, 1), (7, 2, 4)])
    def test_bad_params(self, n, a, b):
        with pytest.raises(ValueError):
            gen_circulant(n, a, b)

    def test_matches_definition_and_degrees(self):
        for n in range(2, 25):
            for b in range(1, n // 2 + 1):
                for a in range(1, b + 1):
                    G = gen_circulant(n, a, b)
                    assert G.edges() == naive_edges_ci(n, a, b)
                    if 2 * b < n:
                        want = 2 * (b - a + 1)
                    else:
                        want = 2 * (b - a) + 1
                    assert set(G.degrees()) == {want}


class TestSquareGraph:
    def test_cs20(self):
        G = gen_square_graph(20)
        assert G.m == 46 == 19 + 16 + 11
        assert G.edges() == naive_edges_cs(20)

    def test_small(self):
        assert gen_square_graph(1).m == 0
        assert gen_square_graph(2).edges() == [(0, 1)]

    def test_edge_count_formula(self):
        for n in range(1, 120):
            G = gen_square_graph(n)
            assert G.m == sum(n - j * j for j in range(1, n) if 2 * j * j <= n)
            assert G.max_degree() <= 2 * int((n / 2) ** 0.5)


class TestJoin:
    def test_join_5_counts(self):
        G = gen_join_empty_complete(5)
        assert G.n == 10 and G.m == 10 + 25

    def test_n1(self):
        assert gen_join_empty_complete(1).edges() == [(0, 1)]

    def test_n2_degrees(self):
        G = gen_join_empty_complete(2)
        assert G.m == 5
        assert G.degrees() == [2, 2, 3, 3]


class TestCollision:
    def test_star(self):
        G = gen_star(3)
        assert not has_collision(G, [1, 0, 0, 0])
        assert has_collision(G, [1, 0, 1, 0])

    def test_circulant(self):
        G = gen_circulant(20, 4, 6)
        assert has_collision(G, Assignment.from_ones(20, [0, 5]))
        assert not has_collision(G, Assignment.from_ones(20, [0, 3]))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            has_collision(gen_star(2), "01")

    def test_string_and_sequence_inputs(self):
        G = gen_star(2)
        assert has_collision(G, "110") == has_collision(G, (1, 1, 0)) is True

    @given(graphs(), st.data())
    @settings(max_examples=200)
    def test_matches_edge_scan_and_is_monotone(self, G, data):
        bits = data.draw(st.lists(st.integers(0, 1), min_size=G.n, max_size=G.n))
        got = has_collision(G, bits)
        assert got == naive_collision(G, bits)
        if got:
            for v in range(G.n):
                if not bits[v]:
                    up = list(bits)
                    up[v] = 1
                    assert has_collision(G, up)


class TestEdgeListFormat:
    def test_parse(self):
        G = parse_edge_list("3 1\n0 1\n")
        assert G.n == 3 and G.edges() == [(0, 1)]

    def test_write_canonical(self):
        text = write_edge_list(gen_circulant(6, 1, 1))
        assert text == "6 6\n0 1\n0 5\n1 2\n2 3\n3 4\n4 5\n"

    @pytest.mark.parametrize(
        "text",
        ["2 1\n0 2\n", "3 1\n0 x\n", "3 2\n0 1\n", "3 1\n1 1\n", "", "3\n", "3 1\n0 1 2\n"],
    )
    def test_errors(self, text):
        with pytest.raises(EdgeListError):
            parse_edge_list(text)

    def test_edge_written_backwards_is_accepted(self):
        assert parse_edge_list("3 1\n2 0\n").edges() == [(0, 2)]

    @given(graphs(max_n=14))
    def test_round_trip(self, G):
        assert parse_edge_list(write_edge_list(G)) == G

    def test_round_trip_random_large(self):
        rng = random.Random(7)
        for _ in range(20):
            n = rng.randint(1, 60)
            pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(3 * n))
            G = new_graph(n, [(u, v) for u, v in pairs if u != v])
            assert parse_edge_list(write_edge_list(G)) == G
