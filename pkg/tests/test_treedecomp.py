import itertools
import random

import pytest

from gcol.cost import CostLedger
from gcol.graph import (
    Assignment,
    gen_circulant,
    gen_complete,
    gen_cycle,
    gen_empty,
    gen_path,
    gen_random,
    gen_star,
    has_collision,
    new_graph,
)
from gcol.treedecomp import (
    ChunkCover,
    DecompositionError,
    TreeDecomposition,
    chunk_count_bound,
    chunk_cover,
    collision_via_chunks,
    decomposition_from_order,
    euler_sequence,
    exact_treewidth,
    heuristic_decomposition,
    is_smooth,
    is_valid,
    prepare_chunks,
    parse_td,
    smooth,
    validate_decomposition,
    write_td,
)
from oracles import treewidth_permutations, treewidth_subset_recursion

P3 = gen_path(3)


def kinds(G, D):
    return {v.kind for v in validate_decomposition(G, D)}


class TestValidate:
    def test_path_ok(self):
        D = TreeDecomposition.from_lists([[0, 1], [1, 2]], [(0, 1)])
        assert validate_decomposition(P3, D) == []

    def test_uncovered_edge(self):
        D = TreeDecomposition.from_lists([[0, 1], [2]], [(0, 1)])
        assert kinds(P3, D) == {"edge"}

    def test_connectivity(self):
        # vertex 0 sits in bags 0 and 2 but not in the middle bag 1
        D = TreeDecomposition.from_lists([[0, 1], [1, 2], [2, 0]], [(0, 1), (1, 2)])
        found = validate_decomposition(P3, D)
        assert [v.kind for v in found] == ["connectivity"]
        assert "vertex 0" in found[0].detail

    def test_coverage_and_tree(self):
        D = TreeDecomposition.from_lists([[0, 1], [1]], [])
        # with no tree edge the two bags holding vertex 1 are disconnected as well
        assert kinds(P3, D) == {"coverage", "edge", "tree", "connectivity"}

    def test_cycle_in_tree(self):
        D = TreeDecomposition.from_lists([[0, 1, 2]] * 3, [(0, 1), (1, 2), (2, 0)])
        assert "tree" in kinds(P3, D)

    def test_bad_index(self):
        D = TreeDecomposition.from_lists([[0, 1, 2]], [(0, 4)])
        assert kinds(P3, D) == {"index"}


class TestExactTreewidth:
    def test_trees(self):
        rng = random.Random(0)
        for n in range(2, 15):
            edges = [(v, rng.randrange(v)) for v in range(1, n)]
            t, D = exact_treewidth(new_graph(n, edges))
            assert t == 1 and is_valid(new_graph(n, edges), D)

    @pytest.mark.parametrize("m", [1, 2, 5, 8])
    def test_clique(self, m):
        t, D = exact_treewidth(gen_complete(m))
        assert t == m - 1 and D.width == m - 1

    def test_ci_10_1_2_frozen(self):
        # 4 from oracles.treewidth_subset_recursion
        G = gen_circulant(10, 1, 2)
        t, D = exact_treewidth(G)
        assert t == 4 == D.width
        assert is_valid(G, D)

    def test_against_permutation_brute_force(self):
        rng = random.Random(1)
        for _ in range(25):
            G = gen_random(rng.randint(1, 7), rng.random(), rng)
            t, D = exact_treewidth(G)
            assert t == treewidth_permutations(G)
            assert is_valid(G, D) and D.width == t

    def test_against_subset_recursion(self):
        rng = random.Random(2)
        for _ in range(15):
            G = gen_random(rng.randint(8, 11), rng.uniform(0.2, 0.7), rng)
            t, D = exact_treewidth(G)
            assert t == treewidth_subset_recursion(G)
            assert is_valid(G, D)

    def test_not_above_heuristic(self):
        rng = random.Random(3)
        for _ in range(20):
            G = gen_random(rng.randint(2, 14), rng.random(), rng)
            H = heuristic_decomposition(G)
            assert is_valid(G, H)
            assert exact_treewidth(G)[0] <= H.width


class TestSmooth:
    def test_path_unchanged(self):
        D = TreeDecomposition.from_lists([[0, 1], [1, 2]], [(0, 1)])
        S = smooth(P3, D)
        assert len(S) == 2 and is_smooth(S)

    def test_clique_single_bag(self):
        G = gen_complete(4)
        S = smooth(G, TreeDecomposition.from_lists([[0, 1, 2, 3]]))
        assert len(S) == 1 and S.width == 3

    def test_star(self):
        G = gen_star(4)
        D = TreeDecomposition.from_lists([[0, 1], [0, 2], [0, 3], [0, 4]], [(0, 1), (1, 2), (2, 3)])
        S = smooth(G, D)
        assert len(S) == 4 and is_smooth(S) and is_valid(G, S)

    def test_needs_subdivision(self):
        # bags {0,1,2} and {2,3,4} share one vertex; width 2 needs intersections of 2
        G = new_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
        D = TreeDecomposition.from_lists([[0, 1, 2], [2, 3, 4]], [(0, 1)])
        S = smooth(G, D)
        assert is_valid(G, S) and is_smooth(S) and len(S) == 5 - 2

    def test_padding_small_bags(self):
        G = new_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3), (4, 5)])
        D = TreeDecomposition.from_lists([[0, 1], [1, 2, 3], [3, 4], [4, 5]], [(0, 1), (1, 2), (2, 3)])
        S = smooth(G, D)
        assert is_valid(G, S) and is_smooth(S) and S.width == 2 and len(S) == 4

    def test_raise_width(self):
        G = gen_empty(5)
        S = smooth(G, heuristic_decomposition(G), width=1)
        assert is_valid(G, S) and is_smooth(S) and S.width == 1 and len(S) == 4

    def test_invalid_input(self):
        with pytest.raises(DecompositionError):
            smooth(P3, TreeDecomposition.from_lists([[0, 1], [2]], [(0, 1)]))

    def test_random_graphs(self):
        rng = random.Random(4)
        for _ in range(80):
            n = rng.randint(1, 14)
            G = gen_random(n, rng.random(), rng)
            D = decomposition_from_order(G, rng.sample(range(n), n))
            S = smooth(G, D)
            k = D.width
            assert is_valid(G, S) and is_smooth(S)
            assert S.width == k and len(S) == n - k


class TestEuler:
    def test_single(self):
        assert euler_sequence(TreeDecomposition.from_lists([[0]])) == [0]

    def test_two_bags(self):
        assert euler_sequence(TreeDecomposition.from_lists([[0], [1]], [(0, 1)])) == [0, 1, 0]

    def test_path_of_four(self):
        D = TreeDecomposition.from_lists([[0]] * 4, [(0, 1), (1, 2), (2, 3)])
        seq = euler_sequence(D)
        assert len(seq) == 7
        steps = sorted(tuple(sorted(p)) for p in zip(seq, seq[1:]))
        assert steps == sorted([(0, 1), (1, 2), (2, 3)] * 2)

    def test_random_trees(self):
        rng = random.Random(5)
        for _ in range(50):
            k = rng.randint(1, 30)
            edges = [(i, rng.randrange(i)) for i in range(1, k)]
            seq = euler_sequence(TreeDecomposition((0,) * k, tuple(edges)))
            assert len(seq) == 2 * k - 1 and seq[0] == seq[-1] == 0
            steps = sorted(tuple(sorted(p)) for p in zip(seq, seq[1:]))
            assert steps == sorted([tuple(sorted(e)) for e in edges] * 2)


class TestChunks:
    def test_path_t1(self):
        for n in range(3, 12):
            G = gen_path(n)
            t, S, W = prepare_chunks(G)
            assert t == 1
            assert len(W) == 2 * n - 3 == chunk_count_bound(n, 1)
            assert W.max_size <= 3 and W.covers(G)

    def test_clique_single_chunk(self):
        G = gen_complete(5)
        t, S, W = prepare_chunks(G)
        assert W.chunks == (G.full,)

    def test_rejects_t0_and_non_smooth(self):
        with pytest.raises(DecompositionError):
            chunk_cover(gen_empty(1), TreeDecomposition.from_lists([[0]]), 0)
        D = TreeDecomposition.from_lists([[0, 1], [1, 2, 0]], [(0, 1)])
        with pytest.raises(DecompositionError):
            chunk_cover(P3, D, 2)

    def test_random_graphs(self):
        rng = random.Random(6)
        for _ in range(60):
            n = rng.randint(2, 12)
            G = gen_random(n, rng.random(), rng)
            t, S, W = prepare_chunks(G)
            assert W.covers(G)
            assert len(W) <= chunk_count_bound(n, t)
            assert W.max_size <= 2 * t + 1


class TestCollisionViaChunks:
    def test_all_zero(self):
        G = gen_cycle(6)
        _, _, W = prepare_chunks(G)
        assert not collision_via_chunks(G, Assignment((0,) * 6), W)

    def test_star(self):
        G = gen_star(4)
        _, _, W = prepare_chunks(G)
        ledger = CostLedger()
        assert collision_via_chunks(G, Assignment.from_ones(5, [0, 3]), W, ledger)
        assert ledger.total > 0

    def test_exhaustive(self):
        rng = random.Random(7)
        for _ in range(12):
            n = rng.randint(2, 10)
            G = gen_random(n, rng.random(), rng)
            _, _, W = prepare_chunks(G)
            for bits in itertools.product((0, 1), repeat=n):
                x = Assignment(bits)
                assert collision_via_chunks(G, x, W) == has_collision(G, x)

    def test_coverage_precondition(self):
        with pytest.raises(DecompositionError):
            collision_via_chunks(P3, Assignment((1, 1, 1)), ChunkCover((0b011,)))

    def test_cost_charged(self):
        G = gen_path(10)
        _, _, W = prepare_chunks(G)
        ledger = CostLedger()
        collision_via_chunks(G, Assignment((0,) * 10), W, ledger)
        # t = 1: every chunk is a single edge bag
        assert len(W) == 17
        assert ledger.total == pytest.approx(17 ** 0.5 * 2 ** (2 / 3), rel=1e-9)


class TestTextFormat:
    def test_round_trip(self):
        G = gen_circulant(10, 1, 2)
        _, D = exact_treewidth(G)
        assert parse_td(write_td(D)) == D

    def test_layout(self):
        D = TreeDecomposition.from_lists([[0, 1], [1, 2]], [(0, 1)])
        assert write_td(D) == "s 2 1\nb 0 0 1\nb 1 1 2\ne 0 1\n"

    @pytest.mark.parametrize(
        "text",
        [
            "b 0 1\n",
            "s 1 0\ns 1 0\nb 0 0\n",
            "s 2 1\nb 0 0 1\n",
            "s 1 3\nb 0 0 1\n",
            "s 1 0\nb 0 0\nq 1\n",
            "s 1 1\nb 0 0 x\n",
        ],
    )
    def test_errors(self, text):
        with pytest.raises(DecompositionError):
            parse_td(text)
