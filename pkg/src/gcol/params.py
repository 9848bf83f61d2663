"""Exact independent-set parameters: alpha, alpha* and alpha**.

alpha   -- size of a largest independent set.
alpha*  -- largest total degree of an independent set.
alpha** -- over all vertex covers VC, the smallest value of
           "largest total degree of an independent subset of VC".

Everything works on bitset rows and is guarded by a node-expansion Budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from gcol.budget import Budget, as_budget
from gcol.graph import Graph, bits_list, iter_bits


def _low(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class _MemoMWIS:
    """Maximum-weight independent set by memoized include/exclude branching.

    Branching always happens on the lowest-labelled live vertex, so on
    banded graphs such as CS(n) or CI(n, a, b) the live sets that occur are
    "all labels above v, minus a few inside the band", and the memo table
    behaves like a sliding-window dynamic program.
    """

    def __init__(self, adj: Sequence[int], weights: Sequence[int], budget: Budget):
        self.adj = adj
        self.w = weights
        self.budget = budget
        self.memo: dict[int, int] = {0: 0}

    def value(self, live: int) -> int:
        memo = self.memo
        got = memo.get(live)
        if got is not None:
            return got
        # iterative peel of isolated vertices keeps recursion shallow
        adj, w = self.adj, self.w
        acc = 0
        rest = live
        while rest:
            v = _low(rest)
            nb = adj[v] & rest
            if nb:
                break
            acc += w[v]
            rest ^= 1 << v
        if rest == 0 or rest in memo:
            res = acc + memo[rest]
            memo[live] = res
            return res
        self.budget.tick()
        v = _low(rest)
        nb = adj[v] & rest
        without = self.value(rest ^ (1 << v))
        with_v = w[v] + self.value(rest & ~nb & ~(1 << v))
        res = acc + max(without, with_v)
        memo[live] = res
        return res

    def witness(self, live: int) -> int:
        """A maximizing set; ties prefer excluding the lower label."""
        chosen = 0
        rest = live
        adj, w = self.adj, self.w
        while rest:
            v = _low(rest)
            nb = adj[v] & rest
            if not nb:
                chosen |= 1 << v
                rest ^= 1 << v
                continue
            without = self.value(rest ^ (1 << v))
            inc_rest = rest & ~nb & ~(1 << v)
            if w[v] + self.value(inc_rest) > without:
                chosen |= 1 << v
                rest = inc_rest
            else:
                rest ^= 1 << v
        return chosen


def max_weight_independent_set(
    G: Graph,
    weights: Sequence[int],
    within: int | None = None,
    budget: Budget | int | None = None,
) -> tuple[int, int]:
    """Return ``(best_weight, vertex_mask)`` restricted to ``within``."""
    live = G.full if within is None else within & G.full
    solver = _MemoMWIS(G.adj, list(weights), as_budget(budget))
    value = solver.value(live)
    return value, solver.witness(live)


def independence_number(G: Graph, budget: Budget | int | None = None) -> int:
    return max_weight_independent_set(G, [1] * G.n, budget=budget)[0]


def max_independent_total_degree(G: Graph, budget: Budget | int | None = None) -> int:
    """alpha*(G): the maximum of sum(deg v) over independent sets."""
    return max_weight_independent_set(G, G.degrees(), budget=budget)[0]


def bnb_max_weight_independent(
    adj: Sequence[int],
    weights: Sequence[int],
    live: int,
    budget: Budget,
    stop_above: int | None = None,
) -> int:
    """Branch-and-bound maximum weight of an independent subset of ``live``.

    The bound is the current weight plus the total weight still live.  When
    ``stop_above`` is given the search returns as soon as it finds a set
    heavier than that, since the caller only needs to know it was beaten.
    """
    best = 0
    stack = [(live, 0)]
    while stack:
        rest, cur = stack.pop()
        budget.tick()
        if cur > best:
            best = cur
            if stop_above is not None and best > stop_above:
                return best
        if not rest:
            continue
        if cur + sum(weights[v] for v in iter_bits(rest)) <= best:
            continue
        # branch on the heaviest live vertex, include-branch explored first
        v = max(iter_bits(rest), key=lambda u: (weights[u], -u))
        stack.append((rest & ~(1 << v), cur))
        stack.append((rest & ~adj[v] & ~(1 << v), cur + weights[v]))
    return best


def enumerate_maximal_independent_sets(G: Graph, budget: Budget | int | None = None) -> Iterator[int]:
    """Bron-Kerbosch with pivoting, run on non-adjacency."""
    budget = as_budget(budget)
    adj = G.adj
    n = G.n
    closed = [adj[v] | (1 << v) for v in range(n)]

    def rec(R: int, P: int, X: int) -> Iterator[int]:
        budget.tick()
        if not P and not X:
            yield R
            return
        # pivot leaving the fewest branches: branches are P intersect N[u]
        pivot = min(iter_bits(P | X), key=lambda u: (closed[u] & P).bit_count())
        for v in iter_bits(P & closed[pivot]):
            bit = 1 << v
            yield from rec(R | bit, P & ~closed[v], X & ~closed[v])
            P &= ~bit
            X |= bit

    if n == 0:
        yield 0
        return
    yield from rec(0, G.full, 0)


def enumerate_minimal_vertex_covers(G: Graph, budget: Budget | int | None = None) -> Iterator[int]:
    """Minimal vertex covers, as complements of maximal independent sets."""
    full = G.full
    for indep in enumerate_maximal_independent_sets(G, budget):
        yield full & ~indep


def cover_cost(G: Graph, cover: int, budget: Budget | int | None = None) -> int:
    """D(VC): the largest total degree of an independent subset of ``cover``."""
    return bnb_max_weight_independent(G.adj, G.degrees(), cover, as_budget(budget))


def alpha_star_star(G: Graph, budget: Budget | int | None = None) -> tuple[int, int]:
    """Return ``(alpha**, cover_mask)``.

    The minimum is searched over minimal covers only: shrinking a cover can
    only remove independent subsets, so the cost is monotone.  Among optimal
    covers the smallest bitmask is returned.
    """
    budget = as_budget(budget)
    adj = G.adj
    degrees = G.degrees()
    best: int | None = None
    best_cover = 0
    for cover in enumerate_minimal_vertex_covers(G, budget):
        cost = bnb_max_weight_independent(adj, degrees, cover, budget, stop_above=best)
        if best is None or cost < best or (cost == best and cover < best_cover):
            best, best_cover = cost, cover
    return best, best_cover


@dataclass(frozen=True)
class ParamReport:
    n: int
    alpha: int
    alpha_star: int
    alpha_star_star: int
    witness_vc: int

    @property
    def vc_size(self) -> int:
        return self.witness_vc.bit_count()

    def vc_vertices(self) -> list[int]:
        return bits_list(self.witness_vc)

    CSV_HEADER = ("n", "alpha", "alpha_star", "alpha_star_star", "vc_size")

    def csv_row(self) -> tuple[int, ...]:
        return (self.n, self.alpha, self.alpha_star, self.alpha_star_star, self.vc_size)


def param_report(G: Graph, budget: Budget | int | None = None) -> ParamReport:
    budget = as_budget(budget)
    a = independence_number(G, budget)
    a_star = max_independent_total_degree(G, budget)
    a_ss, vc = alpha_star_star(G, budget)
    return ParamReport(G.n, a, a_star, a_ss, vc)
