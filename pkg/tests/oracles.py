"""Slow, independent reference implementations used only by the tests.

None of these share code paths with the package beyond the Graph type's
``n`` and ``edges()``; they work on plain Python sets and itertools.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def neighbor_sets(G):
    nbrs = {v: set() for v in range(G.n)}
    for u, v in G.edges():
        nbrs[u].add(v)
        nbrs[v].add(u)
    return nbrs


def naive_collision(G, bits):
    return any(bits[u] and bits[v] for u, v in G.edges())


def naive_edges_cs(n):
    squares = [j * j for j in range(1, n + 1) if 2 * j * j <= n]
    return [(k, l) for k in range(n) for l in range(k + 1, n) if l - k in squares]


def naive_edges_ci(n, a, b):
    return [(k, l) for k in range(n) for l in range(k + 1, n) if a <= min(l - k, n - (l - k)) <= b]


def is_independent_set(nbrs, S):
    return all(not (nbrs[v] & S) for v in S)


def subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        for combo in itertools.combinations(items, r):
            yield set(combo)


def exhaustive_max_weight(G, weights, within=None):
    """Scan every subset of ``within`` (default: all vertices)."""
    nbrs = neighbor_sets(G)
    pool = range(G.n) if within is None else sorted(within)
    best = 0
    for S in subsets(pool):
        if is_independent_set(nbrs, S):
            best = max(best, sum(weights[v] for v in S))
    return best


def recursive_mis(G):
    """Plain include/exclude recursion on the max-degree vertex, no pruning."""
    nbrs = neighbor_sets(G)

    def rec(live):
        if not live:
            return 0
        v = max(live, key=lambda u: (len(nbrs[u] & live), -u))
        if not nbrs[v] & live:
            return len(live)  # every live vertex is isolated
        return max(rec(live - {v}), 1 + rec(live - {v} - nbrs[v]))

    return rec(frozenset(range(G.n)))


def all_vertex_covers(G):
    edges = G.edges()
    for S in subsets(range(G.n)):
        if all(u in S or v in S for u, v in edges):
            yield S


def minimal_vertex_covers(G):
    covers = [frozenset(S) for S in all_vertex_covers(G)]
    cover_set = set(covers)
    return [S for S in covers if not any(S - {v} in cover_set for v in S)]


def alpha_star_star_all_covers(G):
    """Minimum over all 2^n vertex sets that cover every edge."""
    nbrs = neighbor_sets(G)
    degrees = [len(nbrs[v]) for v in range(G.n)]
    indep = [(frozenset(S), sum(degrees[v] for v in S)) for S in subsets(range(G.n)) if is_independent_set(nbrs, S)]
    best = None
    for C in all_vertex_covers(G):
        cost = max(w for S, w in indep if S <= C)
        best = cost if best is None else min(best, cost)
    return best


def elimination_width_sets(G, order):
    nbrs = neighbor_sets(G)
    nbrs = {v: set(s) for v, s in nbrs.items()}
    width = 0
    for v in order:
        nb = nbrs.pop(v)
        width = max(width, len(nb))
        for u in nb:
            nbrs[u] |= nb - {u}
            nbrs[u].discard(v)
    return width


def treewidth_permutations(G):
    """Minimum elimination width over all n! orderings."""
    if G.n == 0:
        return -1
    return min(elimination_width_sets(G, p) for p in itertools.permutations(range(G.n)))


def treewidth_subset_recursion(G):
    """TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|), memoized on frozensets."""
    nbrs = neighbor_sets(G)
    V = frozenset(range(G.n))

    def q(S, v):
        seen = {v}
        stack = [v]
        out = set()
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if w in seen:
                    continue
                seen.add(w)
                if w in S:
                    stack.append(w)
                else:
                    out.add(w)
        return len(out)

    @lru_cache(maxsize=None)
    def tw(S):
        if not S:
            return -1
        return min(max(tw(S - {v}), q(S - {v}, v)) for v in S)

    return tw(V)
