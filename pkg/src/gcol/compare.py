"""One-row comparison of the known query bounds for a graph."""

from __future__ import annotations

from dataclasses import astuple, dataclass

from gcol.budget import Budget, as_budget
from gcol.cost import belovs_bound, span_bound, trivial_bound, tw_asymptotic
from gcol.graph import Graph
from gcol.params import alpha_star_star, independence_number, max_independent_total_degree
from gcol.treedecomp import exact_treewidth, heuristic_decomposition

EXACT_TREEWIDTH_LIMIT = 20


@dataclass(frozen=True)
class BoundRow:
    graph_id: str
    n: int
    m: int
    alpha: int
    alpha_star: int
    alpha_star_star: int
    treewidth: int
    bound_belovs: float
    bound_gi: float
    bound_span: float
    bound_tw: float
    bound_trivial: float
    best: float

    HEADER = (
        "graph_id", "n", "m", "alpha", "alpha_star", "alpha_star_star", "treewidth",
        "bound_belovs", "bound_gi", "bound_span", "bound_tw", "bound_trivial", "best",
    )

    def as_tuple(self) -> tuple:
        return astuple(self)


def compare_bounds(G: Graph, graph_id: str = "", budget: Budget | int | None = None) -> BoundRow:
    """All bounds for ``G`` with exact parameters.

    Treewidth is exact up to ``EXACT_TREEWIDTH_LIMIT`` vertices and a
    min-fill upper bound beyond.  The treewidth bound uses ``max(t, 1)``
    because the chunking needs width at least one.
    """
    budget = as_budget(budget)
    n = G.n
    alpha = independence_number(G, budget)
    a_star = max_independent_total_degree(G, budget)
    a_ss, _ = alpha_star_star(G, budget)
    if n <= EXACT_TREEWIDTH_LIMIT:
        tw, _ = exact_treewidth(G, budget)
    else:
        tw = heuristic_decomposition(G).width
    bounds = (
        belovs_bound(n, alpha),
        span_bound(n, a_star),
        span_bound(n, a_ss),
        tw_asymptotic(n, max(tw, 1)),
        trivial_bound(G.m),
    )
    return BoundRow(graph_id, n, G.m, alpha, a_star, a_ss, max(tw, 0), *bounds, min(bounds))

