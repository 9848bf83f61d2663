"""Parameterized graph-collision algorithms, verified classically.

Tree-decomposition chunking, the vertex-cover span program, and the
circulant window procedure, together with exact graph parameters
(alpha, alpha*, alpha**, treewidth) and an abstract query-cost model.
"""

from gcol.budget import Budget, BudgetExceeded
from gcol.graph import (
    Assignment,
    Graph,
    gen_circulant,
    gen_join_empty_complete,
    gen_square_graph,
    has_collision,
    new_graph,
    parse_edge_list,
    write_edge_list,
)

__all__ = [
    "Assignment",
    "Budget",
    "BudgetExceeded",
    "Graph",
    "gen_circulant",
    "gen_join_empty_complete",
    "gen_square_graph",
    "has_collision",
    "new_graph",
    "parse_edge_list",
    "write_edge_list",
]

__version__ = "0.1.0"
