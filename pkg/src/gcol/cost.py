"""Abstract quantum query-cost accounting.

All search-style subroutines are charged with unit constants: a Grover
search over ``m`` items costs ``sqrt(m)`` calls of its subroutine, minimum
finding over ``m`` items costs ``sqrt(m)``, and a generic graph-collision
subroutine on ``k`` vertices costs ``k ** (2/3)``.  The numbers are only
meaningful as ratios against the asymptotic bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class CostLedger:
    trace: list[tuple[str, float]] = field(default_factory=list)

    @property
    def total(self) -> float:
        return math.fsum(c for _, c in self.trace)

    def charge(self, label: str, cost: float) -> float:
        if cost < 0 or math.isnan(cost):
            raise ValueError(f"cost must be nonnegative, got {cost}")
        self.trace.append((label, float(cost)))
        return cost

    def merge(self, other: CostLedger) -> CostLedger:
        return CostLedger(self.trace + other.trace)

    __add__ = merge

    def format(self) -> str:
        lines = [f"{cost:12.4f}  {label}" for label, cost in self.trace]
        lines.append(f"{self.total:12.4f}  total")
        return "\n".join(lines)


def grover_cost(m: int) -> float:
    """Subroutine calls made by a Grover search over ``m`` items."""
    if m < 0:
        raise ValueError("item count must be nonnegative")
    return math.sqrt(m)


min_find_cost = grover_cost


def subroutine_cost(k: int) -> float:
    """Queries of the generic ``k ** (2/3)`` graph-collision subroutine."""
    if k < 0:
        raise ValueError("vertex count must be nonnegative")
    return k ** (2.0 / 3.0)


def nested_cost(outer_items: int, inner_costs) -> float:
    """Grover search over items whose check costs at most ``max(inner_costs)``."""
    return grover_cost(outer_items) * max(inner_costs, default=0.0)


def treewidth_bound(n: int, t: int) -> float:
    """sqrt(ceil((2n - 2t - 1) / t)) * (2t + 1) ** (2/3)."""
    if not 1 <= t < n:
        raise ValueError(f"need 1 <= t < n, got n={n}, t={t}")
    chunks = max(1, -(-(2 * n - 2 * t - 1) // t))
    return math.sqrt(chunks) * (2 * t + 1) ** (2.0 / 3.0)


def span_bound(n: int, alpha_ss: int) -> float:
    if n < 0 or alpha_ss < 0:
        raise ValueError("arguments must be nonnegative")
    return math.sqrt(n) + math.sqrt(alpha_ss)


def belovs_bound(n: int, alpha: int) -> float:
    return math.sqrt(n) * alpha ** (1.0 / 6.0)


def tw_asymptotic(n: int, t: int) -> float:
    return math.sqrt(n) * t ** (1.0 / 6.0)


def trivial_bound(m: int) -> float:
    return math.sqrt(m)
