"""Node-expansion budgets for the exponential searches."""

from __future__ import annotations

import os

DEFAULT_BUDGET = 20_000_000
ENV_VAR = "GCOL_BUDGET"


class BudgetExceeded(RuntimeError):
    """Raised when an exact search expands more nodes than it was allowed."""


def default_limit() -> int:
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{ENV_VAR} must be positive, got {value}")
    return value


class Budget:
    """Counts search-node expansions and fails once ``limit`` is passed.

    A single Budget may be shared by several calls so that a whole
    computation (say, alpha** with its nested searches) is bounded at once.
    """

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        self.limit = default_limit() if limit is None else int(limit)
        if self.limit <= 0:
            raise ValueError("budget must be positive")
        self.used = 0

    def tick(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise BudgetExceeded(f"node-expansion budget of {self.limit} exceeded")

    @property
    def remaining(self) -> int:
        return max(self.limit - self.used, 0)

    def __repr__(self) -> str:
        return f"Budget(limit={self.limit}, used={self.used})"


def as_budget(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)
