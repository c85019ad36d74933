"""Node budgets for the exponential searches.

Every search that can blow up accepts an optional :class:`Budget`.  When the
budget runs out the search raises :class:`BudgetExhausted`; callers that
produce reports catch it and record the value as undecided.
"""

from __future__ import annotations


class BudgetExhausted(RuntimeError):
    """Raised when a search has used up its node budget."""

    def __init__(self, what: str, used: int):
        super().__init__(f"{what}: node budget exhausted after {used} nodes")
        self.what = what
        self.used = used


class Budget:
    """A shared countdown of search nodes.

    ``Budget(None)`` never runs out.  One budget may be threaded through
    several calls; the count is cumulative.
    """

    __slots__ = ("limit", "used", "what")

    def __init__(self, limit: int | None = None, what: str = "search"):
        if limit is not None and limit <= 0:
            raise ValueError("budget must be positive")
        self.limit = limit
        self.used = 0
        self.what = what

    def tick(self, nodes: int = 1) -> None:
        self.used += nodes
        if self.limit is not None and self.used > self.limit:
            raise BudgetExhausted(self.what, self.used)

    @property
    def remaining(self) -> int | None:
        if self.limit is None:
            return None
        return max(0, self.limit - self.used)


def as_budget(budget: Budget | int | None, what: str = "search") -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget, what)
