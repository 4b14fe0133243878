"""Search budgets and three-state search results.

Every expensive search distinguishes "found", "exhaustively absent" and
"budget ran out / cancelled"; the last two must never be conflated.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Generic, TypeVar

T = TypeVar("T")

DEFAULT_BUDGET_ENV = "FULKERSON_LAB_BUDGET"
DEFAULT_NODE_BUDGET = 5_000_000


def default_node_budget() -> int:
    raw = os.environ.get(DEFAULT_BUDGET_ENV)
    if raw is None:
        return DEFAULT_NODE_BUDGET
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_NODE_BUDGET


@dataclass
class Budget:
    """Cooperative node budget with an optional cancellation callback.

    Searches call spend() once per explored node; a False return means the
    search must unwind and report an incomplete result.
    """

    limit: int | None = None
    cancel: Callable[[], bool] | None = None
    spent: int = field(default=0, init=False)
    exhausted: bool = field(default=False, init=False)

    def __post_init__(self) -> None:
        if self.limit is None:
            self.limit = default_node_budget()

    def spend(self, amount: int = 1) -> bool:
        if self.exhausted:
            return False
        self.spent += amount
        if (self.limit is not None and self.spent > self.limit) or (
            self.cancel is not None and self.cancel()
        ):
            self.exhausted = True
            return False
        return True


@dataclass(frozen=True)
class SearchResult(Generic[T]):
    """Outcome of a bounded search.

    value is None either because the space was exhausted without a witness
    (complete=True, a proof of absence) or because the budget ran out
    (complete=False, an explicit "unknown").
    """

    value: T | None
    complete: bool

    @property
    def found(self) -> bool:
        return self.value is not None

    @property
    def definitely_absent(self) -> bool:
        return self.value is None and self.complete

    @property
    def unknown(self) -> bool:
        return self.value is None and not self.complete
