"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """A parameter lies outside the domain an operation is defined on."""


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would examine more candidates than allowed.

    ``required`` holds the number of candidates the call would need and
    ``budget`` the cap that refused it.
    """

    def __init__(self, required: int, budget: int, what: str = "candidates"):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} {what} but the budget is {budget}; "
            f"raise it with --budget or PROJLAB_BUDGET"
        )


class ConstructionError(RuntimeError):
    """A constructive routine produced an object that fails its own check."""
