"""Exception types shared across the package."""

from __future__ import annotations


class StrictMetricError(Exception):
    """Base class for all errors raised by this package."""


class Graph6Error(StrictMetricError, ValueError):
    """Malformed graph6 input.  ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class InvalidInput(StrictMetricError, ValueError):
    """A graph, path, system or certificate violates its structural invariants."""


class BudgetExceeded(StrictMetricError):
    """A search ran past its explicit budget.

    Searches never return partial answers; callers decide what to do.
    """

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: budget of {budget} exceeded")
        self.what = what
        self.budget = budget


class NotPersistent(StrictMetricError, ValueError):
    """Contraction requested on an edge that is not persistent.

    ``witness`` is a vertex x whose chosen paths to the two endpoints meet only at x.
    """

    def __init__(self, edge, witness: int):
        super().__init__(f"edge {edge} is not persistent (witness vertex {witness})")
        self.edge = edge
        self.witness = witness


class InconsistentSystem(StrictMetricError, ValueError):
    """A derived structure exposed a consistency failure in a path system."""


class InternalInvariantError(StrictMetricError, AssertionError):
    """Two independent routes disagreed, or a self-check failed.  Always a bug."""
