"""Exception types shared across the package."""


class CoxklError(Exception):
    """Base class for every error raised deliberately by this package."""


class DiagramError(CoxklError, ValueError):
    """A Coxeter diagram is malformed or a generator is unknown."""


class WordError(CoxklError, ValueError):
    """A word mentions generators that do not exist or cannot be parsed."""


class NotReducedError(CoxklError, ValueError):
    """An operation required a reduced word and got a non-reduced one."""


class NotFullyCommutativeError(CoxklError, ValueError):
    """A heap-based operation was given an element that is not fully commutative."""


class PreconditionError(CoxklError, ValueError):
    """The hypotheses of an identity or operation are not met."""


class BudgetExceeded(CoxklError):
    """A configured resource bound was hit.

    ``budget`` names the bound (matching the environment variable suffix) and
    ``limit`` is the value in force.
    """

    def __init__(self, budget: str, limit, detail: str = ""):
        self.budget = budget
        self.limit = limit
        msg = f"budget {budget!r} exceeded (limit {limit})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
