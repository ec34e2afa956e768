"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: parse errors exit 2,
invariant/assumption violations exit 3, non-convergence exits 4 and
enumeration budget overruns exit 5.
"""


class GraphError(ValueError):
    """A graph or rotation-system invariant is violated."""


class AssumptionError(ValueError):
    """A coin or boundary assumption required by a closed form is violated."""


class ConvergenceError(RuntimeError):
    """The walk iteration did not reach the requested tolerance."""

    def __init__(self, message, residual=None, steps=None):
        super().__init__(message)
        self.residual = residual
        self.steps = steps


class BudgetError(RuntimeError):
    """An enumeration would exceed the configured raw-system budget."""


class ParseError(ValueError):
    """A rotation-system file could not be parsed."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self):
        base = super().__str__()
        if self.line is not None:
            return f"line {self.line}: {base}"
        return base
