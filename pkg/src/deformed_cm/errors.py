"""Exception types shared across the package."""


class ContextMismatch(ValueError):
    """Operands live in different coefficient rings."""


class UnassignedGenerator(KeyError):
    """A generator occurring in a polynomial has no value."""

    def __str__(self):
        return "unassigned generator: %s" % (self.args[0] if self.args else "?")


class ZetaNotEvaluable(ValueError):
    """A zeta generator was evaluated on a backend without a closed form for it."""

    def __init__(self, msg="zeta not evaluable on this backend"):
        super().__init__(msg)


class DegeneratePoint(ArithmeticError):
    """An evaluation hit a pole or a degenerate group operation."""


class TruncationError(ValueError):
    """A truncated series is too short to decide the requested coefficients."""


class RetryBudgetExhausted(RuntimeError):
    """Sampling kept hitting degenerate points."""
