"""Exception types shared by the counting engines and the CLI."""


class WpsError(Exception):
    """Base class for all package errors."""


class InputError(WpsError, ValueError):
    """Malformed or out-of-domain input (CLI exit code 2)."""


class NotWellFormedError(InputError):
    def __init__(self, entries, subset):
        self.entries = tuple(entries)
        self.subset = tuple(subset)
        super().__init__(
            f"weight {','.join(map(str, self.entries))} is not well-formed: "
            f"the subset ({','.join(map(str, self.subset))}) has a common divisor > 1"
        )


class BudgetExceededError(WpsError):
    """An enumeration would visit more lattice points than allowed (exit code 3)."""

    def __init__(self, required, budget, what="lattice visits"):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} {what} but the budget is {budget}; "
            f"raise the budget or lower T"
        )


class FactoringBoundError(WpsError):
    """A norm could not be factored with trial division up to the configured bound."""


class InvariantViolation(WpsError):
    """An internal consistency check failed (exit code 4)."""
