"""Exception types shared by the trirep modules."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class InvariantViolation(ArithmeticError):
    """An internal consistency check failed (inexact division, bad count).

    Seeing this means a bug or a misread formula, never bad user input.
    """


class BudgetExceeded(RuntimeError):
    """A brute-force enumeration would exceed its configured work budget."""

    def __init__(self, needed: int, budget: int):
        super().__init__(f"enumeration needs ~{needed} steps, budget is {budget}")
        self.needed = needed
        self.budget = budget


class UnsupportedForm(KeyError):
    """No closed-form evaluator is registered for the requested form."""

    def __str__(self) -> str:
        return f"unsupported form {self.args[0]}"
