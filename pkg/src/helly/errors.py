"""Exception hierarchy shared by all modules.

Three failure kinds are kept apart because the CLI maps them to distinct
exit codes: bad input (3), blown enumeration budget (3), and a falsified
theorem-level guarantee (4, should never fire on valid data).
"""


class ValidationError(ValueError):
    """Input violates a documented precondition."""


class HellyPreconditionError(ValidationError):
    """An operation that requires a Helly graph observed a non-Helly witness."""


class ResourceCapExceeded(RuntimeError):
    """An enumeration exceeded its configured cap."""


class InvariantViolation(AssertionError):
    """A verified guarantee failed on concrete data."""
