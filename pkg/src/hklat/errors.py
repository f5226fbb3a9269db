"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: UsageError -> 2,
UnsupportedInputError -> 3, InconsistencyError / ResourceError -> 4.
"""


class HklatError(Exception):
    pass


class UsageError(HklatError):
    """Caller violated a documented precondition (bad arity, bad value)."""


class UnsupportedInputError(HklatError):
    """Input is well formed but outside the supported domain."""


class InconsistencyError(HklatError):
    """An internal invariant or integrality assertion failed."""


class ResourceError(HklatError):
    """A guard against combinatorial blow-up was hit."""
