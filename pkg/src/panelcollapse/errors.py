"""Exception hierarchy.

User-facing problems (bad files, bad arguments, inputs violating an
operation's precondition) raise subclasses of :class:`UserInputError` and map
to CLI exit code 1.  :class:`InternalInvariantError` signals a broken internal
guarantee (a bug, never the user's fault) and maps to exit code 2.
"""


class UserInputError(Exception):
    """Base class for errors caused by the caller's input."""


class StructuralError(UserInputError):
    """Malformed raw data: duplicate vertices, self-loops, unknown references."""


class FileFormatError(StructuralError):
    """A text-format input file failed to parse; message carries the line number."""


class InvalidComplexError(UserInputError):
    """A graph that is structurally fine but is not a CAT(0) cube complex."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"not a CAT(0) cube complex: {report.summary()}")


class PreconditionError(UserInputError):
    """An operation was invoked on input violating its stated precondition."""


class InternalInvariantError(Exception):
    """A guaranteed invariant failed; indicates a bug in this package."""
