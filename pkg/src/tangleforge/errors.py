"""Exception hierarchy and the process exit codes the CLI maps it onto."""

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_AXIOM = 3
EXIT_PRECONDITION = 4
EXIT_CANONICITY = 5


class TangleForgeError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class ParseError(TangleForgeError):
    """An input file could not be parsed (bad syntax or schema)."""

    exit_code = EXIT_PARSE

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}:"
            if line is not None:
                prefix += f"{line}:"
            prefix += " "
        super().__init__(prefix + message)


class AxiomError(TangleForgeError):
    """A separation-system axiom failed validation; carries the report."""

    exit_code = EXIT_AXIOM

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class PreconditionError(TangleForgeError):
    """An operation was invoked outside its contract.

    Raised both for caller mistakes (empty input, duplicate family members)
    and for internal guarantees that can only fail when the input family was
    not jointly submodular or not consistent.  ``invariant`` is a stable
    machine-readable tag naming the violated guarantee.
    """

    exit_code = EXIT_PRECONDITION

    def __init__(self, message, invariant=None, witness=None):
        self.invariant = invariant
        self.witness = witness
        if invariant is not None:
            message = f"[{invariant}] {message}"
        super().__init__(message)


class SizeCapError(PreconditionError):
    """An enumeration would exceed its configured size cap."""

    def __init__(self, what, actual, cap):
        self.what = what
        self.actual = actual
        self.cap = cap
        super().__init__(
            f"{what} ({actual}) exceeds the cap of {cap}; raise the cap to proceed",
            invariant="size-cap",
        )
