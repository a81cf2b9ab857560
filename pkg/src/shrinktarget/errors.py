"""Error taxonomy shared by every module.

Four failure classes, each with a stable process exit code so shell callers
can dispatch on the kind of failure without parsing messages:

* domain errors (bad arguments, inadmissible parameters)      -> exit 2
* precision errors (a certified comparison was inconclusive)  -> exit 3
* resource errors (a scan or iteration budget was exceeded)   -> exit 4
* internal errors (a proven invariant failed; a bug)          -> exit 5
"""

__all__ = [
    "DomainError",
    "DegenerateInputError",
    "ConfigError",
    "PrecisionError",
    "ResourceError",
    "InternalError",
    "EXIT_OK",
    "EXIT_DOMAIN",
    "EXIT_PRECISION",
    "EXIT_RESOURCE",
    "EXIT_INTERNAL",
    "exit_code_for",
]

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_PRECISION = 3
EXIT_RESOURCE = 4
EXIT_INTERNAL = 5


class DomainError(ValueError):
    """Arguments outside an operation's stated domain."""


class DegenerateInputError(DomainError):
    """Input hit a rational degeneracy (an exact zero where a positive
    quantity is required, e.g. a vanishing approximation error)."""


class ConfigError(DomainError):
    """Malformed or inconsistent run configuration.

    Carries an optional (line, column) pair pointing into the config text.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, col {column or 1}: {message}"
        super().__init__(message)


class PrecisionError(ArithmeticError):
    """A certified comparison could not be decided at the available radius.

    Raised instead of silently guessing; the message names the quantities
    whose intervals overlap so the caller can rebuild with a smaller radius.
    """


class ResourceError(RuntimeError):
    """A configured scan/iteration budget would be exceeded."""


class InternalError(AssertionError):
    """An invariant that is supposed to be a theorem failed; indicates a bug
    in this package, not in the caller's input."""


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, DomainError):
        return EXIT_DOMAIN
    if isinstance(exc, PrecisionError):
        return EXIT_PRECISION
    if isinstance(exc, ResourceError):
        return EXIT_RESOURCE
    return EXIT_INTERNAL
