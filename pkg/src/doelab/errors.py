"""Exception hierarchy shared across the toolbox.

Exit codes follow the CLI contract: 0 ok, 1 usage, 2 validation,
3 io, 4 numeric. Every error carries the code of the subcommand
outcome it should produce; the service layer maps the same classes
onto HTTP statuses.
"""

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_NUMERIC = 4


class DoelabError(Exception):
    """Base class for all toolbox errors."""

    exit_code = EXIT_VALIDATION


class UsageError(DoelabError):
    """Bad invocation: unknown model/analyzer, conflicting options."""

    exit_code = EXIT_USAGE


class IoError(DoelabError):
    """File system problems: missing, unreadable, or unwritable paths."""

    exit_code = EXIT_IO


class MalformedJson(DoelabError):
    """Input document is not well-formed JSON (in the active mode)."""

    exit_code = EXIT_VALIDATION


class SchemaViolation(DoelabError):
    """A document violates the scenario-config schema.

    Carries the dotted path of the offending element plus a reason.
    """

    exit_code = EXIT_VALIDATION

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


class MalformedRecipeFile(DoelabError):
    exit_code = EXIT_VALIDATION


class MalformedResults(DoelabError):
    """A results row is unusable; carries the row identifier and reason."""

    exit_code = EXIT_VALIDATION

    def __init__(self, row, reason: str):
        self.row = row
        self.reason = reason
        super().__init__(f"results row {row!r}: {reason}")


class UnknownMetric(DoelabError):
    exit_code = EXIT_VALIDATION


class MissingRuns(DoelabError):
    """Declared recipe runs absent from the results file."""

    exit_code = EXIT_VALIDATION

    def __init__(self, run_ids):
        self.run_ids = list(run_ids)
        shown = ", ".join(self.run_ids[:10])
        more = "" if len(self.run_ids) <= 10 else f" (+{len(self.run_ids) - 10} more)"
        super().__init__(f"results are missing {len(self.run_ids)} run(s): {shown}{more}")


class DimensionUnsupported(DoelabError):
    exit_code = EXIT_VALIDATION

    def __init__(self, dim: int, limit: int = 64):
        self.dim = dim
        super().__init__(f"dimension {dim} outside supported range 1..{limit}")


class TooManyFactors(DoelabError):
    exit_code = EXIT_VALIDATION

    def __init__(self, k: int, limit: int = 20):
        self.k = k
        super().__init__(f"{k} factors would produce 2^{k} corner runs; limit is {limit}")


class SampleSizeTooSmall(DoelabError):
    """Design cannot be built at the requested sample count."""

    exit_code = EXIT_VALIDATION

    def __init__(self, minimum: int, message: str):
        self.minimum = minimum
        super().__init__(message)


class UnmappableRecipe(DoelabError):
    exit_code = EXIT_VALIDATION


class ParamOutOfRange(DoelabError):
    exit_code = EXIT_VALIDATION


class DomainError(DoelabError):
    """Argument outside a special function's mathematical domain."""

    exit_code = EXIT_NUMERIC


class NotPositiveDefinite(DoelabError):
    exit_code = EXIT_NUMERIC


class DegenerateGroups(DoelabError):
    exit_code = EXIT_NUMERIC


class TooManyLevels(DoelabError):
    """Factor takes too many distinct levels for grouped analysis."""

    exit_code = EXIT_VALIDATION

    def __init__(self, factor: str, n_levels: int, limit: int):
        self.factor = factor
        self.n_levels = n_levels
        super().__init__(
            f"factor {factor!r} takes {n_levels} distinct levels (limit {limit}); "
            "grouped screening is meant for extreme-point style designs"
        )


class SingularCovariance(DoelabError):
    exit_code = EXIT_NUMERIC


class ZeroVariance(DoelabError):
    exit_code = EXIT_NUMERIC


class NotAnOatDesign(DoelabError):
    exit_code = EXIT_VALIDATION


class NotASaltelliDesign(DoelabError):
    exit_code = EXIT_VALIDATION


class NotAnEfastDesign(DoelabError):
    exit_code = EXIT_VALIDATION


class NonIntervalFactor(DoelabError):
    exit_code = EXIT_VALIDATION


class DimensionMismatch(DoelabError):
    exit_code = EXIT_VALIDATION


class AnalyzerNotImplemented(DoelabError):
    """The design type has no analysis method (sampling-only types)."""

    exit_code = EXIT_VALIDATION


_BY_NAME = None


def error_by_name(name: str) -> type:
    """Look up an error class by its name (service wire format)."""
    global _BY_NAME
    if _BY_NAME is None:
        _BY_NAME = {
            cls.__name__: cls
            for cls in list(globals().values())
            if isinstance(cls, type) and issubclass(cls, DoelabError)
        }
    return _BY_NAME.get(name, DoelabError)
