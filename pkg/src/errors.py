"""
Exception hierarchy shared by the library and the command line.

Every error carries the `kind` written to output records and the process exit
code the CLI uses for it. Infinite and indeterminate binomial values are
results, not errors, and never appear here.
"""

from src.delivery.config import EXIT_FAILURE, EXIT_NON_CONVERGENT, EXIT_OVERFLOW, EXIT_USAGE


class BinomialError(Exception):
    """Base class for all library errors."""

    kind: str = "error"
    exit_code: int = EXIT_FAILURE


class DomainError(BinomialError, ValueError):
    """An argument lies outside the operation's precondition."""

    kind = "domain"
    exit_code = EXIT_USAGE


class PoleError(DomainError):
    """A gamma function was asked for a value at (or a ratio through) one of its poles."""

    kind = "pole"


class LiteralParseError(DomainError):
    """A command-line number literal could not be parsed."""

    kind = "parse"


class UsageError(DomainError):
    """A command-line request is malformed (unknown identity, empty window, ...)."""

    kind = "usage"


class RepresentationOverflowError(BinomialError, OverflowError):
    """A finite result exceeds the double-precision range."""

    kind = "overflow"
    exit_code = EXIT_OVERFLOW


class NonConvergentRegionError(BinomialError, ArithmeticError):
    """A series was requested outside the region where it converges."""

    kind = "non_convergent_region"
    exit_code = EXIT_NON_CONVERGENT


class BoundaryRegionError(NonConvergentRegionError):
    """|x| = |y| for a negative power: neither expansion converges absolutely."""

    kind = "boundary_region"
