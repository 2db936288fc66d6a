"""Exception types shared across the package.

The CLI maps these onto its exit-code contract: validation failures exit 1,
degenerate configurations exit 2, unparseable input exits 3.
"""


class FlagvolError(Exception):
    """Base class for all package-specific errors."""


class NonFiniteError(FlagvolError, ValueError):
    """An input contains NaN or Inf, or an operation would produce one."""


class DegenerateError(FlagvolError, ValueError):
    """A configuration is too close to a degenerate one to evaluate.

    Raised for dilogarithm parameters at 0 or 1, vanishing Ptolemy
    coordinates, non-generic flag tuples, and exhausted random retries.
    """


class BranchMismatchError(FlagvolError, ValueError):
    """Log-branch data failed to recover integers within tolerance."""


class ParseError(FlagvolError, ValueError):
    """Input document is not well-formed (syntax or schema)."""


class ValidationError(FlagvolError, ValueError):
    """A structurally well-formed document violates a model invariant."""
