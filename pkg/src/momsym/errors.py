"""Exception types shared across the package.

Argument and shape problems raise plain ValueError.  ParseError marks
malformed input files (JSON/CSV), NumericError marks solver or quadrature
failures.  The CLI maps the three classes to distinct exit codes.
"""


class ParseError(ValueError):
    """Input file or inline spec could not be parsed."""


class NumericError(RuntimeError):
    """A numerical routine failed (non-convergence, non-finite values)."""
