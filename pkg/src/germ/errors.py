"""Exception hierarchy shared by the whole package.

The three leaf classes map one-to-one onto the CLI exit codes:
InputError -> 1, DomainError -> 2, UnsupportedError -> 3.
"""

from __future__ import annotations


class GermError(Exception):
    """Base class for all errors raised by this package."""


class InputError(GermError):
    """Malformed input: parse errors, empty data, out-of-range arguments."""


class DomainError(GermError):
    """Structurally valid input that violates an operation's precondition."""


class UnsupportedError(GermError):
    """Valid input outside the exactly-computable fragment (e.g. a fiber
    point with irrational coordinates)."""
