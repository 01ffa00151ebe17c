"""Exception types shared across the package.

The distinction matters for the CLI exit-code contract: bad input is a
usage error (exit 2), a request beyond the documented size limits is a
resource error (exit 3), and a non-integral average or failed projector
identity is an internal consistency failure that must never be rounded
away.
"""


class KronlabError(Exception):
    """Base class for package errors."""


class InputError(KronlabError, ValueError):
    """Invalid user input: malformed partition, size mismatch, bad encoding."""


class BoundExceededError(KronlabError):
    """A computation was requested beyond its documented size bound."""


class ConsistencyError(KronlabError):
    """An exact identity failed (non-integral average, non-idempotent
    projector, rank/trace disagreement).  Signals a bug, not bad input."""
