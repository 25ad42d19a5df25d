"""Exception types shared across the package.

Every failure mode callers are expected to branch on gets its own class;
generic ValueError/TypeError are reserved for programming errors.
"""

from __future__ import annotations


class LatcertError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(LatcertError, ValueError):
    """An argument violates a documented precondition."""


class InconclusiveError(LatcertError):
    """The computation cannot certify an answer either way.

    Raised instead of guessing: callers that tolerate unknowns catch this
    and degrade to an explicit UNKNOWN status.
    """


class BudgetExceededError(LatcertError):
    """An enumeration or search would exceed its configured budget."""


class UnsupportedPlaceError(LatcertError):
    """The prime fails the maximal-order criterion for this field.

    Local data at such a prime would silently be wrong, so the factorization
    refuses instead.
    """


class CertificateFormatError(LatcertError, ValueError):
    """A certificate file is not parseable as certificate JSON."""


class CertificateVersionError(LatcertError):
    """A certificate was produced by an incompatible tool version."""
