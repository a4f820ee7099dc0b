"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "AffiliationError",
    "BadFactorizationError",
    "BadLengthError",
    "DimMismatchError",
    "DimTooLargeError",
    "EmptyFactorsError",
    "FrameLabError",
    "GroupMismatchError",
    "HomomorphismFailure",
    "InvalidPError",
    "MalformedTableError",
    "NoIdentityError",
    "NoInverseError",
    "NotAbelianError",
    "NotAssociativeError",
    "NotRealValuedError",
    "NotSelfAdjointError",
    "OrderTooLargeError",
    "ParseError",
    "ZeroGeneratorError",
]


class FrameLabError(Exception):
    """Base class for all errors raised by this package."""


class EmptyFactorsError(FrameLabError):
    """An abelian group was requested with an empty factor list."""


class OrderTooLargeError(FrameLabError):
    """A group construction would exceed the configured order cap."""


class ParseError(FrameLabError):
    """A group or representation spec string does not match the grammar."""


class MalformedTableError(FrameLabError):
    """A multiplication table is not a square matrix of valid indices."""


class NoIdentityError(FrameLabError):
    """A multiplication table has no two-sided identity element."""


class NoInverseError(FrameLabError):
    """Some element of a multiplication table has no two-sided inverse."""


class NotAssociativeError(FrameLabError):
    """A multiplication table violates associativity."""


class NotAbelianError(FrameLabError):
    """An operation that needs a commutative group got a noncommutative one."""


class GroupMismatchError(FrameLabError):
    """Two arguments live over different groups."""


class InvalidPError(FrameLabError):
    """The exponent passed to a p-norm is outside [1, inf]."""


class NotSelfAdjointError(FrameLabError):
    """An operator expected to be selfadjoint is not, beyond tolerance."""


class AffiliationError(FrameLabError):
    """A matrix expected to be a group convolution operator is not one."""


class DimTooLargeError(FrameLabError):
    """A representation would act on a space above the configured dimension cap."""


class DimMismatchError(FrameLabError):
    """A vector's length does not match the representation space."""


class HomomorphismFailure(FrameLabError):
    """A constructed family of matrices fails the group law."""


class ZeroGeneratorError(FrameLabError):
    """Orbit analysis was asked to run on a (numerically) zero generator."""


class BadLengthError(FrameLabError):
    """A signal's length does not match the requested model size."""


class BadFactorizationError(FrameLabError):
    """A signal's length does not factor as the requested L*M."""


class NotRealValuedError(FrameLabError):
    """A function expected to be real-valued has a large imaginary part."""
