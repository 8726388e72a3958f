#!/usr/bin/env python

"""
Exception classes shared by every schottkit module.

All errors derive from SchottkitError. The three direct families
map onto the CLI exit codes: ParseError (1), PreconditionError (2)
and InvariantBreach (3). Failures that are part of an answer, such
as a missing Kolchin flag or a broken gauge identity, are returned
as values rather than raised.
"""

from typing import Optional


class SchottkitError(Exception):
    def __init__(self, *args, **kwargs):
        Exception.__init__(self, *args, **kwargs)


class ParseError(SchottkitError):
    """Malformed rational, word, group shorthand or JSON document."""


class PreconditionError(SchottkitError):
    """An input violates a documented precondition."""


class InvariantBreach(SchottkitError):
    """An internal post-condition failed. This is always a bug."""


# ----------------------------------------------------------------
# precondition violations, named by the invariant they break
# ----------------------------------------------------------------

class DivisionByZero(PreconditionError, ZeroDivisionError):
    """Division by an exact zero or by an approximate scalar below eps."""


class DomainError(PreconditionError):
    """Argument outside the domain of a transcendental function."""


class ShapeMismatch(PreconditionError):
    """Matrix or vector shapes are inconsistent."""


class BackendMismatch(PreconditionError):
    """Exact and approximate scalars were mixed."""


class NotNilpotent(PreconditionError):
    """A matrix expected to be nilpotent has a nonzero top power."""
    def __init__(self, message: str, witness: Optional[object] = None):
        super().__init__(message)
        self.witness = witness


class NotUnipotent(PreconditionError):
    """A matrix or representation expected to be unipotent is not."""
    def __init__(self, message: str, witness: Optional[object] = None):
        super().__init__(message)
        self.witness = witness


class NotInvertible(PreconditionError):
    """A generator image (or a matrix) is singular."""
    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class NonCommuting(PreconditionError):
    """Two images of an abelian group do not commute."""
    def __init__(self, message: str, i: int, j: int):
        super().__init__(message)
        self.i = i
        self.j = j


class SurfaceRelationViolated(PreconditionError):
    """The product of commutators is not the identity."""
    def __init__(self, message: str, residual: Optional[object] = None):
        super().__init__(message)
        self.residual = residual


class GroupMismatch(PreconditionError):
    """Operands live over different groups."""


class GeneratorOutOfRange(PreconditionError):
    """A word uses a generator index the group does not have."""


class InvalidCocycle(PreconditionError):
    """Cocycle values violate the Koszul condition."""
    def __init__(self, message: str, residual: Optional[object] = None):
        super().__init__(message)
        self.residual = residual


class NotExact(PreconditionError):
    """Inclusion/projection maps do not form a short exact sequence."""
    def __init__(self, message: str, residual: Optional[object] = None):
        super().__init__(message)
        self.residual = residual


class CoefficientMismatch(PreconditionError):
    """Two cocycles have different groups or coefficient modules."""
