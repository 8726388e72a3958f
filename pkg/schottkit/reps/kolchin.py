#!/usr/bin/env python

"""
Simultaneous unitriangularization (the Kolchin flag) and peeling
off a trivial line from a unipotent representation.

A representation is unipotent when its images are simultaneously
conjugate to unit upper triangular matrices. This is decided by the
flag algorithm and never by looking at generator images one at a
time: [[1,2],[0,1]] and [[1,0],[2,1]] are each unipotent but the
group they generate is not.
"""

from typing import List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass

from loguru import logger

from schottkit.algebra.numerics import Tolerance
from schottkit.algebra.linalg import (
    Matrix, hstack, inverse, kernel_basis, rank, rref, vstack,
)
from schottkit.reps.representation import Representation, adjoint_rep, trivial
from schottkit.utils.utils import InvariantBreach, NotUnipotent, PreconditionError


@dataclass(frozen=True)
class UnipotenceCertificate:
    """P with P^-1 rho(gen) P unit upper triangular for every generator.

    Attributes
    ----------
    triangularizer: Matrix
        The invertible change of basis P.
    flag: Tuple[int, ...]
        Dimensions 1..r of the invariant flag spanned by the leading
        columns of P.
    stages: Tuple[int, ...]
        Dimension of the invariant subspace after each fixed-space
        stage (the socle filtration).
    """
    triangularizer: Matrix
    flag: Tuple[int, ...]
    stages: Tuple[int, ...]

    def verify(self, rep: Representation, tol: Optional[Tolerance] = None) -> bool:
        """Check by conjugation that every image is unit upper triangular."""
        pinv = inverse(self.triangularizer, tol)
        if pinv is None:
            return False
        for img in rep.images:
            conj = pinv @ img @ self.triangularizer
            if not _is_unitriangular(conj, tol):
                return False
        return True


@dataclass(frozen=True)
class NotUnipotentWitness:
    """The common fixed space of the quotient at `stage` is zero.

    Attributes
    ----------
    stage: int
        1-based stage at which the flag got stuck.
    level: int
        Dimension of the invariant unipotent subspace reached so far.
    quotient_images: Tuple[Matrix, ...]
        Induced action on the (r - level)-dimensional quotient.
    """
    stage: int
    level: int
    quotient_images: Tuple[Matrix, ...]

    def __bool__(self):
        return False


def _is_unitriangular(mat: Matrix, tol: Optional[Tolerance] = None) -> bool:
    if tol is None:
        return mat.is_upper_unitriangular()
    one = mat.backend.one()
    for i in range(mat.rows):
        if not (mat[i, i] - one).is_zero(tol):
            return False
        if any(not mat[i, j].is_zero(tol) for j in range(i)):
            return False
    return True


def fixed_space(images: Sequence[Matrix], size: int, tol: Optional[Tolerance] = None) -> List[Matrix]:
    """Canonical basis of the common fixed space, the intersection of
    ker(M - I) over the given images."""
    if not images:
        return kernel_basis(Matrix.zeros(0, size), tol)
    ident = Matrix.identity(size, images[0].backend)
    return kernel_basis(vstack([m - ident for m in images]), tol)


def _complete_basis(vectors: List[Matrix], size: int, tol: Optional[Tolerance] = None) -> List[Matrix]:
    """Extend independent vectors to a basis of the whole space by the
    standard basis vectors e_j at the non-pivot columns of their
    echelon form."""
    backend = vectors[0].backend
    _, pivots = rref(vstack([v.T for v in vectors]), tol)
    if len(pivots) != len(vectors):
        raise InvariantBreach("flag vectors became dependent")
    return list(vectors) + [_unit(size, j, backend) for j in range(size) if j not in pivots]


def _unit(size: int, index: int, backend) -> Matrix:
    return Matrix.identity(size, backend).col(index)


def unipotence_flag(rep: Representation, tol: Optional[Tolerance] = None) -> Union[UnipotenceCertificate, NotUnipotentWitness]:
    """Build a Kolchin flag or report where it fails.

    At each stage the common fixed space of the induced action on the
    current quotient is lifted and appended to the invariant subspace.
    The stage fails if that fixed space is zero while the quotient is
    not.

    Returns
    -------
    UnipotenceCertificate or NotUnipotentWitness
    """
    size = rep.rank
    backend = rep.backend
    if size == 0:
        return UnipotenceCertificate(Matrix.identity(0, backend), (), ())

    chosen: List[Matrix] = []
    stages: List[int] = []
    qmat = Matrix.identity(size, backend)
    stage = 0
    while len(chosen) < size:
        stage += 1
        level = len(chosen)
        qinv = inverse(qmat, tol)
        quotients = [
            (qinv @ img @ qmat).submatrix(level, size, level, size) for img in rep.images
        ]
        fixed = fixed_space(quotients, size - level, tol)
        logger.debug(f"kolchin stage {stage}: level {level}, fixed dim {len(fixed)}")
        if not fixed:
            return NotUnipotentWitness(stage, level, tuple(quotients))
        # lift quotient coordinates through the complement columns of Q
        complement = qmat.submatrix(0, size, level, size)
        chosen += [complement @ vec for vec in fixed]
        stages.append(len(chosen))
        qmat = hstack(_complete_basis(chosen, size, tol))

    cert = UnipotenceCertificate(qmat, tuple(range(1, size + 1)), tuple(stages))
    if not cert.verify(rep, tol):
        raise InvariantBreach("Kolchin triangularizer failed its own check")
    return cert


def is_unipotent(rep: Representation, tol: Optional[Tolerance] = None) -> bool:
    return isinstance(unipotence_flag(rep, tol), UnipotenceCertificate)


def ad_unipotent_check(rep: Representation, tol: Optional[Tolerance] = None) -> bool:
    """True if the group generated by the images is Ad-unipotent,
    i.e. the adjoint representation admits a Kolchin flag."""
    return is_unipotent(adjoint_rep(rep, tol), tol)


@dataclass(frozen=True)
class PeelResult:
    """0 -> C -> M -> M_{r-1} -> 0 with explicit maps.

    Attributes
    ----------
    sub: Representation
        The trivial rank-1 subrepresentation.
    quotient: Representation
        The induced rank r-1 representation.
    inclusion: Matrix
        r x 1 column spanning the fixed line.
    projection: Matrix
        (r-1) x r matrix onto the quotient coordinates.
    basis: Matrix
        The adapted basis Q = [inclusion | complement].
    """
    sub: Representation
    quotient: Representation
    inclusion: Matrix
    projection: Matrix
    basis: Matrix

    def check_exact(self, rep: Representation, tol: Optional[Tolerance] = None) -> bool:
        """Equivariance of both maps and exactness in the middle."""
        for idx, img in enumerate(rep.images):
            if not (img @ self.inclusion - self.inclusion @ self.sub.images[idx]).is_zero(tol):
                return False
            if not (self.projection @ img - self.quotient.images[idx] @ self.projection).is_zero(tol):
                return False
        if not (self.projection @ self.inclusion).is_zero(tol):
            return False
        return rank(self.inclusion, tol) == 1 and rank(self.projection, tol) == rep.rank - 1


def peel(rep: Representation, tol: Optional[Tolerance] = None) -> PeelResult:
    """Split off the fixed line spanned by the first vector of the
    canonical echelon basis of the common fixed space.

    Raises NotUnipotent if rep has no Kolchin flag.
    """
    if rep.rank == 0:
        raise PreconditionError("cannot peel a rank 0 representation")
    cert = unipotence_flag(rep, tol)
    if not cert:
        raise NotUnipotent(
            f"no Kolchin flag: fixed space vanishes at stage {cert.stage}", witness=cert)

    size = rep.rank
    line = fixed_space(rep.images, size, tol)[0]
    qmat = hstack(_complete_basis([line], size, tol))
    qinv = inverse(qmat, tol)
    quotient = Representation(rep.group, size - 1, tuple(
        (qinv @ img @ qmat).submatrix(1, size, 1, size) for img in rep.images
    ))
    result = PeelResult(
        sub=trivial(rep.group, 1, rep.backend),
        quotient=quotient,
        inclusion=line,
        projection=qinv.submatrix(1, size, 0, size),
        basis=qmat,
    )
    if not result.check_exact(rep, tol):
        raise InvariantBreach("peel produced a non-exact sequence")
    return result
