#!/usr/bin/env python

"""
Extensions 0 -> B -> E -> A -> 0 built from a cocycle, and the
class of an extension read back from inclusion/projection data.
"""

from typing import Optional
from dataclasses import dataclass

from loguru import logger

from schottkit.algebra.numerics import Tolerance
from schottkit.algebra.linalg import Matrix, hstack, inverse, rank, solve, vstack
from schottkit.cohomology.cocycles import (
    Cocycle, ExtClass, class_of, hom_block, hom_vector,
)
from schottkit.reps.representation import Representation, hom_rep, validate
from schottkit.utils.utils import CoefficientMismatch, NotExact


@dataclass(frozen=True)
class ExtensionData:
    """An extension with its structure maps.

    Attributes
    ----------
    extension: Representation
        E, with images [[B(g), c(g)], [0, A(g)]].
    inclusion: Matrix
        (r_B + r_A) x r_B, the block [I; 0].
    projection: Matrix
        r_A x (r_B + r_A), the block [0 | I].
    cocycle: Cocycle
        The Hom(A, B) cocycle E was built from.
    """
    extension: Representation
    inclusion: Matrix
    projection: Matrix
    cocycle: Cocycle


def build_extension(first: Representation, second: Representation, cocycle: Cocycle, tol: Optional[Tolerance] = None) -> ExtensionData:
    """E(g) = [[B(g), c(g)], [0, A(g)]] with corner c(g) = z(g) A(g).

    Here A = first (the quotient) and B = second (the sub). The
    corner satisfies c(gh) = B(g) c(h) + c(g) A(h), which is the
    cocycle rule for z under C -> B C A^-1.

    Raises
    ------
    CoefficientMismatch
        cocycle coefficients are not Hom(A, B).
    InvalidCocycle
        cocycle condition fails; the residual is attached.
    """
    coefficients = hom_rep(first, second, tol)
    if cocycle.coefficients.images != coefficients.images:
        raise CoefficientMismatch("cocycle coefficients must be Hom(A, B)")
    cocycle.check(tol)

    ra, rb = first.rank, second.rank
    backend = first.backend
    zero_ba = Matrix.zeros(ra, rb, backend)
    images = []
    for idx, value in enumerate(cocycle.values):
        amat, bmat = first.images[idx], second.images[idx]
        corner = hom_block(value, ra, rb) @ amat
        images.append(vstack([hstack([bmat, corner]), hstack([zero_ba, amat])]))
    extension = validate(Representation(cocycle.group, ra + rb, tuple(images)), tol)

    ident_a = Matrix.identity(ra, backend)
    ident_b = Matrix.identity(rb, backend)
    inclusion = vstack([ident_b, Matrix.zeros(ra, rb, backend)])
    projection = hstack([Matrix.zeros(ra, rb, backend), ident_a])
    logger.debug(f"built rank {ra + rb} extension over {cocycle.group}")
    return ExtensionData(extension, inclusion, projection, cocycle)


def extract_class(extension: Representation, inclusion: Matrix, projection: Matrix, tol: Optional[Tolerance] = None) -> ExtClass:
    """Class in Ext^1(A, B) of E given B -> E -> A.

    B and A are recovered from the maps; the splitting is the
    canonical section s of the projection (particular solution with
    free coordinates zero). In the basis [inclusion | s] every image
    is block upper triangular and the corner c gives z = c A^-1.

    Raises NotExact with a residual when the maps do not form a
    short exact sequence of representations.
    """
    size = extension.rank
    rb, ra = inclusion.cols, projection.rows
    if inclusion.rows != size or projection.cols != size or ra + rb != size:
        raise NotExact(
            f"maps of shape {inclusion.shape} and {projection.shape} do not fit rank {size}")
    composite = projection @ inclusion
    if not composite.is_zero(tol):
        raise NotExact("projection o inclusion is not zero", residual=composite)
    if rank(inclusion, tol) != rb or rank(projection, tol) != ra:
        raise NotExact("inclusion must be injective and projection surjective")

    section = solve(projection, Matrix.identity(ra, extension.backend), tol)
    basis = hstack([inclusion, section])
    binv = inverse(basis, tol)
    if binv is None:
        raise NotExact("inclusion and section do not span")

    bimages, aimages, corners = [], [], []
    for img in extension.images:
        conj = binv @ img @ basis
        lower = conj.submatrix(rb, size, 0, rb)
        if not lower.is_zero(tol):
            raise NotExact("image of the inclusion is not invariant", residual=lower)
        amat = conj.submatrix(rb, size, rb, size)
        equiv = projection @ img - amat @ projection
        if not equiv.is_zero(tol):
            raise NotExact("projection is not equivariant", residual=equiv)
        bimages.append(conj.submatrix(0, rb, 0, rb))
        aimages.append(amat)
        corners.append(conj.submatrix(0, rb, rb, size))

    sub = Representation(extension.group, rb, tuple(bimages))
    quot = Representation(extension.group, ra, tuple(aimages))
    coefficients = hom_rep(quot, sub, tol)
    values = tuple(
        hom_vector(corner @ quot.inverse_image(idx, tol))
        for idx, corner in enumerate(corners)
    )
    return class_of(Cocycle(extension.group, coefficients, values), tol)
