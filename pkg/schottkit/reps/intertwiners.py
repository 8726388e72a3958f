#!/usr/bin/env python

"""
Intertwiner spaces and the isomorphism decision.

Hom(rho1, rho2) is the kernel of the stacked Sylvester system
(I kron A^T - B kron I) vec(T) = 0 over all generator pairs (A, B),
with T vectorized row-major.
"""

from typing import List, Optional, Sequence
import itertools

from loguru import logger
from sympy import symbols
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from schottkit.algebra.numerics import EXACT, Tolerance
from schottkit.algebra.linalg import Matrix, inverse, kernel_basis, kron, vstack
from schottkit.algebra.polynomial import to_sympy
from schottkit.reps.representation import Representation, _common_group
from schottkit.utils.utils import InvariantBreach


ISO_GRID_LIMIT = 2 ** 16


def _sylvester_system(first: Representation, second: Representation) -> Matrix:
    r1, r2 = first.rank, second.rank
    backend = first.backend
    eye1 = Matrix.identity(r1, backend)
    eye2 = Matrix.identity(r2, backend)
    return vstack([
        kron(eye2, amat.T) - kron(bmat, eye1)
        for amat, bmat in zip(first.images, second.images)
    ])


def intertwiners(first: Representation, second: Representation, tol: Optional[Tolerance] = None) -> List[Matrix]:
    """Canonical basis of {T : T rho1(gen) = rho2(gen) T for all gen}.

    Each T is rank2 x rank1. The basis is the echelon kernel basis of
    the Sylvester system, so equal inputs give equal outputs.

    Example
    -------
    >>> jblock = Matrix.from_rows([[1, 1], [0, 1]])
    >>> rep = Representation(free_group(1), 2, (jblock,))
    >>> intertwiners(rep, rep)
    [I, [[0, 1], [0, 0]]]
    """
    _common_group(first, second)
    r1, r2 = first.rank, second.rank
    if not r1 or not r2:
        return []
    basis = kernel_basis(_sylvester_system(first, second), tol)
    return [Matrix(r2, r1, vec.flat(), vec.backend) for vec in basis]


def _combine(basis: List[Matrix], coeffs) -> Matrix:
    total = basis[0] * int(coeffs[0])
    for mat, coef in zip(basis[1:], coeffs[1:]):
        if coef:
            total = total + mat * int(coef)
    return total


def _nonvanishing_point(basis: Sequence[Matrix]) -> Optional[tuple]:
    """Grid point of {0..r}^d where det(sum_k t_k T_k) is nonzero, or None.

    The determinant is expanded over QQ_I[t_0..t_(d-1)] and fixed one
    variable at a time at the smallest value that leaves it nonzero.
    """
    size = basis[0].rows
    gens = symbols(f"t0:{len(basis)}")
    ring = QQ_I.poly_ring(*gens)
    rows = [
        [
            ring.from_sympy(sum(
                (gen * to_sympy(mat[i, j]) for gen, mat in zip(gens, basis)), 0))
            for j in range(size)
        ]
        for i in range(size)
    ]
    det = DomainMatrix(rows, (size, size), ring).det()
    if not det:
        return None
    point = []
    for gen in ring.gens:
        for value in range(size + 1):
            reduced = det.subs(gen, value)
            if reduced:
                break
        det = reduced
        point.append(value)
    return tuple(point)


def is_isomorphic(first: Representation, second: Representation, tol: Optional[Tolerance] = None) -> Optional[Matrix]:
    """Return an invertible intertwiner rho1 -> rho2, or None.

    det(sum_k t_k T_k) is a polynomial of degree at most r in every
    t_k, so if it is not identically zero it is nonzero somewhere on
    the grid {0..r}^d. Exact representations with more than
    ISO_GRID_LIMIT grid points expand the determinant symbolically;
    everything else walks the grid in order. Both are exhaustive.
    """
    _common_group(first, second)
    if first.rank != second.rank:
        return None
    size = first.rank
    if first.images == second.images:
        return Matrix.identity(size, first.backend)

    basis = intertwiners(first, second, tol)
    if not basis:
        return None
    # an isomorphism makes all four Hom/End spaces the same dimension
    dims = {
        len(basis),
        len(intertwiners(second, first, tol)),
        len(intertwiners(first, first, tol)),
        len(intertwiners(second, second, tol)),
    }
    if len(dims) > 1:
        logger.debug(f"iso fail fast, Hom/End dimensions {sorted(dims)}")
        return None

    ndim = len(basis)
    if first.backend is EXACT and (size + 1) ** ndim > ISO_GRID_LIMIT:
        logger.debug(f"iso determinant expansion in {ndim} variables")
        point = _nonvanishing_point(basis)
        if point is None:
            return None
        candidate = _combine(basis, point)
        if inverse(candidate, tol) is None:
            raise InvariantBreach(f"isomorphism witness at {point} is singular")
        return candidate

    logger.debug(f"iso grid search over {(size + 1) ** ndim} points")
    for coeffs in itertools.product(range(size + 1), repeat=ndim):
        if not any(coeffs):
            continue
        candidate = _combine(basis, coeffs)
        if inverse(candidate, tol) is not None:
            return candidate
    return None
