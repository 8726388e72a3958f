#!/usr/bin/env python

"""
Multiplicative Jordan-Chevalley decomposition M = s u without
factoring the characteristic polynomial.
"""

from dataclasses import dataclass

from loguru import logger
from sympy import Poly

from schottkit.algebra.numerics import EXACT
from schottkit.algebra.linalg import Matrix, inverse, is_nilpotent
from schottkit.algebra.polynomial import (
    characteristic_polynomial, evaluate_matrix, squarefree_part,
)
from schottkit.utils.utils import BackendMismatch, InvariantBreach, NotInvertible


@dataclass(frozen=True)
class JordanPair:
    """Semisimple part s and unipotent part u of an invertible matrix.

    Attributes
    ----------
    s: Matrix
        Semisimple, annihilated by the squarefree part of the
        characteristic polynomial.
    u: Matrix
        Unipotent and commuting with s.
    radical: sympy.Poly
        f_sep, the squarefree part of the characteristic polynomial,
        over QQ_I.
    """
    s: Matrix
    u: Matrix
    radical: Poly

    def verify(self, mat: Matrix) -> bool:
        """s u = u s = M, u - I nilpotent and f_sep(s) = 0."""
        ident = Matrix.identity(mat.rows, mat.backend)
        return (
            self.s @ self.u == mat
            and self.u @ self.s == mat
            and is_nilpotent(self.u - ident)
            and evaluate_matrix(self.radical, self.s).is_zero()
        )


def jordan_decompose(mat: Matrix) -> JordanPair:
    """Chevalley's Newton iteration on the squarefree part.

    s_0 = M and s_{k+1} = s_k - f_sep(s_k) f_sep'(s_k)^-1. Each step
    doubles the power of the nilpotent ideal containing f_sep(s_k), so
    ceil(log2 r) + 1 steps always suffice. Then u = s^-1 M.

    Example
    -------
    >>> pair = jordan_decompose(Matrix.from_rows([[2, 1], [0, 2]]))
    >>> pair.s, pair.u
    (2*I, [[1, 1/2], [0, 1]])
    """
    if mat.backend is not EXACT:
        raise BackendMismatch("jordan_decompose needs exact entries")
    minv = inverse(mat)
    if minv is None:
        raise NotInvertible("jordan_decompose needs an invertible matrix")

    radical = squarefree_part(characteristic_polynomial(mat))
    slope = radical.diff()
    steps = (mat.rows - 1).bit_length() + 1 if mat.rows else 0

    semi = mat
    for step in range(steps):
        residual = evaluate_matrix(radical, semi)
        if residual.is_zero():
            break
        dinv = inverse(evaluate_matrix(slope, semi))
        if dinv is None:
            raise InvariantBreach("f_sep'(s) is singular during Newton iteration")
        semi = semi - residual @ dinv
        logger.debug(f"jordan newton step {step + 1}")
    if not evaluate_matrix(radical, semi).is_zero():
        raise InvariantBreach(f"Newton iteration did not converge in {steps} steps")

    sinv = inverse(semi)
    if sinv is None:
        raise InvariantBreach("semisimple part is singular")
    pair = JordanPair(semi, sinv @ mat, radical)
    if not pair.verify(mat):
        raise InvariantBreach("Jordan-Chevalley post-conditions failed")
    return pair
