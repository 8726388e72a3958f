#!/usr/bin/env python

"""
Univariate polynomials over Q(i) for Jordan-Chevalley, on sympy's
exact Gaussian rational domain QQ_I.

Scalars cross into sympy as Rational + I*Rational and come back as
GaussianRational, so the rest of schottkit never sees sympy objects
except the Poly values returned here.
"""

from typing import Sequence
from fractions import Fraction

from sympy import I, Poly, Rational, Symbol, sympify
from sympy import Matrix as SymMatrix
from sympy.polys.domains import QQ_I

from schottkit.algebra.numerics import EXACT, GaussianRational
from schottkit.algebra.linalg import Matrix
from schottkit.utils.utils import BackendMismatch, ShapeMismatch


X = Symbol("x")


def to_sympy(value):
    """Rational + I*Rational for any exact scalar."""
    value = GaussianRational.coerce(value)
    return (
        Rational(value.re.numerator, value.re.denominator)
        + I * Rational(value.im.numerator, value.im.denominator)
    )


def from_sympy(value) -> GaussianRational:
    rpart, ipart = sympify(value).as_real_imag()
    return GaussianRational(Fraction(str(rpart)), Fraction(str(ipart)))


def make_poly(coeffs: Sequence) -> Poly:
    """Poly in x over QQ_I from coefficients c0, c1, ..., lowest first."""
    coeffs = [to_sympy(c) for c in coeffs] or [0]
    return Poly(list(reversed(coeffs)), X, domain=QQ_I)


def coefficients(poly: Poly):
    """GaussianRational coefficients, lowest degree first."""
    return [from_sympy(c) for c in reversed(poly.all_coeffs())]


def characteristic_polynomial(mat: Matrix) -> Poly:
    """det(x*I - M) over QQ_I."""
    if not mat.is_square:
        raise ShapeMismatch("characteristic polynomial of a non-square matrix")
    if mat.backend is not EXACT:
        raise BackendMismatch("characteristic polynomial needs exact entries")
    sym = SymMatrix(mat.rows, mat.cols, [to_sympy(i) for i in mat.entries])
    return Poly(sym.charpoly(X).as_expr(), X, domain=QQ_I)


def squarefree_part(poly: Poly) -> Poly:
    """Monic radical of poly (Q(i) is perfect)."""
    return poly.sqf_part().monic()


def evaluate_matrix(poly: Poly, mat: Matrix) -> Matrix:
    """Horner evaluation p(M)."""
    if not mat.is_square:
        raise ShapeMismatch("polynomial of a non-square matrix")
    acc = Matrix.zeros(mat.rows, mat.cols, mat.backend)
    ident = Matrix.identity(mat.rows, mat.backend)
    for coef in poly.all_coeffs():
        acc = acc @ mat + ident * from_sympy(coef)
    return acc
