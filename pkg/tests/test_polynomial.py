#!/usr/bin/env python

import pytest
from sympy import I, Poly, Rational
from sympy.polys.domains import QQ_I

from schottkit.algebra.numerics import APPROX, GaussianRational
from schottkit.algebra.linalg import Matrix
from schottkit.algebra.polynomial import (
    X, characteristic_polynomial, coefficients, evaluate_matrix,
    from_sympy, make_poly, squarefree_part, to_sympy,
)
from schottkit.utils.utils import BackendMismatch


def test_scalar_conversion():
    value = GaussianRational.parse("1/2-3*i")
    assert to_sympy(value) == Rational(1, 2) - 3 * I
    assert from_sympy(to_sympy(value)) == value
    assert from_sympy(7) == GaussianRational(7)


def test_make_poly_and_coefficients():
    poly = make_poly([-1, 0, 1])
    assert poly == Poly(X ** 2 - 1, X, domain=QQ_I)
    assert coefficients(poly) == [GaussianRational(-1), GaussianRational(0), GaussianRational(1)]


def test_squarefree_part():
    # (x - 2)^2 (x + i)
    poly = Poly((X - 2) ** 2 * (X + I), X, domain=QQ_I)
    assert squarefree_part(poly) == Poly((X - 2) * (X + I), X, domain=QQ_I)
    assert squarefree_part(make_poly([0, 0, 3])) == make_poly([0, 1])


def test_characteristic_polynomial():
    mat = Matrix.from_rows([[2, 1], [0, 3]])
    assert characteristic_polynomial(mat) == make_poly([6, -5, 1])
    assert evaluate_matrix(characteristic_polynomial(mat), mat).is_zero()

    rot = Matrix.from_rows([["i", 1], [0, "i"]])
    assert characteristic_polynomial(rot) == Poly((X - I) ** 2, X, domain=QQ_I)


def test_characteristic_polynomial_needs_exact():
    with pytest.raises(BackendMismatch):
        characteristic_polynomial(Matrix.identity(2, APPROX))


def test_evaluate_matrix():
    mat = Matrix.from_rows([[0, -1], [1, 0]])
    assert evaluate_matrix(make_poly([1, 0, 1]), mat).is_zero()
    assert evaluate_matrix(make_poly([5]), mat) == Matrix.scalar(5, 2)
