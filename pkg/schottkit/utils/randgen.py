#!/usr/bin/env python

"""
Seeded generators of random Q(i) test objects.

Every function takes a numpy Generator so that suites are
reproducible:

>>> rng = np.random.default_rng(123)
>>> rho = random_unipotent_rep(rng, free_abelian(2), 3)
"""

from typing import List, Optional
from fractions import Fraction

import numpy as np

from schottkit.algebra.numerics import APPROX, ApproxComplex, GaussianRational
from schottkit.algebra.linalg import Matrix, inverse
from schottkit.groups.presentations import GroupKind, GroupSpec
from schottkit.reps.representation import Representation


# numerators and denominators are drawn from [-7, 7] and [1, 7]
RATIONAL_BOUND = 7


def random_rational(rng: np.random.Generator, bound: int = RATIONAL_BOUND) -> Fraction:
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))


def random_scalar(rng: np.random.Generator, bound: int = RATIONAL_BOUND, real: bool = False) -> GaussianRational:
    """A random p/q + r/s*i, or a rational if real."""
    imag = 0 if real else random_rational(rng, bound)
    return GaussianRational(random_rational(rng, bound), imag)


def random_matrix(rng: np.random.Generator, rows: int, cols: int, bound: int = RATIONAL_BOUND) -> Matrix:
    return Matrix(rows, cols, [random_scalar(rng, bound) for _ in range(rows * cols)])


def random_invertible(rng: np.random.Generator, size: int, bound: int = RATIONAL_BOUND) -> Matrix:
    """Rejection sample until the determinant is nonzero."""
    while True:
        mat = random_matrix(rng, size, size, bound)
        if inverse(mat) is not None:
            return mat


def random_strict_upper(rng: np.random.Generator, size: int, bound: int = RATIONAL_BOUND, density: float = 0.7) -> Matrix:
    """Strictly upper triangular, each entry nonzero with prob. density."""
    zero = GaussianRational(0)
    entries = [
        random_scalar(rng, bound) if j > i and rng.random() < density else zero
        for i in range(size) for j in range(size)
    ]
    return Matrix(size, size, entries)


def random_symmetric_period(rng: np.random.Generator, g: int, bound: int = RATIONAL_BOUND) -> Matrix:
    """A symmetric invertible g x g matrix over Q(i)."""
    while True:
        mat = random_matrix(rng, g, g, bound)
        sym = Matrix.from_rows([
            [mat[min(i, j), max(i, j)] for j in range(g)] for i in range(g)
        ])
        if inverse(sym) is not None:
            return sym


def _poly_in(rng: np.random.Generator, nmat: Matrix, bound: int) -> Matrix:
    """I + c1 N + c2 N^2 + ... with random c_k (unipotent when N is nilpotent)."""
    total = Matrix.identity(nmat.rows)
    power = nmat
    for _ in range(1, nmat.rows):
        total = total + power * random_scalar(rng, bound)
        power = power @ nmat
    return total


def random_unipotent_images(
    rng: np.random.Generator,
    count: int,
    rank: int,
    commuting: bool,
    bound: int = RATIONAL_BOUND,
    conjugate: bool = True,
) -> List[Matrix]:
    """count unipotent rank x rank matrices with a common flag.

    With commuting=True they are polynomials in one nilpotent matrix.
    The common flag is hidden by conjugating with a random P.
    """
    if commuting:
        nmat = random_strict_upper(rng, rank, bound)
        mats = [_poly_in(rng, nmat, bound) for _ in range(count)]
    else:
        mats = [Matrix.identity(rank) + random_strict_upper(rng, rank, bound) for _ in range(count)]
    if conjugate and rank > 1:
        pmat = random_invertible(rng, rank, bound=3)
        pinv = inverse(pmat)
        mats = [pinv @ m @ pmat for m in mats]
    return mats


def random_unipotent_rep(
    rng: np.random.Generator,
    group: GroupSpec,
    rank: int,
    bound: int = RATIONAL_BOUND,
    conjugate: bool = True,
) -> Representation:
    """A valid unipotent rep of group (commuting unless group is free)."""
    commuting = group.kind is not GroupKind.FREE
    images = random_unipotent_images(rng, group.ngens, rank, commuting, bound, conjugate)
    return Representation(group, rank, tuple(images))


def random_rep(rng: np.random.Generator, group: GroupSpec, rank: int, bound: int = RATIONAL_BOUND) -> Representation:
    """A random rep of a free group, or a commuting one built from a
    common invertible matrix for the abelian kinds."""
    if group.kind is GroupKind.FREE:
        images = [random_invertible(rng, rank, bound) for _ in range(group.ngens)]
    else:
        base = random_invertible(rng, rank, bound)
        images = []
        for _ in range(group.ngens):
            power = int(rng.integers(-1, 3))
            mat = Matrix.identity(rank)
            for _ in range(abs(power)):
                mat = mat @ base
            images.append(inverse(mat) if power < 0 else mat)
    return Representation(group, rank, tuple(images))


def random_character(
    rng: np.random.Generator,
    group: GroupSpec,
    low: float = 1e-2,
    high: float = 1e2,
) -> Representation:
    """A rank-1 approximate rep with |chi| log-uniform in [low, high]."""
    values = []
    for _ in range(group.ngens):
        modulus = float(np.exp(rng.uniform(np.log(low), np.log(high))))
        angle = float(rng.uniform(-np.pi, np.pi))
        values.append(ApproxComplex.from_complex(modulus * np.exp(1j * angle)))
    images = tuple(Matrix(1, 1, [v], APPROX) for v in values)
    return Representation(group, 1, images)


def random_scalar_kernel_rep(
    rng: np.random.Generator,
    group: GroupSpec,
    rank: int,
    kernel: List[int],
    bound: int = RATIONAL_BOUND,
) -> Representation:
    """Commuting rep whose generators listed in kernel map to scalars.

    The remaining generators are unipotent polynomials in one nilpotent
    matrix, so every image commutes with every other.
    """
    nmat = random_strict_upper(rng, rank, bound)
    images = []
    for index in range(group.ngens):
        if index in kernel:
            value = random_scalar(rng, bound)
            while not value:
                value = random_scalar(rng, bound)
            images.append(Matrix.scalar(value, rank))
        else:
            images.append(_poly_in(rng, nmat, bound))
    return Representation(group, rank, tuple(images))


def random_vector(rng: np.random.Generator, size: int, bound: Optional[int] = None) -> Matrix:
    return Matrix.column([random_scalar(rng, bound or RATIONAL_BOUND) for _ in range(size)])
