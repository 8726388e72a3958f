#!/usr/bin/env python

import pytest

from schottkit.algebra.linalg import Matrix
from schottkit.groups.presentations import GroupKind, free_abelian, free_group
from schottkit.reps.representation import (
    Representation, direct_sum, hom_rep, trivial, validate,
)
from schottkit.reps.intertwiners import is_isomorphic
from schottkit.cohomology.cocycles import Cocycle, class_eq, class_of, h1, hom_vector
from schottkit.cohomology.extensions import build_extension, extract_class
from schottkit.utils.utils import CoefficientMismatch, InvalidCocycle, NotExact
from schottkit.utils.randgen import random_rep, random_unipotent_rep, random_vector


def _col(*values):
    return Matrix.column(list(values))


def _random_cocycle(rng, first, second):
    """A random combination of the Z^1 basis."""
    coeffs = hom_rep(first, second)
    result = h1(first.group, coeffs)
    vec = Matrix.zeros(coeffs.rank * first.group.ngens, 1)
    for basis in result.cocycles:
        vec = vec + basis * random_vector(rng, 1).flat()[0]
    return Cocycle.from_flat(first.group, coeffs, vec)


def test_extension_block_shape():
    group = free_group(1)
    one = trivial(group, 1)
    data = build_extension(one, one, Cocycle(group, hom_rep(one, one), (_col(1),)))
    assert data.extension.images == (Matrix.from_rows([[1, 1], [0, 1]]),)
    assert data.inclusion == _col(1, 0)
    assert data.projection == Matrix.from_rows([[0, 1]])


def test_corner_is_cocycle_times_quotient_image():
    group = free_group(2)
    quot = Representation(group, 2, (
        Matrix.from_rows([[1, 1], [0, 1]]), Matrix.from_rows([[2, 0], [0, 1]])))
    sub = trivial(group, 1)
    values = (hom_vector(Matrix.from_rows([[1, 0]])), hom_vector(Matrix.from_rows([[0, 3]])))
    cocycle = Cocycle(group, hom_rep(quot, sub), values)
    data = build_extension(quot, sub, cocycle)
    first, second = data.extension.images
    # corner of E(gen) is z(gen) A(gen)
    assert first.submatrix(0, 1, 1, 3) == Matrix.from_rows([[1, 1]])
    assert second.submatrix(0, 1, 1, 3) == Matrix.from_rows([[0, 3]])
    assert class_eq(extract_class(data.extension, data.inclusion, data.projection), class_of(cocycle))


def test_zero_cocycle_splits(rng):
    group = free_group(2)
    first, second = random_rep(rng, group, 2), random_rep(rng, group, 1)
    zero = Cocycle.zero(group, hom_rep(first, second))
    data = build_extension(first, second, zero)
    assert data.extension.images == direct_sum(second, first).images


def test_abelian_extension_commutes():
    group = free_abelian(2)
    one = trivial(group, 1)
    data = build_extension(one, one, Cocycle(group, hom_rep(one, one), (_col(1), _col("i"))))
    assert data.extension.images == (
        Matrix.from_rows([[1, 1], [0, 1]]),
        Matrix.from_rows([[1, "i"], [0, 1]]),
    )
    validate(data.extension)


def test_build_rejects_non_cocycle(jblock):
    group = free_abelian(2)
    first = trivial(group, 1)
    second = Representation(group, 2, (jblock, Matrix.identity(2)))
    bad = Cocycle(group, hom_rep(first, second), (_col(0, 0), _col(0, 1)))
    with pytest.raises(InvalidCocycle) as err:
        build_extension(first, second, bad)
    assert err.value.residual is not None


def test_build_rejects_wrong_coefficients():
    group = free_group(1)
    one = trivial(group, 1)
    two = Representation(group, 1, (Matrix.from_rows([[2]]),))
    with pytest.raises(CoefficientMismatch):
        build_extension(one, one, Cocycle(group, hom_rep(one, two), (_col(1),)))


def test_extract_reads_corner():
    group = free_group(1)
    ext = Representation(group, 2, (Matrix.from_rows([[1, 5], [0, 1]]),))
    found = extract_class(ext, _col(1, 0), Matrix.from_rows([[0, 1]]))
    one = trivial(group, 1)
    coeffs = hom_rep(one, one)
    assert class_eq(found, Cocycle(group, coeffs, (_col(5),)))
    assert not class_eq(found, Cocycle.zero(group, coeffs))


def test_extract_split_is_zero(rng):
    group = free_group(2)
    first, second = random_rep(rng, group, 1), random_rep(rng, group, 2)
    split = direct_sum(second, first)
    incl = Matrix.from_rows([[1, 0], [0, 1], [0, 0]])
    proj = Matrix.from_rows([[0, 0, 1]])
    assert extract_class(split, incl, proj).is_zero()


def test_extract_not_exact():
    group = free_group(1)
    ext = Representation(group, 2, (Matrix.from_rows([[1, 5], [0, 1]]),))
    with pytest.raises(NotExact) as err:
        extract_class(ext, _col(1, 0), Matrix.from_rows([[1, 1]]))
    assert err.value.residual is not None
    # inclusion image is not invariant
    with pytest.raises(NotExact):
        extract_class(ext, _col(0, 1), Matrix.from_rows([[1, 0]]))


def test_round_trip_random(rng):
    for trial in range(200):
        g = 1 + trial % 3
        group = free_group(g) if trial % 2 else free_abelian(g)
        ra, rb = 1 + trial % 2, 1 + (trial // 2) % 2
        if group.kind is GroupKind.FREE:
            first, second = random_rep(rng, group, ra, bound=3), random_rep(rng, group, rb, bound=3)
        else:
            first = random_unipotent_rep(rng, group, ra, bound=3)
            second = random_unipotent_rep(rng, group, rb, bound=3)
        cocycle = _random_cocycle(rng, first, second)
        data = build_extension(first, second, cocycle)
        found = extract_class(data.extension, data.inclusion, data.projection)
        assert class_eq(found, cocycle)


def test_nonzero_class_is_not_split():
    group = free_group(1)
    one = trivial(group, 1)
    data = build_extension(one, one, Cocycle(group, hom_rep(one, one), (_col(1),)))
    assert is_isomorphic(data.extension, direct_sum(one, one)) is None
