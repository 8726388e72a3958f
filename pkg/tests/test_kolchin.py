#!/usr/bin/env python

import pytest

from schottkit.algebra.linalg import Matrix
from schottkit.groups.presentations import (
    alpha_torus, free_abelian, free_group, surface_group,
)
from schottkit.reps.representation import Representation, trivial
from schottkit.reps.kolchin import (
    ad_unipotent_check, fixed_space, is_unipotent, peel, unipotence_flag,
)
from schottkit.utils.utils import NotUnipotent, PreconditionError
from schottkit.utils.randgen import random_unipotent_rep


def test_trivial_flag():
    cert = unipotence_flag(trivial(free_group(2), 3))
    assert cert.triangularizer == Matrix.identity(3)
    assert cert.flag == (1, 2, 3)
    assert cert.stages == (3,)


def test_lattice_jordan_flag(jblock):
    rep = Representation(alpha_torus(1).source, 2, (jblock, jblock))
    cert = unipotence_flag(rep)
    assert cert.triangularizer == Matrix.identity(2)
    assert cert.verify(rep)


def test_generatorwise_unipotent_is_not_enough():
    rep = Representation(free_group(2), 2, (
        Matrix.from_rows([[1, 2], [0, 1]]),
        Matrix.from_rows([[1, 0], [2, 1]]),
    ))
    witness = unipotence_flag(rep)
    assert not witness
    assert (witness.stage, witness.level) == (1, 0)
    assert not is_unipotent(rep)
    with pytest.raises(NotUnipotent):
        peel(rep)


def test_random_flags(rng):
    for group in (free_group(2), free_abelian(3), surface_group(1)):
        for rank in range(1, 5):
            rep = random_unipotent_rep(rng, group, rank)
            cert = unipotence_flag(rep)
            assert cert and cert.verify(rep)
            assert ad_unipotent_check(rep)


def test_non_unipotent_scalar():
    rep = Representation(free_group(1), 2, (Matrix.scalar(2, 2),))
    assert not unipotence_flag(rep)
    # Ad of a scalar is trivial
    assert ad_unipotent_check(rep)


def test_fixed_space():
    images = [Matrix.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]])]
    assert fixed_space(images, 3) == [Matrix.column([1, 0, 0]), Matrix.column([0, 0, 1])]


def test_peel_rank_one():
    result = peel(trivial(free_group(1), 1))
    assert result.quotient.rank == 0


def test_peel_jordan(jblock):
    rep = Representation(free_group(1), 2, (jblock,))
    result = peel(rep)
    assert result.inclusion == Matrix.column([1, 0])
    assert result.quotient == trivial(rep.group, 1)
    assert result.check_exact(rep)


def test_peel_rank_three():
    mat = Matrix.from_rows([[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    rep = Representation(free_group(1), 3, (mat,))
    result = peel(rep)
    assert result.quotient.images[0] == Matrix.from_rows([[1, 1], [0, 1]])


def test_peel_random(rng):
    for _ in range(10):
        rep = random_unipotent_rep(rng, free_abelian(2), 3)
        result = peel(rep)
        assert result.check_exact(rep)
        assert is_unipotent(result.quotient)


def test_peel_rank_zero():
    rep = Representation(free_group(1), 0, (Matrix.zeros(0, 0),))
    with pytest.raises(PreconditionError):
        peel(rep)
