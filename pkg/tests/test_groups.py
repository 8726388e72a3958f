#!/usr/bin/env python

import pytest
from sympy.combinatorics.free_groups import free_group as sympy_free_group

from schottkit.algebra.linalg import Matrix
from schottkit.groups.presentations import (
    AbelianWord, FreeWord, GroupKind, GroupSpec, Morphism, alpha_surface,
    alpha_torus, apply, compose_words, format_word, free_abelian,
    free_group, generator_word, identity_word, invert_word,
    kernel_generators, lattice, parse_group, parse_word, relator,
    surface_group,
)
from schottkit.utils.utils import (
    GeneratorOutOfRange, NotInvertible, ParseError, PreconditionError,
    ShapeMismatch, SurfaceRelationViolated,
)


def _random_free_word(rng, ngens, length):
    return FreeWord(tuple(
        (int(rng.integers(0, ngens)), int(rng.choice([-2, -1, 1, 2]))) for _ in range(length)
    ))


def _random_abelian_word(rng, ngens):
    return AbelianWord(tuple(int(i) for i in rng.integers(-3, 4, size=ngens)))


def test_free_reduction():
    word = FreeWord(((0, 1), (1, 1), (1, -1), (0, 1)))
    assert word.letters == ((0, 2),)
    assert FreeWord(((0, 1), (0, -1))) == identity_word(free_group(2))


def test_free_words_follow_sympy(rng):
    fgroup, x0, x1, x2 = sympy_free_group("x0, x1, x2")
    word = FreeWord(((0, 2), (1, -1), (2, 1)))
    assert word.element(3) == x0 ** 2 * x1 ** -1 * x2
    assert FreeWord.from_element(x1 * x0 * x0 ** -1 * x2 ** 3) == FreeWord(((1, 1), (2, 3)))
    for _ in range(50):
        first = _random_free_word(rng, 3, 6)
        second = _random_free_word(rng, 3, 6)
        assert compose_words(first, second).element(3) == first.element(3) * second.element(3)
        assert invert_word(first).element(3) == first.element(3) ** -1
    with pytest.raises(GeneratorOutOfRange):
        FreeWord(((-1, 1),))


def test_generator_names():
    assert surface_group(2).generator_names == ["a1", "a2", "b1", "b2"]
    assert free_group(2).generator_names == ["B1", "B2"]
    assert alpha_torus(1).source.generator_names == ["l1", "l2"]


def test_word_text_round_trip():
    group = free_group(2)
    word = parse_word("B1^2*B2^-1", group)
    assert word == FreeWord(((0, 2), (1, -1)))
    assert format_word(word, group) == "B1^2*B2^-1"
    assert parse_word("1", group) == identity_word(group)
    assert format_word(identity_word(group), group) == "1"
    zword = parse_word("[2,-1]", free_abelian(2))
    assert zword == AbelianWord((2, -1))
    assert format_word(zword, free_abelian(2)) == "[2,-1]"


def test_word_parse_errors():
    with pytest.raises(ParseError):
        parse_word("B1^", free_group(2))
    with pytest.raises(GeneratorOutOfRange):
        parse_word("B3", free_group(2))
    with pytest.raises(ParseError):
        parse_word("2,1", free_abelian(2))


def test_generator_out_of_range():
    with pytest.raises(GeneratorOutOfRange):
        generator_word(free_group(2), 2)


def test_inverse_word():
    word = FreeWord(((0, 1), (1, 2)))
    assert compose_words(word, invert_word(word)) == FreeWord()


def test_lattice_period_checks():
    with pytest.raises(PreconditionError):
        lattice(Matrix.from_rows([[1, 2], [3, 1]]))
    with pytest.raises(NotInvertible):
        lattice(Matrix.from_rows([[1, 1], [1, 1]]))
    with pytest.raises(ShapeMismatch):
        GroupSpec(GroupKind.LATTICE, 2, Matrix.from_rows([["i"]]))
    with pytest.raises(PreconditionError):
        GroupSpec(GroupKind.FREE, 1, Matrix.from_rows([["i"]]))
    with pytest.raises(PreconditionError):
        free_group(0)


def test_lattice_coordinates():
    group = lattice(Matrix.from_rows([["i"]]))
    assert group.ngens == 2
    assert [list(row) for row in group.coords] == [[Matrix.from_rows([["i"]])[0, 0]], [1]]


def test_alpha_morphisms():
    tor = alpha_torus(2)
    assert kernel_generators(tor) == [2, 3]
    assert apply(tor, AbelianWord((1, 2, 5, -1))) == AbelianWord((1, 2))
    surf = alpha_surface(2)
    assert kernel_generators(surf) == [0, 1]
    assert apply(surf, relator(surf.source)) == FreeWord()


def test_surface_relation_checked():
    source = surface_group(1)
    target = free_group(2)
    images = (generator_word(target, 0), generator_word(target, 1))
    with pytest.raises(SurfaceRelationViolated):
        Morphism(source, target, images)


def test_abelian_source_needs_commuting_images():
    source = free_abelian(2)
    target = free_group(2)
    images = (generator_word(target, 0), generator_word(target, 1))
    with pytest.raises(SurfaceRelationViolated):
        Morphism(source, target, images)


@pytest.mark.parametrize("morphism", [alpha_torus(2), alpha_surface(2)])
def test_apply_is_a_homomorphism(rng, morphism):
    ngens = morphism.source.ngens
    for _ in range(500):
        if morphism.source.is_abelian:
            first, second = _random_abelian_word(rng, ngens), _random_abelian_word(rng, ngens)
        else:
            first = _random_free_word(rng, ngens, int(rng.integers(0, 6)))
            second = _random_free_word(rng, ngens, int(rng.integers(0, 6)))
        assert apply(morphism, compose_words(first, second)) == compose_words(
            apply(morphism, first), apply(morphism, second))


def test_parse_group():
    assert parse_group("F:3") == free_group(3)
    assert parse_group("Z:2") == free_abelian(2)
    assert parse_group("Surface:2") == surface_group(2)
    period = Matrix.from_rows([["i"]])
    assert parse_group("Lattice:z.json", lambda path: period) == lattice(period)
    for bad in ("F3", "Q:2", "F:x", "Lattice:z.json"):
        with pytest.raises(ParseError):
            parse_group(bad)


def test_same_group_ignores_unbound_period():
    bound = lattice(Matrix.from_rows([["i"]]))
    assert alpha_torus(1).source.same_group(bound)
    assert not bound.same_group(lattice(Matrix.from_rows([["2*i"]])))


def test_alpha_examples():
    assert alpha_torus(1).images == (AbelianWord((1,)), AbelianWord((0,)))
    assert alpha_torus(2).images[2] == AbelianWord((0, 0))
    assert apply(alpha_torus(1), AbelianWord((2, 3))) == AbelianWord((2,))
    assert apply(alpha_torus(2), AbelianWord((1, 0, 0, 1))) == AbelianWord((1, 0))
    surf = alpha_surface(1)
    assert surf.images == (FreeWord(), FreeWord(((0, 1),)))
    assert apply(surf, FreeWord(((1, 1), (0, 1), (1, 1)))) == FreeWord(((0, 2),))


def test_word_examples():
    assert invert_word(FreeWord(((0, 1), (1, 1)))) == FreeWord(((1, -1), (0, -1)))
    assert compose_words(AbelianWord((1, 0)), AbelianWord((0, 1))) == AbelianWord((1, 1))
