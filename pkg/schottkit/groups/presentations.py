#!/usr/bin/env python

"""
Presentations of the four groups used by schottkit, normal-form
words, and the two canonical surjections alpha.

FreeGroup(g)      F_g on B_1..B_g, words are reduced letter runs.
FreeAbelian(g)    Z^g on B_1..B_g, words are exponent vectors.
Lattice(Z)        the period lattice of a complex torus, Z^(2g) on
                  lambda_1..lambda_2g with coordinates from Pi = (Z, I).
SurfaceGroup(g)   pi_1 of a genus g surface on a_1..a_g, b_1..b_g
                  with the single relation prod [a_i, b_i] = 1. Words
                  are free words; equality in the group is not decided.
"""

from typing import Callable, Iterable, List, Optional, Tuple, Union
from dataclasses import dataclass, field
from functools import lru_cache
from enum import Enum
import re

from loguru import logger
from sympy.combinatorics.free_groups import free_group as sympy_free_group

from schottkit.algebra.numerics import APPROX
from schottkit.algebra.linalg import Matrix, inverse
from schottkit.utils.utils import (
    GeneratorOutOfRange, NotInvertible, ParseError, PreconditionError,
    ShapeMismatch, SurfaceRelationViolated,
)


class GroupKind(Enum):
    FREE = "F"
    ABELIAN = "Z"
    LATTICE = "Lattice"
    SURFACE = "Surface"


@dataclass(frozen=True)
class GroupSpec:
    """A group presentation.

    Parameters
    ----------
    kind: GroupKind
        FREE, ABELIAN, LATTICE or SURFACE.
    g: int
        Rank (free, abelian), torus dimension (lattice) or genus.
    period: Matrix or None
        The symmetric invertible g x g matrix Z of a lattice. It may
        be left unbound (None) on the source of alpha_torus.
    """
    kind: GroupKind
    g: int
    period: Optional[Matrix] = None
    coords: Optional[Tuple[Tuple, ...]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.kind, GroupKind):
            object.__setattr__(self, "kind", GroupKind(self.kind))
        if self.g < 1:
            raise PreconditionError(f"group rank/genus must be >= 1, got {self.g}")
        if self.period is None:
            return
        if self.kind is not GroupKind.LATTICE:
            raise PreconditionError("only Lattice groups carry a period matrix")
        zmat = self.period
        if zmat.shape != (self.g, self.g):
            raise ShapeMismatch(f"period matrix must be {self.g}x{self.g}, got {zmat.shape}")
        if zmat.T != zmat:
            raise PreconditionError("period matrix Z must be symmetric")
        if inverse(zmat) is None:
            raise NotInvertible("period matrix Z must be invertible")
        # rows of Pi = (Z, I): lambda_i -> Z[i], lambda_{g+j} -> e_j
        one, zero = zmat.backend.one(), zmat.backend.zero()
        coords = [zmat.row(i) for i in range(self.g)]
        coords += [
            tuple(one if k == j else zero for k in range(self.g)) for j in range(self.g)
        ]
        object.__setattr__(self, "coords", tuple(coords))

    def __str__(self):
        if self.kind is GroupKind.LATTICE:
            return f"Lattice:{self.g}"
        return f"{self.kind.value}:{self.g}"

    @property
    def ngens(self) -> int:
        """Number of generators in the presentation."""
        if self.kind in (GroupKind.LATTICE, GroupKind.SURFACE):
            return 2 * self.g
        return self.g

    @property
    def is_abelian(self) -> bool:
        return self.kind in (GroupKind.ABELIAN, GroupKind.LATTICE)

    @property
    def generator_names(self) -> List[str]:
        if self.kind is GroupKind.SURFACE:
            return [f"a{i + 1}" for i in range(self.g)] + [f"b{i + 1}" for i in range(self.g)]
        if self.kind is GroupKind.LATTICE:
            return [f"l{i + 1}" for i in range(2 * self.g)]
        return [f"B{i + 1}" for i in range(self.g)]

    def same_group(self, other: 'GroupSpec') -> bool:
        """Equal kind and rank; periods must agree when both are bound."""
        if self.kind is not other.kind or self.g != other.g:
            return False
        if self.period is not None and other.period is not None:
            left, right = self.period, other.period
            if left.backend is not right.backend:
                left, right = left.to_backend(APPROX), right.to_backend(APPROX)
            return left == right
        return True

    def with_period(self, period: Matrix) -> 'GroupSpec':
        """Bind a period matrix to a Lattice GroupSpec."""
        return GroupSpec(GroupKind.LATTICE, self.g, period)


def free_group(g: int) -> GroupSpec:
    return GroupSpec(GroupKind.FREE, g)


def free_abelian(g: int) -> GroupSpec:
    return GroupSpec(GroupKind.ABELIAN, g)


def lattice(period: Matrix) -> GroupSpec:
    return GroupSpec(GroupKind.LATTICE, period.rows, period)


def surface_group(g: int) -> GroupSpec:
    return GroupSpec(GroupKind.SURFACE, g)


# ----------------------------------------------------------------
# words
# ----------------------------------------------------------------

@dataclass(frozen=True)
class FreeWord:
    """Reduced word: runs of (generator index, nonzero exponent) with
    no two adjacent runs on the same generator.

    Reduction and products go through sympy FreeGroupElements on
    generators x0, x1, ...; `letters` is their array_form with each
    symbol replaced by its index.
    """
    letters: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @property
    def rank(self) -> int:
        """Number of generators the word needs."""
        return 1 + max((gen for gen, _ in self.letters), default=-1)

    def element(self, rank: Optional[int] = None):
        """The word as an element of the sympy free group of rank."""
        rank = max(self.rank, rank or 0, 1)
        group, gens = _sympy_group(rank)
        elem = group.identity
        for gen, exp in self.letters:
            elem = elem * gens[gen] ** exp
        return elem

    @classmethod
    def from_element(cls, elem) -> "FreeWord":
        word = cls()
        object.__setattr__(word, "letters", _array_letters(elem))
        return word

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)


@dataclass(frozen=True)
class AbelianWord:
    """Exponent vector, the normal form in Z^n."""
    exponents: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(i) for i in self.exponents))


Word = Union[FreeWord, AbelianWord]


@lru_cache(maxsize=None)
def _sympy_group(rank: int):
    """sympy free group on x0..x(rank-1) and its generators."""
    group, *gens = sympy_free_group(", ".join(f"x{i}" for i in range(rank)))
    return group, tuple(gens)


def _array_letters(elem) -> Tuple[Tuple[int, int], ...]:
    return tuple((int(str(sym)[1:]), int(exp)) for sym, exp in elem.array_form)


def _reduce(letters: Iterable[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    """Free reduction of letter runs in the sympy free group."""
    letters = [(int(gen), int(exp)) for gen, exp in letters if int(exp)]
    if not letters:
        return ()
    if min(gen for gen, _ in letters) < 0:
        raise GeneratorOutOfRange("generator indices are non-negative")
    group, gens = _sympy_group(1 + max(gen for gen, _ in letters))
    elem = group.identity
    for gen, exp in letters:
        elem = elem * gens[gen] ** exp
    return _array_letters(elem)


def identity_word(group: GroupSpec) -> Word:
    if group.is_abelian:
        return AbelianWord((0,) * group.ngens)
    return FreeWord()


def generator_word(group: GroupSpec, index: int, exponent: int = 1) -> Word:
    """The word gen_index ** exponent (index is 0-based)."""
    if not 0 <= index < group.ngens:
        raise GeneratorOutOfRange(f"generator {index} not in {group}")
    if group.is_abelian:
        exps = [0] * group.ngens
        exps[index] = exponent
        return AbelianWord(tuple(exps))
    return FreeWord(((index, exponent),))


def compose_words(first: Word, second: Word) -> Word:
    """Product first * second in normal form."""
    if isinstance(first, FreeWord) and isinstance(second, FreeWord):
        rank = max(first.rank, second.rank)
        return FreeWord.from_element(first.element(rank) * second.element(rank))
    if isinstance(first, AbelianWord) and isinstance(second, AbelianWord):
        if len(first.exponents) != len(second.exponents):
            raise GeneratorOutOfRange("exponent vectors of different length")
        return AbelianWord(tuple(a + b for a, b in zip(first.exponents, second.exponents)))
    raise TypeError("cannot compose free and abelian words")


def invert_word(word: Word) -> Word:
    if isinstance(word, FreeWord):
        return FreeWord.from_element(word.element() ** -1)
    return AbelianWord(tuple(-i for i in word.exponents))


def power_word(word: Word, exponent: int) -> Word:
    base = word if exponent >= 0 else invert_word(word)
    if isinstance(base, AbelianWord):
        return AbelianWord(tuple(i * abs(exponent) for i in base.exponents))
    return FreeWord.from_element(base.element() ** abs(exponent))


def check_word(group: GroupSpec, word: Word) -> Word:
    """Raise GeneratorOutOfRange unless word is a word in group."""
    if group.is_abelian:
        if not isinstance(word, AbelianWord) or len(word.exponents) != group.ngens:
            raise GeneratorOutOfRange(
                f"{group} words are exponent vectors of length {group.ngens}")
        return word
    if not isinstance(word, FreeWord):
        raise GeneratorOutOfRange(f"{group} words are free words")
    for gen, _ in word.letters:
        if not 0 <= gen < group.ngens:
            raise GeneratorOutOfRange(f"generator index {gen} not in {group}")
    return word


def word_letters(word: Word) -> Tuple[Tuple[int, int], ...]:
    """Letter runs of any word; abelian words are read as the ordered
    product gen_0**e_0 * gen_1**e_1 * ..."""
    if isinstance(word, FreeWord):
        return word.letters
    return tuple((i, e) for i, e in enumerate(word.exponents) if e)


def relator(group: GroupSpec) -> FreeWord:
    """prod_i a_i b_i a_i^-1 b_i^-1 for a surface group."""
    if group.kind is not GroupKind.SURFACE:
        raise PreconditionError("only surface groups have a relator")
    letters = []
    for i in range(group.g):
        aidx, bidx = i, group.g + i
        letters += [(aidx, 1), (bidx, 1), (aidx, -1), (bidx, -1)]
    return FreeWord(tuple(letters))


# ----------------------------------------------------------------
# morphisms
# ----------------------------------------------------------------

@dataclass(frozen=True)
class Morphism:
    """A homomorphism given by generator images.

    Parameters
    ----------
    source: GroupSpec
    target: GroupSpec
    images: Tuple[Word, ...]
        Image of every source generator, as a word in the target.
    name: str
        Optional label ("alpha_torus", "alpha_surface").
    """
    source: GroupSpec
    target: GroupSpec
    images: Tuple[Word, ...]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.ngens:
            raise ShapeMismatch(
                f"{self.source} has {self.source.ngens} generators, "
                f"got {len(self.images)} images")
        for word in self.images:
            check_word(self.target, word)
        self._check_relations()

    def _check_relations(self):
        """Relators of the source must map to the identity."""
        ident = identity_word(self.target)
        if self.source.kind is GroupKind.SURFACE:
            image = apply(self, relator(self.source))
            if image != ident:
                raise SurfaceRelationViolated(
                    f"surface relator maps to {format_word(image, self.target)}",
                    residual=image)
        elif self.source.is_abelian and not self.target.is_abelian:
            for i in range(len(self.images)):
                for j in range(i + 1, len(self.images)):
                    left = compose_words(self.images[i], self.images[j])
                    right = compose_words(self.images[j], self.images[i])
                    if left != right:
                        raise SurfaceRelationViolated(
                            f"images of generators {i} and {j} do not commute",
                            residual=compose_words(left, invert_word(right)))


def apply(morphism: Morphism, word: Word) -> Word:
    """Image of a source word; a homomorphism on normal forms."""
    check_word(morphism.source, word)
    result = identity_word(morphism.target)
    for gen, exp in word_letters(word):
        result = compose_words(result, power_word(morphism.images[gen], exp))
    return result


def alpha_torus(g: int, period: Optional[Matrix] = None) -> Morphism:
    """Lattice -> Z^g, lambda_i -> B_i and lambda_{g+i} -> 1."""
    source = GroupSpec(GroupKind.LATTICE, g, period)
    target = free_abelian(g)
    images = [generator_word(target, i) for i in range(g)]
    images += [identity_word(target)] * g
    return Morphism(source, target, tuple(images), name="alpha_torus")


def alpha_surface(g: int) -> Morphism:
    """Surface group -> F_g, a_i -> 1 and b_i -> B_i."""
    source = surface_group(g)
    target = free_group(g)
    images = [identity_word(target)] * g
    images += [generator_word(target, i) for i in range(g)]
    return Morphism(source, target, tuple(images), name="alpha_surface")


def kernel_generators(morphism: Morphism) -> List[int]:
    """Source generators whose normal closure is ker(alpha).

    For both canonical surjections these are the generators mapped
    to the identity (lambda_{g+j}, resp. a_j).
    """
    ident = identity_word(morphism.target)
    gens = [i for i, word in enumerate(morphism.images) if word == ident]
    logger.debug(f"{morphism.name or 'morphism'} kernel generators: {gens}")
    return gens


# ----------------------------------------------------------------
# text forms
# ----------------------------------------------------------------

_FREE_TOKEN = re.compile(r"^(?P<name>[A-Za-z]+)(?P<idx>\d+)(?:\^(?P<exp>[+-]?\d+))?$")


def format_word(word: Word, group: GroupSpec) -> str:
    """'B1^2*B2^-1' for free words, '[2,-1]' for abelian ones."""
    if isinstance(word, AbelianWord):
        return "[" + ",".join(str(i) for i in word.exponents) + "]"
    if not word.letters:
        return "1"
    names = group.generator_names
    return "*".join(
        names[gen] if exp == 1 else f"{names[gen]}^{exp}" for gen, exp in word.letters
    )


def parse_word(text: str, group: GroupSpec) -> Word:
    """Inverse of format_word."""
    text = str(text).strip().replace(" ", "")
    if group.is_abelian:
        if not (text.startswith("[") and text.endswith("]")):
            raise ParseError(f"abelian word must look like [1,0,...]: {text!r}")
        body = text[1:-1]
        try:
            exps = tuple(int(i) for i in body.split(",")) if body else ()
        except ValueError as inst:
            raise ParseError(f"malformed exponent vector {text!r}") from inst
        return check_word(group, AbelianWord(exps))
    if text in ("", "1", "e"):
        return FreeWord()
    names = {name: idx for idx, name in enumerate(group.generator_names)}
    letters = []
    for token in text.split("*"):
        match = _FREE_TOKEN.match(token)
        if match is None:
            raise ParseError(f"malformed letter {token!r} in {text!r}")
        name = match.group("name") + match.group("idx")
        if name not in names:
            raise GeneratorOutOfRange(f"generator {name} not in {group}")
        letters.append((names[name], int(match.group("exp") or 1)))
    return FreeWord(tuple(letters))


def parse_group(text: str, period_loader: Optional[Callable[[str], Matrix]] = None) -> GroupSpec:
    """Parse the shorthand 'F:g', 'Z:g', 'Surface:g' or 'Lattice:<file>'.

    The Lattice form needs a period_loader mapping the file name to
    the period matrix.
    """
    try:
        kind, arg = str(text).split(":", 1)
    except ValueError as inst:
        raise ParseError(f"group shorthand must be KIND:ARG, got {text!r}") from inst
    if kind == "Lattice":
        if period_loader is None:
            raise ParseError("Lattice:<file> needs a period loader")
        return lattice(period_loader(arg))
    try:
        gval = int(arg)
        gkind = GroupKind(kind)
    except ValueError as inst:
        raise ParseError(f"unknown group shorthand {text!r}") from inst
    return GroupSpec(gkind, gval)
