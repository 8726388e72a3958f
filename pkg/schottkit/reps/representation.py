#!/usr/bin/env python

"""
The Representation class and the generator-wise constructions on it:
validation, evaluation on words, direct sums, tensor products,
duals, pullback along a morphism and the adjoint representation.

Generator indices reported in errors are 1-based, matching the
generator names B1, l1, a1, ...
"""

from typing import Dict, Optional, Sequence, Tuple
from dataclasses import dataclass, field

from loguru import logger

from schottkit.algebra.numerics import EXACT, Backend, Tolerance
from schottkit.algebra.linalg import Matrix, inverse, kron
from schottkit.algebra import linalg
from schottkit.groups.presentations import (
    GroupKind, GroupSpec, Morphism, Word, check_word, relator, word_letters,
)
from schottkit.utils.utils import (
    BackendMismatch, GroupMismatch, NonCommuting, NotInvertible,
    ShapeMismatch, SurfaceRelationViolated,
)


@dataclass(frozen=True)
class Representation:
    """A finite-dimensional representation given on generators.

    Construction only checks shapes. Call validate() to check the
    group relations (invertibility, commutation, surface relation).

    Parameters
    ----------
    group: GroupSpec
        The group acted on.
    rank: int
        Dimension r of the module. Rank 0 (empty matrices) is allowed.
    images: Tuple[Matrix, ...]
        One r x r matrix per generator, all from one backend.
    """
    group: GroupSpec
    rank: int
    images: Tuple[Matrix, ...]
    _inverses: Dict[int, Matrix] = field(
        default_factory=dict, init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.group.ngens:
            raise ShapeMismatch(
                f"{self.group} needs {self.group.ngens} images, got {len(self.images)}")
        if any(m.shape != (self.rank, self.rank) for m in self.images):
            raise ShapeMismatch(f"every image must be {self.rank}x{self.rank}")
        if len({m.backend.name for m in self.images}) > 1:
            raise BackendMismatch("representation images mix backends")

    @classmethod
    def from_images(cls, group: GroupSpec, images: Sequence[Matrix]) -> 'Representation':
        """Infer the rank from the first image."""
        images = tuple(images)
        rank = images[0].rows if images else 0
        return cls(group, rank, images)

    @property
    def backend(self) -> Backend:
        return self.images[0].backend if self.images else EXACT

    def inverse_image(self, index: int, tol: Optional[Tolerance] = None) -> Matrix:
        """rho(gen_index)^-1, cached per instance."""
        if index not in self._inverses:
            inv = inverse(self.images[index], tol)
            if inv is None:
                raise NotInvertible(
                    f"image of generator {self.group.generator_names[index]} is singular",
                    index=index + 1)
            self._inverses[index] = inv
        return self._inverses[index]

    def identity(self) -> Matrix:
        return Matrix.identity(self.rank, self.backend)

    def to_backend(self, backend: Backend) -> 'Representation':
        return Representation(self.group, self.rank, tuple(m.to_backend(backend) for m in self.images))

    def with_group(self, group: GroupSpec) -> 'Representation':
        """Same images over an equivalent group (e.g. with a bound period)."""
        if not self.group.same_group(group):
            raise GroupMismatch(f"cannot move a {self.group} rep onto {group}")
        return Representation(group, self.rank, self.images)

    def close(self, other: 'Representation', tol: Optional[Tolerance] = None) -> bool:
        """Generator-wise equality (within tol on the approximate backend)."""
        if not self.group.same_group(other.group) or self.rank != other.rank:
            return False
        return all((a - b).is_zero(tol) for a, b in zip(self.images, other.images))


def validate(rep: Representation, tol: Optional[Tolerance] = None) -> Representation:
    """Check every relation of rep.group and return rep.

    Raises
    ------
    NotInvertible
        A generator image is singular (index is 1-based).
    NonCommuting
        Two images of an abelian group do not commute.
    SurfaceRelationViolated
        prod [rho(a_i), rho(b_i)] != I; residual is the product.
    """
    for idx in range(len(rep.images)):
        rep.inverse_image(idx, tol)

    if rep.group.is_abelian:
        images = rep.images
        for i in range(len(images)):
            for j in range(i + 1, len(images)):
                if not (images[i] @ images[j] - images[j] @ images[i]).is_zero(tol):
                    raise NonCommuting(
                        f"images of generators {i + 1} and {j + 1} do not commute",
                        i + 1, j + 1)

    elif rep.group.kind is GroupKind.SURFACE:
        residual = evaluate(rep, relator(rep.group), tol)
        if not residual.is_identity(tol):
            raise SurfaceRelationViolated(
                "product of commutators of the images is not the identity",
                residual=residual)
    logger.debug(f"validated rank {rep.rank} rep of {rep.group}")
    return rep


def evaluate(rep: Representation, word: Word, tol: Optional[Tolerance] = None) -> Matrix:
    """Image of a word, multiplying generator powers left to right."""
    check_word(rep.group, word)
    result = rep.identity()
    for gen, exp in word_letters(word):
        base = rep.images[gen] if exp > 0 else rep.inverse_image(gen, tol)
        result = result @ base.power(abs(exp))
    return result


def _common_group(first: Representation, second: Representation) -> GroupSpec:
    if not first.group.same_group(second.group):
        raise GroupMismatch(f"reps live over {first.group} and {second.group}")
    if first.backend is not second.backend:
        raise BackendMismatch("reps use different scalar backends")
    return first.group if first.group.period is not None else second.group


def trivial(group: GroupSpec, rank: int = 1, backend: Backend = EXACT) -> Representation:
    ident = Matrix.identity(rank, backend)
    return Representation(group, rank, (ident,) * group.ngens)


def direct_sum(first: Representation, second: Representation) -> Representation:
    group = _common_group(first, second)
    return Representation(group, first.rank + second.rank, tuple(
        linalg.direct_sum(a, b) for a, b in zip(first.images, second.images)
    ))


def tensor(first: Representation, second: Representation) -> Representation:
    group = _common_group(first, second)
    return Representation(group, first.rank * second.rank, tuple(
        kron(a, b) for a, b in zip(first.images, second.images)
    ))


def dual(rep: Representation, tol: Optional[Tolerance] = None) -> Representation:
    """Contragredient: images are inverse-transposes."""
    return Representation(rep.group, rep.rank, tuple(
        rep.inverse_image(i, tol).T for i in range(len(rep.images))
    ))


def hom_rep(first: Representation, second: Representation, tol: Optional[Tolerance] = None) -> Representation:
    """Hom(A, B) = dual(A) (x) B acting by C -> B C A^-1."""
    return tensor(dual(first, tol), second)


def conjugate(rep: Representation, pmat: Matrix, tol: Optional[Tolerance] = None) -> Representation:
    """The isomorphic rep P^-1 rho P."""
    pinv = inverse(pmat, tol)
    if pinv is None:
        raise NotInvertible("conjugating matrix is singular")
    return Representation(rep.group, rep.rank, tuple(pinv @ m @ pmat for m in rep.images))


def is_scalar_rep(rep: Representation, tol: Optional[Tolerance] = None) -> bool:
    """All images are multiples of the identity."""
    return all(m.is_scalar(tol) for m in rep.images)


def pullback(rep: Representation, morphism: Morphism, tol: Optional[Tolerance] = None) -> Representation:
    """The rep of morphism.source given by gen -> rep(morphism(gen)).

    Parameters
    ----------
    rep: Representation
        A representation of morphism.target.
    morphism: Morphism
        e.g. alpha_torus(g) or alpha_surface(g).
    """
    if not rep.group.same_group(morphism.target):
        raise GroupMismatch(f"rep of {rep.group} cannot be pulled back along a map into {morphism.target}")
    return Representation(morphism.source, rep.rank, tuple(
        evaluate(rep, word, tol) for word in morphism.images
    ))


def adjoint_rep(rep: Representation, tol: Optional[Tolerance] = None) -> Representation:
    """Ad(g) X = g X g^-1 on row-major vectorized r x r matrices,
    realized as kron(g, inverse-transpose(g))."""
    return Representation(rep.group, rep.rank * rep.rank, tuple(
        kron(m, rep.inverse_image(i, tol).T) for i, m in enumerate(rep.images)
    ))
