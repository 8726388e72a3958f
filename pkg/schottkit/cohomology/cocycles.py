#!/usr/bin/env python

"""
Group cohomology in degrees 0 and 1 from explicit cocycles.

A 1-cochain is stored by its values z_1..z_n on the generators and
flattened into one vector of length n * r (generator blocks in
order). The cocycle rule is z(gh) = z(g) + g.z(h), so

  Z^1 is M^n for free groups,
  Z^1 is cut out by (rho_i - 1) z_j = (rho_j - 1) z_i for free abelian
      and lattice groups (Koszul condition),
  Z^1 is the kernel of z -> z(R) for a surface group with relator R,
  B^1 is {((rho_i - 1) m)_i : m in M} in every case.

Ext^1(A, B) is H^1 with coefficients Hom(A, B) = dual(A) (x) B. A
Hom element is an r_B x r_A block C acted on by C -> B C A^-1; its
coefficient vector is C read column by column (see hom_vector).
"""

from typing import List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass

import pandas as pd
from loguru import logger

from schottkit.algebra.numerics import Tolerance
from schottkit.algebra.linalg import (
    Matrix, hstack, kernel_basis, rank, solve, span_basis, vstack,
)
from schottkit.groups.presentations import (
    GroupKind, GroupSpec, Morphism, Word, free_abelian, free_group,
    relator, word_letters, check_word,
)
from schottkit.reps.kolchin import PeelResult, fixed_space, peel
from schottkit.reps.representation import (
    Representation, hom_rep, pullback, trivial,
)
from schottkit.utils.utils import (
    CoefficientMismatch, GroupMismatch, InvalidCocycle, InvariantBreach,
    ShapeMismatch,
)


# ----------------------------------------------------------------
# Hom coefficient vectors
# ----------------------------------------------------------------

def hom_vector(block: Matrix) -> Matrix:
    """Coefficient vector in Hom(A, B) of an r_B x r_A block."""
    return Matrix.column(block.T.flat(), block.backend)


def hom_block(vector: Matrix, rank_a: int, rank_b: int) -> Matrix:
    """Inverse of hom_vector."""
    if vector.rows != rank_a * rank_b:
        raise ShapeMismatch(f"Hom vector of length {vector.rows} is not {rank_b}x{rank_a}")
    return Matrix(rank_a, rank_b, vector.flat(), vector.backend).T


# ----------------------------------------------------------------
# Fox calculus
# ----------------------------------------------------------------

def fox_blocks(rep: Representation, word: Word, tol: Optional[Tolerance] = None) -> List[Matrix]:
    """Blocks D_1..D_n with z(word) = sum_i D_i z_i for every cocycle z.

    Uses z(x^e) = (1 + x + ... + x^(e-1)) z(x) for e > 0 and
    z(x^-1) = -x^-1 z(x), accumulated along the word by
    z(uv) = z(u) + u.z(v).
    """
    check_word(rep.group, word)
    size = rep.rank
    blocks = [Matrix.zeros(size, size, rep.backend) for _ in rep.images]
    prefix = rep.identity()
    for gen, exp in word_letters(word):
        step = rep.images[gen] if exp > 0 else rep.inverse_image(gen, tol)
        acc = Matrix.zeros(size, size, rep.backend)
        power = rep.identity() if exp > 0 else step
        for _ in range(abs(exp)):
            acc = acc + power
            power = power @ step
        contrib = prefix @ acc
        blocks[gen] = blocks[gen] + (contrib if exp > 0 else -contrib)
        prefix = prefix @ step.power(abs(exp))
    return blocks


# ----------------------------------------------------------------
# cocycles
# ----------------------------------------------------------------

def _check_coefficients(group: GroupSpec, coefficients: Representation):
    if not coefficients.group.same_group(group):
        raise GroupMismatch(f"coefficients over {coefficients.group}, cochains over {group}")


def cocycle_conditions(group: GroupSpec, coefficients: Representation, tol: Optional[Tolerance] = None) -> Matrix:
    """Matrix whose kernel (on flattened cochains) is Z^1."""
    _check_coefficients(group, coefficients)
    size = coefficients.rank
    ngens = group.ngens
    backend = coefficients.backend
    if group.kind is GroupKind.FREE:
        return Matrix.zeros(0, ngens * size, backend)
    if group.kind is GroupKind.SURFACE:
        return hstack(fox_blocks(coefficients, relator(group), tol))

    ident = coefficients.identity()
    zero = Matrix.zeros(size, size, backend)
    rows = []
    for i in range(ngens):
        for j in range(i + 1, ngens):
            blocks = [zero] * ngens
            # (rho_i - 1) z_j - (rho_j - 1) z_i
            blocks[j] = coefficients.images[i] - ident
            blocks[i] = ident - coefficients.images[j]
            rows.append(hstack(blocks))
    if not rows:
        return Matrix.zeros(0, ngens * size, backend)
    return vstack(rows)


def coboundary_map(group: GroupSpec, coefficients: Representation) -> Matrix:
    """d0: m -> ((rho_i - 1) m)_i as an (n r) x r matrix."""
    _check_coefficients(group, coefficients)
    ident = coefficients.identity()
    return vstack([img - ident for img in coefficients.images])


@dataclass(frozen=True)
class Cocycle:
    """Values of a 1-cocycle on the generators.

    Construction checks shapes only; `residual` and `check` test the
    cocycle condition.

    Parameters
    ----------
    group: GroupSpec
    coefficients: Representation
        The module M, a representation of `group`.
    values: Tuple[Matrix, ...]
        One column vector of length M.rank per generator.
    """
    group: GroupSpec
    coefficients: Representation
    values: Tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        _check_coefficients(self.group, self.coefficients)
        if len(self.values) != self.group.ngens:
            raise ShapeMismatch(
                f"{self.group} cocycle needs {self.group.ngens} values, got {len(self.values)}")
        size = self.coefficients.rank
        if any(v.shape != (size, 1) for v in self.values):
            raise ShapeMismatch(f"cocycle values must be columns of length {size}")

    @classmethod
    def from_flat(cls, group: GroupSpec, coefficients: Representation, vector: Matrix) -> 'Cocycle':
        size = coefficients.rank
        return cls(group, coefficients, tuple(
            vector.submatrix(i * size, (i + 1) * size, 0, 1) for i in range(group.ngens)
        ))

    @classmethod
    def zero(cls, group: GroupSpec, coefficients: Representation) -> 'Cocycle':
        col = Matrix.zeros(coefficients.rank, 1, coefficients.backend)
        return cls(group, coefficients, (col,) * group.ngens)

    @classmethod
    def coboundary(cls, group: GroupSpec, coefficients: Representation, vec: Matrix) -> 'Cocycle':
        """The cocycle g -> (rho(g) - 1) m."""
        ident = coefficients.identity()
        return cls(group, coefficients, tuple((img - ident) @ vec for img in coefficients.images))

    def flat(self) -> Matrix:
        if not self.values:
            return Matrix.zeros(0, 1, self.coefficients.backend)
        return vstack(list(self.values))

    def __add__(self, other: 'Cocycle') -> 'Cocycle':
        _same_coefficients(self, other)
        return Cocycle(self.group, self.coefficients, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: 'Cocycle') -> 'Cocycle':
        _same_coefficients(self, other)
        return Cocycle(self.group, self.coefficients, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, value) -> 'Cocycle':
        return Cocycle(self.group, self.coefficients, tuple(v * value for v in self.values))

    __rmul__ = __mul__

    def residual(self, tol: Optional[Tolerance] = None) -> Optional[Matrix]:
        """Cocycle-condition residual, or None if the condition holds."""
        cond = cocycle_conditions(self.group, self.coefficients, tol)
        if not cond.rows:
            return None
        res = cond @ self.flat()
        return None if res.is_zero(tol) else res

    def check(self, tol: Optional[Tolerance] = None) -> 'Cocycle':
        """Raise InvalidCocycle (with the residual) unless z is a cocycle."""
        res = self.residual(tol)
        if res is not None:
            raise InvalidCocycle(f"cocycle condition fails on {self.group}", residual=res)
        return self


def _same_coefficients(first: Cocycle, second: Cocycle):
    if not first.group.same_group(second.group):
        raise CoefficientMismatch(f"cocycles over {first.group} and {second.group}")
    if (first.coefficients.rank != second.coefficients.rank
            or first.coefficients.images != second.coefficients.images):
        raise CoefficientMismatch("cocycles have different coefficient modules")


def evaluate_cocycle(cocycle: Cocycle, word: Word, tol: Optional[Tolerance] = None) -> Matrix:
    """z(word) by the Fox rules."""
    blocks = fox_blocks(cocycle.coefficients, word, tol)
    total = Matrix.zeros(cocycle.coefficients.rank, 1, cocycle.coefficients.backend)
    for block, value in zip(blocks, cocycle.values):
        total = total + block @ value
    return total


def pullback_cocycle(cocycle: Cocycle, morphism: Morphism, tol: Optional[Tolerance] = None) -> Cocycle:
    """The cocycle s -> z(alpha(s)) with coefficients pullback(M, alpha)."""
    if not cocycle.group.same_group(morphism.target):
        raise GroupMismatch(f"cocycle over {cocycle.group}, morphism into {morphism.target}")
    coefficients = pullback(cocycle.coefficients, morphism, tol)
    return Cocycle(morphism.source, coefficients, tuple(
        evaluate_cocycle(cocycle, word, tol) for word in morphism.images
    ))


# ----------------------------------------------------------------
# H^0, H^1, Ext^1
# ----------------------------------------------------------------

def h0(group: GroupSpec, coefficients: Representation, tol: Optional[Tolerance] = None) -> List[Matrix]:
    """Canonical basis of the invariants M^G."""
    _check_coefficients(group, coefficients)
    return fixed_space(coefficients.images, coefficients.rank, tol)


@dataclass(frozen=True)
class H1Result:
    """Z^1 and B^1 bases (flattened cochains) and dim H^1.

    Attributes
    ----------
    group: GroupSpec
    coefficients: Representation
    dim: int
        dim Z^1 - dim B^1.
    cocycles: Tuple[Matrix, ...]
        Canonical basis of Z^1.
    coboundaries: Tuple[Matrix, ...]
        Canonical (echelon) basis of B^1.
    """
    group: GroupSpec
    coefficients: Representation
    dim: int
    cocycles: Tuple[Matrix, ...]
    coboundaries: Tuple[Matrix, ...]

    def class_basis(self, tol: Optional[Tolerance] = None) -> List[Cocycle]:
        """Cocycles whose classes form a basis of H^1."""
        reduced = [_reduce(vec, self.coboundaries, tol) for vec in self.cocycles]
        reduced = [vec for vec in reduced if not vec.is_zero(tol)]
        basis = span_basis(reduced, tol=tol) if reduced else []
        if len(basis) != self.dim:
            raise InvariantBreach(f"H^1 class basis has {len(basis)} elements, expected {self.dim}")
        return [Cocycle.from_flat(self.group, self.coefficients, vec) for vec in basis]


def h1(group: GroupSpec, coefficients: Representation, tol: Optional[Tolerance] = None) -> H1Result:
    """First cohomology with coefficients in a representation."""
    cond = cocycle_conditions(group, coefficients, tol)
    cocycles = kernel_basis(cond, tol)
    dmap = coboundary_map(group, coefficients)
    coboundaries = span_basis(dmap.columns(), dmap.rows, tol) if dmap.cols else []
    dim = len(cocycles) - len(coboundaries)
    logger.debug(f"h1 over {group}: dim Z1 {len(cocycles)}, dim B1 {len(coboundaries)}")
    return H1Result(group, coefficients, dim, tuple(cocycles), tuple(coboundaries))


def ext1(first: Representation, second: Representation, tol: Optional[Tolerance] = None) -> H1Result:
    """Ext^1(A, B) as H^1 with coefficients Hom(A, B)."""
    if not first.group.same_group(second.group):
        raise GroupMismatch(f"reps live over {first.group} and {second.group}")
    group = first.group if first.group.period is not None else second.group
    return h1(group, hom_rep(first, second, tol), tol)


# ----------------------------------------------------------------
# classes
# ----------------------------------------------------------------

def _reduce(vec: Matrix, echelon: Sequence[Matrix], tol: Optional[Tolerance] = None) -> Matrix:
    """Clear the pivot coordinates of vec against an echelon basis."""
    for row in echelon:
        pivot = next(i for i, val in enumerate(row.flat()) if not val.is_zero(tol))
        coef = vec.flat()[pivot]
        if not coef.is_zero(tol):
            vec = vec - row * coef
    return vec


@dataclass(frozen=True)
class ExtClass:
    """A cohomology class with its canonical representative.

    Attributes
    ----------
    cocycle: Cocycle
        The cocycle the class was made from.
    representative: Cocycle
        cocycle reduced against the echelon coboundary basis; equal
        classes have equal representatives on the exact backend.
    """
    cocycle: Cocycle
    representative: Cocycle

    @property
    def group(self) -> GroupSpec:
        return self.cocycle.group

    @property
    def coefficients(self) -> Representation:
        return self.cocycle.coefficients

    def is_zero(self, tol: Optional[Tolerance] = None) -> bool:
        return self.representative.flat().is_zero(tol)


def class_of(cocycle: Cocycle, tol: Optional[Tolerance] = None) -> ExtClass:
    """Class of a cocycle in H^1 (InvalidCocycle if it is not one)."""
    cocycle.check(tol)
    result = h1(cocycle.group, cocycle.coefficients, tol)
    reduced = _reduce(cocycle.flat(), result.coboundaries, tol)
    return ExtClass(cocycle, Cocycle.from_flat(cocycle.group, cocycle.coefficients, reduced))


def class_eq(first: Union[Cocycle, ExtClass], second: Union[Cocycle, ExtClass], tol: Optional[Tolerance] = None) -> bool:
    """True iff the difference is a coboundary (exact rank test)."""
    first = first.cocycle if isinstance(first, ExtClass) else first
    second = second.cocycle if isinstance(second, ExtClass) else second
    diff = first - second
    dmap = coboundary_map(first.group, first.coefficients)
    if not dmap.cols:
        return diff.flat().is_zero(tol)
    base = rank(dmap, tol)
    return rank(hstack([dmap, diff.flat()]), tol) == base


# ----------------------------------------------------------------
# inflation and connecting maps
# ----------------------------------------------------------------

@dataclass(frozen=True)
class InflationResult:
    """Ext^1 over the target of alpha mapped into Ext^1 over its source.

    Attributes
    ----------
    target_dim: int
        dim Ext^1 over the quotient group (Sigma).
    source_dim: int
        dim Ext^1 of the pulled back modules over the source group.
    rank: int
        Rank of the inflation map; injective iff rank == target_dim.
    """
    target_dim: int
    source_dim: int
    rank: int

    @property
    def injective(self) -> bool:
        return self.rank == self.target_dim


def inflation(first: Representation, second: Representation, morphism: Morphism, tol: Optional[Tolerance] = None) -> InflationResult:
    """Pull a basis of Ext^1_Sigma(A, B) back along alpha and measure
    the rank of its image in Ext^1_source(alpha*A, alpha*B)."""
    target = ext1(first, second, tol)
    pulled_a = pullback(first, morphism, tol)
    pulled_b = pullback(second, morphism, tol)
    source = ext1(pulled_a, pulled_b, tol)

    classes = [pullback_cocycle(z, morphism, tol) for z in target.class_basis(tol)]
    dmap = coboundary_map(source.group, source.coefficients)
    base = rank(dmap, tol) if dmap.cols else 0
    if classes:
        stacked = hstack(([dmap] if dmap.cols else []) + [z.flat() for z in classes])
        img_rank = rank(stacked, tol) - base
    else:
        img_rank = 0
    logger.debug(f"inflation: dim {target.dim} -> dim {source.dim}, rank {img_rank}")
    return InflationResult(target.dim, source.dim, img_rank)


@dataclass(frozen=True)
class ConnectingMap:
    """delta: H^0(M_{r-1}) -> Z^1(G, C) for 0 -> C -> M -> M_{r-1} -> 0.

    Attributes
    ----------
    source_basis: Tuple[Matrix, ...]
        Canonical basis of H^0 of the quotient.
    matrix: Matrix
        n x d matrix whose k-th column is delta(source_basis[k]),
        the values of a cocycle with trivial rank-1 coefficients.
    """
    source_basis: Tuple[Matrix, ...]
    matrix: Matrix

    def cocycle(self, group: GroupSpec, index: int) -> Cocycle:
        col = self.matrix.col(index)
        return Cocycle(group, trivial(group, 1, col.backend), tuple(
            Matrix.column([val], col.backend) for val in col.flat()
        ))


def connecting_map(rep: Representation, peeled: Optional[PeelResult] = None, tol: Optional[Tolerance] = None) -> ConnectingMap:
    """Snake-lemma connecting map of the sequence produced by peel.

    A fixed vector q of the quotient is lifted to m = Q [0; q]; then
    (rho(g) - 1) m lies on the fixed line and its coordinate there is
    delta(q)(g).
    """
    peeled = peel(rep, tol) if peeled is None else peeled
    size = rep.rank
    basis = h0(rep.group, peeled.quotient, tol)
    complement = peeled.basis.submatrix(0, size, 1, size)
    ident = rep.identity()
    columns = []
    for qvec in basis:
        lift = complement @ qvec
        values = []
        for img in rep.images:
            coord = solve(peeled.inclusion, (img - ident) @ lift, tol)
            if coord is None:
                raise InvariantBreach("boundary of a lifted invariant left the fixed line")
            values.append(coord.flat()[0])
        columns.append(Matrix.column(values, rep.backend))
    ngens = len(rep.images)
    matrix = hstack(columns) if columns else Matrix.zeros(ngens, 0, rep.backend)
    return ConnectingMap(tuple(basis), matrix)


def dimension_table(max_g: int = 4) -> pd.DataFrame:
    """dim H^0 and dim H^1 with trivial rank-1 coefficients over F_g
    and Z^g for g = 1..max_g."""
    rows = []
    for gval in range(1, max_g + 1):
        for group in (free_group(gval), free_abelian(gval)):
            coeffs = trivial(group, 1)
            rows.append({
                "group": str(group),
                "g": gval,
                "h0": len(h0(group, coeffs)),
                "h1": h1(group, coeffs).dim,
            })
    return pd.DataFrame(rows)
