#!/usr/bin/env python

"""
Schottky-ization over a complex torus V / Lambda with period matrix
Pi = (Z, I).

A representation rho of the lattice is turned into a representation
sigma of Z^g by a constant 1-form gauge w = A_1 dz_1 + ... + A_g dz_g:

    sigma(lambda) = exp(sum_j c(lambda)_j A_j) rho(lambda)

where c(lambda) is the coordinate row of lambda in Pi. Choosing
exp(A_j) = rho(lambda_{g+j})^-1 kills the kernel of alpha, so sigma
factors through alpha_torus and is read off on B_1..B_g.

Unipotent representations are handled exactly (finite log/exp
series); characters need a transcendental logarithm and run on the
approximate backend with the principal branch.
"""

from typing import List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass

import numpy as np
from loguru import logger

from schottkit.algebra.numerics import (
    APPROX, EXACT, ApproxComplex, Backend, Tolerance, DEFAULT_TOL,
    approx_exp, get_backend, principal_log,
)
from schottkit.algebra.linalg import (
    Matrix, exp_nilpotent, expm_approx, is_nilpotent, log_unipotent,
)
from schottkit.algebra import linalg
from schottkit.groups.presentations import (
    GroupKind, GroupSpec, Morphism, alpha_torus, free_abelian,
    kernel_generators,
)
from schottkit.reps.kolchin import unipotence_flag
from schottkit.reps.representation import (
    Representation, adjoint_rep, direct_sum, evaluate, tensor, validate,
)
from schottkit.utils.utils import (
    BackendMismatch, DomainError, GroupMismatch, InvariantBreach,
    NotInvertible, NotUnipotent, ShapeMismatch,
)


@dataclass(frozen=True)
class SchottkyGauge:
    """The constant gauge A_1..A_g.

    Attributes
    ----------
    matrices: Tuple[Matrix, ...]
        A_j, the coefficient of dz_j.
    backend: str
        'exact' or 'approx'.
    """
    matrices: Tuple[Matrix, ...]
    backend: str = "exact"

    def __post_init__(self):
        object.__setattr__(self, "matrices", tuple(self.matrices))

    @property
    def g(self) -> int:
        return len(self.matrices)

    def is_zero(self, tol: Optional[Tolerance] = None) -> bool:
        return all(m.is_zero(tol) for m in self.matrices)


@dataclass(frozen=True)
class GaugeCertificate:
    """Every gauge identity held.

    Attributes
    ----------
    checks: Tuple[str, ...]
        Names of the identities verified, in order.
    max_residual: float
        Largest entrywise residual seen (0.0 on the exact backend).
    """
    checks: Tuple[str, ...]
    max_residual: float = 0.0

    def __bool__(self):
        return True


@dataclass(frozen=True)
class GaugeFailure:
    """The first identity that failed.

    Attributes
    ----------
    check: str
        'shape', 'nilpotent', 'commute', 'commute_rho', 'exp' or
        'lattice'.
    index: int
        1-based index of the offending A_j or lattice generator.
    residual: Matrix
        lhs - rhs of the failed identity.
    message: str
    """
    check: str
    index: int
    residual: Optional[Matrix]
    message: str

    def __bool__(self):
        return False


@dataclass(frozen=True)
class SchottkyResult:
    """sigma and the gauge producing it."""
    sigma: Representation
    gauge: SchottkyGauge
    certificate: Optional[GaugeCertificate] = None


# ----------------------------------------------------------------
# torus
# ----------------------------------------------------------------

@dataclass(frozen=True)
class TorusData:
    """A complex torus given by a symmetric invertible period block Z.

    Parameters
    ----------
    g: int
        Complex dimension.
    period: Matrix
        Z, g x g, exact (Q(i) entries) or approximate.
    lattice: GroupSpec
        Lattice(Z), generators lambda_1..lambda_2g.
    alpha: Morphism
        alpha_torus(g) with the period bound.

    Example
    -------
    >>> torus = TorusData.from_period(Matrix.from_rows([["i"]]))
    >>> result = torus.schottkyize(rho)
    """
    g: int
    period: Matrix
    lattice: GroupSpec
    alpha: Morphism

    @classmethod
    def from_period(cls, period: Matrix, backend: Union[str, Backend, None] = None) -> 'TorusData':
        if backend is not None:
            period = period.to_backend(get_backend(backend))
        alpha = alpha_torus(period.rows, period)
        return cls(period.rows, period, alpha.source, alpha)

    @property
    def backend(self) -> Backend:
        return self.period.backend

    def coordinates(self, index: int, backend: Backend) -> Tuple:
        """Coordinate row of lambda_index (0-based) in Pi = (Z, I)."""
        row = self.lattice.coords[index]
        if backend is APPROX and self.backend is EXACT:
            return tuple(ApproxComplex.from_exact(i) for i in row)
        if backend is EXACT and self.backend is APPROX:
            raise BackendMismatch("exact computation needs a period matrix over Q(i)")
        return row

    def check_rep(self, rep: Representation) -> Representation:
        """rep must live on this lattice; returns it with the period bound."""
        if rep.group.kind is not GroupKind.LATTICE or not rep.group.same_group(self.lattice):
            raise GroupMismatch(f"expected a rep of {self.lattice}, got {rep.group}")
        return rep.with_group(self.lattice)

    # delegates
    def schottkyize(self, rep, tol: Optional[Tolerance] = None):
        """Dispatch on the input: a list of (chi, rho) pairs is a flat
        sum, a rank-1 rep that is not unipotent (or is approximate) is
        a character, anything else is unipotent."""
        if isinstance(rep, (list, tuple)):
            return schottkyize_flat_sum(self, rep, tol)
        if rep.rank == 1 and (rep.backend is APPROX or not all(m.is_identity() for m in rep.images)):
            return schottkyize_character(self, rep, tol)
        return schottkyize_unipotent(self, rep)

    def verify(self, rep: Representation, result: SchottkyResult, tol: Optional[Tolerance] = None):
        return verify_gauge(self, rep, result.sigma, result.gauge, tol)

    def gauged(self, rep: Representation, gauge: SchottkyGauge) -> Representation:
        return gauged_rep(self, rep, gauge)


# ----------------------------------------------------------------
# helpers
# ----------------------------------------------------------------

def _combo(coeffs: Sequence, mats: Sequence[Matrix]) -> Matrix:
    total = mats[0] * coeffs[0]
    for coef, mat in zip(coeffs[1:], mats[1:]):
        if coef:
            total = total + mat * coef
    return total


def _exp(mat: Matrix) -> Matrix:
    if mat.backend is EXACT:
        return exp_nilpotent(mat)
    return expm_approx(mat)


def _close(lhs: Matrix, rhs: Matrix, tol: Optional[Tolerance]) -> Tuple[bool, float]:
    """Exact equality, or residual <= eps * max(1, |rhs|) when approximate."""
    if lhs.backend is EXACT and rhs.backend is EXACT:
        return lhs == rhs, 0.0
    tol = DEFAULT_TOL if tol is None else tol
    resid = linalg.max_abs_diff(lhs, rhs)
    scale = max(1.0, float(np.max(np.abs(rhs.to_array())))) if rhs.entries else 1.0
    return resid <= tol.eps * scale, resid


def gauged_rep(torus: TorusData, rep: Representation, gauge: SchottkyGauge) -> Representation:
    """The lattice rep lambda -> exp(sum_j c(lambda)_j A_j) rho(lambda)."""
    rep = torus.check_rep(rep)
    backend = rep.backend
    images = []
    for idx, img in enumerate(rep.images):
        coords = torus.coordinates(idx, backend)
        images.append(_exp(_combo(coords, gauge.matrices)) @ img)
    return Representation(torus.lattice, rep.rank, tuple(images))


def _sigma_from_gauge(torus: TorusData, rep: Representation, gauge: SchottkyGauge) -> Representation:
    gauged = gauged_rep(torus, rep, gauge)
    return Representation(free_abelian(torus.g), rep.rank, gauged.images[:torus.g])


# ----------------------------------------------------------------
# unipotent (exact)
# ----------------------------------------------------------------

def _unipotent_core(torus: TorusData, rep: Representation, tol: Optional[Tolerance]) -> SchottkyResult:
    rep = validate(torus.check_rep(rep), tol)
    cert = unipotence_flag(rep, tol)
    if not cert:
        raise NotUnipotent(
            f"lattice rep has no Kolchin flag (stage {cert.stage})", witness=cert)
    gvals = torus.g
    gauge = SchottkyGauge(
        tuple(-log_unipotent(rep.images[gvals + j], tol) for j in range(gvals)),
        rep.backend.name,
    )
    sigma = validate(_sigma_from_gauge(torus, rep, gauge), tol)
    logger.debug(f"schottkyized rank {rep.rank} unipotent rep over g={gvals}")
    return SchottkyResult(sigma, gauge)


def schottkyize_unipotent(torus: TorusData, rep: Representation) -> SchottkyResult:
    """A_j = -log(rho(lambda_{g+j})) and
    sigma(B_i) = exp(sum_j Z_ij A_j) rho(lambda_i), exactly.

    Raises
    ------
    NotUnipotent
        rho has no Kolchin flag.
    BackendMismatch
        rho or Z is approximate.
    """
    if rep.backend is not EXACT or torus.backend is not EXACT:
        raise BackendMismatch("schottkyize_unipotent runs on the exact backend")
    result = _unipotent_core(torus, rep, None)
    check = verify_gauge(torus, rep, result.sigma, result.gauge)
    if not check:
        raise InvariantBreach(f"constructed gauge fails its {check.check} identity: {check.message}")
    return SchottkyResult(result.sigma, result.gauge, check)


# ----------------------------------------------------------------
# verification
# ----------------------------------------------------------------

def verify_gauge(
    torus: TorusData,
    rep: Representation,
    sigma: Representation,
    gauge: SchottkyGauge,
    tol: Optional[Tolerance] = None,
) -> Union[GaugeCertificate, GaugeFailure]:
    """Check the gauge identities; failure is returned, not raised.

    In order: shapes, nilpotency of each A_j (exact only), pairwise
    commutation, commutation with every rho(lambda),
    exp(A_j) = rho(lambda_{g+j})^-1, and for every lattice generator
    exp(sum_j c(lambda)_j A_j) rho(lambda) = sigma(alpha(lambda)).
    """
    rep = torus.check_rep(rep)
    backend = rep.backend
    size = rep.rank
    mats = gauge.matrices
    done = []
    worst = 0.0

    if (len(mats) != torus.g or any(m.shape != (size, size) for m in mats)
            or sigma.rank != size or not sigma.group.same_group(torus.alpha.target)):
        return GaugeFailure("shape", 0, None, "gauge or sigma shape does not match rho")
    if any(m.backend is not backend for m in mats) or sigma.backend is not backend:
        return GaugeFailure("shape", 0, None, "gauge, rho and sigma use different backends")
    done.append("shape")

    if backend is EXACT:
        for j, amat in enumerate(mats):
            if not is_nilpotent(amat, tol):
                return GaugeFailure("nilpotent", j + 1, amat, f"A_{j + 1} is not nilpotent")
        done.append("nilpotent")

    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            ok, res = _close(mats[i] @ mats[j], mats[j] @ mats[i], tol)
            worst = max(worst, res)
            if not ok:
                return GaugeFailure(
                    "commute", i + 1, mats[i] @ mats[j] - mats[j] @ mats[i],
                    f"A_{i + 1} and A_{j + 1} do not commute")
    done.append("commute")

    for j, amat in enumerate(mats):
        for k, img in enumerate(rep.images):
            ok, res = _close(amat @ img, img @ amat, tol)
            worst = max(worst, res)
            if not ok:
                return GaugeFailure(
                    "commute_rho", j + 1, amat @ img - img @ amat,
                    f"A_{j + 1} does not commute with rho(lambda_{k + 1})")
    done.append("commute_rho")

    for j, amat in enumerate(mats):
        lhs = _exp(amat)
        try:
            rhs = rep.inverse_image(torus.g + j, tol)
        except NotInvertible:
            return GaugeFailure(
                "exp", j + 1, None, f"rho(lambda_{torus.g + j + 1}) is singular")
        ok, res = _close(lhs, rhs, tol)
        worst = max(worst, res)
        if not ok:
            return GaugeFailure(
                "exp", j + 1, lhs - rhs, f"exp(A_{j + 1}) != rho(lambda_{torus.g + j + 1})^-1")
    done.append("exp")

    for idx, img in enumerate(rep.images):
        coords = torus.coordinates(idx, backend)
        lhs = _exp(_combo(coords, mats)) @ img
        rhs = evaluate(sigma, torus.alpha.images[idx], tol)
        ok, res = _close(lhs, rhs, tol)
        worst = max(worst, res)
        if not ok:
            return GaugeFailure(
                "lattice", idx + 1, lhs - rhs,
                f"gauge identity fails on lambda_{idx + 1}")
    done.append("lattice")

    if worst and tol is not None and worst > 0.1 * tol.eps:
        logger.warning(f"gauge residual {worst:.3g} is close to eps {tol.eps:.3g}")
    return GaugeCertificate(tuple(done), worst)


# ----------------------------------------------------------------
# characters (approximate)
# ----------------------------------------------------------------

def schottkyize_character(torus: TorusData, character: Representation, tol: Optional[Tolerance] = None) -> SchottkyResult:
    """Schottky-ize a rank-1 lattice character with the principal log.

    A_j = -log(chi(lambda_{g+j})) on the principal branch, so that
    exp(A_j) chi(lambda_{g+j}) = 1, and
    sigma(B_i) = exp(sum_j Z_ij A_j) chi(lambda_i).

    Raises DomainError if some chi(lambda) is zero (|chi| <= eps).
    """
    if character.rank != 1:
        raise ShapeMismatch(f"a character has rank 1, got {character.rank}")
    character = torus.check_rep(character).to_backend(APPROX)
    tol = DEFAULT_TOL if tol is None else tol
    values = [m[0, 0] for m in character.images]
    for idx, val in enumerate(values):
        if val.is_zero(tol):
            raise DomainError(f"chi(lambda_{idx + 1}) = {val} is zero")

    gvals = torus.g
    logs = [-principal_log(values[gvals + j], tol) for j in range(gvals)]
    gauge = SchottkyGauge(tuple(Matrix.column([a], APPROX) for a in logs), "approx")
    images = []
    for i in range(gvals):
        coords = torus.coordinates(i, APPROX)
        expo = ApproxComplex(0.0)
        for coef, a in zip(coords, logs):
            expo = expo + coef * a
        images.append(Matrix.column([approx_exp(expo) * values[i]], APPROX))
    sigma = Representation(free_abelian(gvals), 1, tuple(images))
    check = verify_gauge(torus, character, sigma, gauge, tol)
    if not check:
        raise InvariantBreach(f"character gauge fails its {check.check} identity: {check.message}")
    return SchottkyResult(sigma, gauge, check)


# ----------------------------------------------------------------
# flat bundles, pre-decomposed
# ----------------------------------------------------------------

@dataclass(frozen=True)
class FlatSumResult:
    """sigma and gauge for a direct sum of chi (x) rho components.

    Attributes
    ----------
    sigma: Representation
        Z^g rep on the approximate backend.
    gauge: SchottkyGauge
        Block diagonal gauge, a_j I + A_j on each component.
    rep: Representation
        The assembled lattice rep, direct sum of chi (x) rho.
    components: Tuple[SchottkyResult, ...]
        Character and unipotent results, alternating per component.
    certificate: GaugeCertificate
    """
    sigma: Representation
    gauge: SchottkyGauge
    rep: Representation
    components: Tuple[SchottkyResult, ...]
    certificate: GaugeCertificate


def schottkyize_flat_sum(
    torus: TorusData,
    components: Sequence[Tuple[Representation, Representation]],
    tol: Optional[Tolerance] = None,
) -> FlatSumResult:
    """sigma = sum over components of sigma_chi (x) sigma_rho.

    Each component is (chi, rho) with chi a rank-1 character and rho a
    unipotent lattice rep. With an exact period block the unipotent
    parts are computed exactly and lifted; with an approximate one
    they are computed with the finite series on floats.
    """
    if not components:
        raise ShapeMismatch("a flat sum needs at least one component")
    tol = DEFAULT_TOL if tol is None else tol
    sigma = rep = None
    blocks: List[List[Matrix]] = [[] for _ in range(torus.g)]
    parts = []
    for chi, urep in components:
        cres = schottkyize_character(torus, chi, tol)
        if torus.backend is EXACT and urep.backend is EXACT:
            ures = schottkyize_unipotent(torus, urep)
            ugauge = [m.to_backend(APPROX) for m in ures.gauge.matrices]
            usigma = ures.sigma.to_backend(APPROX)
        else:
            ures = _unipotent_core(torus, urep.to_backend(APPROX), tol)
            ugauge = list(ures.gauge.matrices)
            usigma = ures.sigma
        parts += [cres, ures]

        term_sigma = tensor(cres.sigma, usigma)
        term_rep = tensor(torus.check_rep(chi).to_backend(APPROX), urep.to_backend(APPROX).with_group(torus.lattice))
        ident = Matrix.identity(urep.rank, APPROX)
        for j in range(torus.g):
            blocks[j].append(ident * cres.gauge.matrices[j][0, 0] + ugauge[j])
        sigma = term_sigma if sigma is None else direct_sum(sigma, term_sigma)
        rep = term_rep if rep is None else direct_sum(rep, term_rep)

    mats = []
    for blist in blocks:
        total = blist[0]
        for blk in blist[1:]:
            total = linalg.direct_sum(total, blk)
        mats.append(total)
    gauge = SchottkyGauge(tuple(mats), "approx")
    check = verify_gauge(torus, rep, sigma, gauge, tol)
    if not check:
        raise InvariantBreach(f"flat-sum gauge fails its {check.check} identity: {check.message}")
    logger.debug(f"flat sum of {len(components)} components, rank {sigma.rank}")
    return FlatSumResult(sigma, gauge, rep, tuple(parts), check)


# ----------------------------------------------------------------
# Schottky predicates
# ----------------------------------------------------------------

def _kernel_images(rep: Representation, morphism: Morphism) -> List[Matrix]:
    if not rep.group.same_group(morphism.source):
        raise GroupMismatch(f"rep of {rep.group} is not over the source {morphism.source}")
    return [rep.images[i] for i in kernel_generators(morphism)]


def is_schottky_module(rep: Representation, morphism: Morphism, tol: Optional[Tolerance] = None) -> bool:
    """rho factors through alpha: every kernel generator maps to I."""
    return all(m.is_identity(tol) for m in _kernel_images(rep, morphism))


def is_principal_schottky(rep: Representation, morphism: Morphism, tol: Optional[Tolerance] = None) -> bool:
    """Kernel generators map into the center of GL_r (scalars)."""
    return all(m.is_scalar(tol) for m in _kernel_images(rep, morphism))


def ad_schottky_check(rep: Representation, morphism: Morphism, tol: Optional[Tolerance] = None) -> bool:
    """Ad rho factors through alpha."""
    return is_schottky_module(adjoint_rep(rep, tol), morphism, tol)
