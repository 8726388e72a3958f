#!/usr/bin/env python

import numpy as np
import pytest

from schottkit.algebra.numerics import APPROX, ApproxComplex, GaussianRational, Tolerance
from schottkit.algebra.linalg import Matrix
from schottkit.groups.presentations import free_abelian
from schottkit.reps.representation import Representation, pullback, trivial, validate
from schottkit.torus import (
    SchottkyGauge, TorusData, gauged_rep, is_principal_schottky,
    is_schottky_module, ad_schottky_check, schottkyize_character,
    schottkyize_flat_sum, schottkyize_unipotent, verify_gauge,
)
from schottkit.utils.utils import (
    BackendMismatch, DomainError, GroupMismatch, NotUnipotent,
)
from schottkit.utils.randgen import random_unipotent_rep


I_PERIOD = Matrix.from_rows([["i"]])


def _char(torus, *values):
    return Representation(torus.lattice, 1, tuple(
        Matrix(1, 1, [ApproxComplex.from_complex(v)], APPROX) for v in values
    ))


@pytest.fixture
def torus():
    return TorusData.from_period(I_PERIOD)


@pytest.fixture
def worked(torus, jblock):
    return Representation(torus.lattice, 2, (jblock, jblock))


def test_worked_example(torus, worked):
    result = schottkyize_unipotent(torus, worked)
    assert result.gauge.matrices == (Matrix.from_rows([[0, -1], [0, 0]]),)
    assert result.sigma.images == (Matrix.from_rows([[1, "1-i"], [0, 1]]),)
    assert result.sigma.group.same_group(free_abelian(1))
    assert result.certificate
    assert result.certificate.checks == ("shape", "nilpotent", "commute", "commute_rho", "exp", "lattice")
    gauged = gauged_rep(torus, worked, result.gauge)
    assert gauged.images[1] == Matrix.identity(2)


def test_trivial_rep(torus):
    rep = trivial(torus.lattice, 3)
    result = torus.schottkyize(rep)
    assert result.gauge.is_zero()
    assert result.sigma.images == trivial(free_abelian(1), 3).images


def test_idempotent_on_pullbacks(rng):
    for trial in range(20):
        g = 1 + trial % 3
        torus = TorusData.from_period(Matrix.identity(g) * GaussianRational(0, 1 + trial % 2))
        tau = random_unipotent_rep(rng, free_abelian(g), 1 + trial % 3, bound=3)
        result = schottkyize_unipotent(torus, pullback(tau, torus.alpha))
        assert result.gauge.is_zero()
        assert result.sigma.images == tau.images


def test_unipotent_errors(torus, jblock):
    scaled = Representation(torus.lattice, 2, (Matrix.scalar(2, 2), jblock))
    with pytest.raises(NotUnipotent):
        schottkyize_unipotent(torus, scaled)
    with pytest.raises(BackendMismatch):
        schottkyize_unipotent(torus, Representation(
            torus.lattice, 2, (jblock.to_backend(APPROX),) * 2))
    with pytest.raises(GroupMismatch):
        schottkyize_unipotent(torus, trivial(free_abelian(2), 2))


def test_tampered_gauge_fails_exp_check(torus, worked):
    result = schottkyize_unipotent(torus, worked)
    bumped = SchottkyGauge((result.gauge.matrices[0] + Matrix.from_rows([[0, 1], [0, 0]]),))
    failure = verify_gauge(torus, worked, result.sigma, bumped)
    assert not failure
    assert failure.check == "exp"
    assert failure.index == 1
    assert not failure.residual.is_zero()


def test_singular_lattice_image_fails_exp_check(torus):
    singular = Representation(torus.lattice, 2, (Matrix.identity(2), Matrix.from_rows([[1, 0], [0, 0]])))
    gauge = SchottkyGauge((Matrix.zeros(2, 2),))
    failure = verify_gauge(torus, singular, trivial(free_abelian(1), 2), gauge)
    assert not failure
    assert failure.check == "exp"
    assert failure.index == 1
    assert failure.residual is None


def test_trivial_gauge_verifies(torus):
    rep = trivial(torus.lattice, 2)
    gauge = SchottkyGauge((Matrix.zeros(2, 2),))
    assert verify_gauge(torus, rep, trivial(free_abelian(1), 2), gauge)


def test_wrong_sigma_fails_lattice_check(torus, worked, jblock):
    result = schottkyize_unipotent(torus, worked)
    wrong = Representation(free_abelian(1), 2, (jblock,))
    failure = verify_gauge(torus, worked, wrong, result.gauge)
    assert not failure
    assert failure.check == "lattice"


def test_character_principal_branch(torus):
    cval = 0.5 + 0.25j
    result = schottkyize_character(torus, _char(torus, cval, -1.0))
    assert abs(result.gauge.matrices[0][0, 0].to_complex() - (-1j * np.pi)) < 1e-12
    sigma = result.sigma.images[0][0, 0].to_complex()
    expected = np.exp(np.pi) * cval
    assert abs(sigma - expected) <= 1e-9 * abs(expected)


def test_character_already_schottky(torus):
    result = schottkyize_character(torus, _char(torus, 3 - 2j, 1.0))
    assert result.gauge.is_zero(Tolerance())
    assert abs(result.sigma.images[0][0, 0].to_complex() - (3 - 2j)) < 1e-12


def test_character_from_exact_input(torus):
    rep = Representation(torus.lattice, 1, (Matrix.from_rows([[2]]), Matrix.from_rows([[1]])))
    result = torus.schottkyize(rep)
    assert result.sigma.backend is APPROX
    assert abs(result.sigma.images[0][0, 0].to_complex() - 2) < 1e-12


def test_character_zero_value(torus):
    with pytest.raises(DomainError):
        schottkyize_character(torus, _char(torus, 0.0, 1.0))


def test_flat_sum_worked_example(torus, worked):
    chi = trivial(torus.lattice, 1)
    result = schottkyize_flat_sum(torus, [(chi, worked)])
    got = result.sigma.images[0].to_array()
    assert np.allclose(got, np.array([[1, 1 - 1j], [0, 1]]), atol=1e-12)
    assert result.certificate


def test_flat_sum_two_components(torus, worked):
    components = [(_char(torus, 2.0, -1.0), worked), (trivial(torus.lattice, 1), trivial(torus.lattice, 1))]
    result = torus.schottkyize(components)
    assert result.sigma.rank == 3
    sigma = result.sigma.images[0].to_array()
    assert np.allclose(sigma[2:, :2], 0) and np.allclose(sigma[:2, 2:], 0)
    gauged = gauged_rep(torus, result.rep, result.gauge)
    assert np.allclose(gauged.images[1].to_array(), np.eye(3), atol=1e-9)


def test_schottky_predicates(torus, worked, jblock):
    alpha = torus.alpha
    tau = Representation(free_abelian(1), 2, (jblock,))
    pulled = pullback(tau, alpha)
    assert is_schottky_module(pulled, alpha)
    assert is_principal_schottky(pulled, alpha)
    assert not is_schottky_module(worked, alpha)
    assert not is_principal_schottky(worked, alpha)
    assert not ad_schottky_check(worked, alpha)

    twisted = validate(Representation(torus.lattice, 2, (jblock, Matrix.scalar(2, 2))))
    assert not is_schottky_module(twisted, alpha)
    assert is_principal_schottky(twisted, alpha)
    assert ad_schottky_check(twisted, alpha)

    ident = trivial(torus.lattice, 2)
    assert is_schottky_module(ident, alpha) and ad_schottky_check(ident, alpha)
