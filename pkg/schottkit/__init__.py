#!/usr/bin/env python

"""
Summary
-------
The schottkit module computes with unipotent and Schottky
representations of free, free abelian, lattice and surface groups
over the exact field Q(i). The schottkit.torus.TorusData class is
the primary interface for Schottky-izing lattice representations
of a complex torus.

Example
-------
>>> import schottkit
>>> torus = schottkit.TorusData.from_period(schottkit.Matrix.from_rows([["i"]]))
>>> rho = schottkit.Representation.from_images(
...     torus.lattice, [schottkit.Matrix.from_rows([[1, 1], [0, 1]])] * 2)
>>> result = torus.schottkyize(rho)
>>> print(result.sigma.images[0])
"""

__version__ = "0.1.0"
__author__ = "schottkit developers"

from schottkit.algebra.numerics import GaussianRational, ApproxComplex, Tolerance, EXACT, APPROX
from schottkit.algebra.linalg import Matrix
from schottkit.groups.presentations import (
    free_group, free_abelian, lattice, surface_group, alpha_torus, alpha_surface,
)
from schottkit.reps.representation import Representation, validate, trivial
from schottkit.cohomology.cocycles import Cocycle, h0, h1, ext1
from schottkit.torus import TorusData
from schottkit.utils import utils
from schottkit.utils.logger_setup import set_loglevel
set_loglevel("WARNING")
