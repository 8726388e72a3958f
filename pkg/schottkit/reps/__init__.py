#!/usr/bin/env python

"""
Representations of free, free abelian, lattice and surface groups.
"""

from schottkit.reps.representation import (
    Representation, validate, evaluate, trivial, direct_sum, tensor,
    dual, hom_rep, conjugate, is_scalar_rep, pullback, adjoint_rep,
)
from schottkit.reps.kolchin import (
    UnipotenceCertificate, NotUnipotentWitness, PeelResult,
    unipotence_flag, is_unipotent, ad_unipotent_check, peel, fixed_space,
)
from schottkit.reps.intertwiners import intertwiners, is_isomorphic
from schottkit.reps.jordan import JordanPair, jordan_decompose
