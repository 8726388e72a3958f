#!/usr/bin/env python

"""
Scalars, exact linear algebra and polynomials.
"""

from schottkit.algebra.numerics import (
    GaussianRational, ApproxComplex, Tolerance, EXACT, APPROX,
    principal_log, approx_exp, get_backend, DEFAULT_EPS,
)
from schottkit.algebra.linalg import (
    Matrix, rank, rref, kernel_basis, span_basis, solve, inverse, det,
    kron, direct_sum, hstack, vstack, nilpotency_index, exp_nilpotent,
    log_unipotent, is_nilpotent,
)
