#!/usr/bin/env python

"""
Dense linear algebra over a scalar backend.

Matrix is an immutable row-major container of scalars from a single
backend. The module functions implement Gaussian elimination with
the first-nonzero pivot rule (exact backend), which makes reduced
echelon forms, and therefore kernel bases, canonical. The nilpotent
exponential and unipotent logarithm are finite series and exact over
Q(i).
"""

from typing import Iterable, List, Optional, Sequence, Tuple
from fractions import Fraction
from math import factorial
import itertools

import numpy as np
from scipy.linalg import expm
from loguru import logger

from schottkit.algebra.numerics import (
    APPROX, EXACT, ApproxComplex, Backend, GaussianRational, Scalar,
    Tolerance, backend_of,
)
from schottkit.utils.utils import (
    BackendMismatch, NotNilpotent, NotUnipotent, ShapeMismatch,
)


class Matrix:
    """Immutable dense matrix over one scalar backend.

    Parameters
    ----------
    rows: int
        Number of rows.
    cols: int
        Number of columns.
    entries: Iterable
        Row-major entries, rows * cols of them. Ints, Fractions and
        text are coerced into the backend's scalar type.
    backend: Backend
        EXACT or APPROX. If None it is inferred from the entries
        (exact unless an approximate scalar is present).
    """
    __slots__ = ("rows", "cols", "entries", "backend")

    def __init__(self, rows: int, cols: int, entries: Iterable, backend: Optional[Backend] = None):
        entries = tuple(entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ShapeMismatch(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}")
        if backend is None:
            backends = {
                backend_of(i) for i in entries
                if isinstance(i, (GaussianRational, ApproxComplex, float, complex))
            }
            if len(backends) > 1:
                raise BackendMismatch("matrix entries mix exact and approximate scalars")
            backend = backends.pop() if backends else EXACT
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "entries", tuple(backend.coerce(i) for i in entries))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # ---- constructors ---------------------------------------------

    @classmethod
    def _raw(cls, rows: int, cols: int, entries: tuple, backend: Backend) -> 'Matrix':
        """Build without coercion; entries must already be backend scalars."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "rows", rows)
        object.__setattr__(obj, "cols", cols)
        object.__setattr__(obj, "backend", backend)
        object.__setattr__(obj, "entries", entries)
        return obj

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], backend: Optional[Backend] = None) -> 'Matrix':
        """Matrix from a list of rows, e.g. [[1, 1], [0, 1]]."""
        rows = [list(i) for i in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(i) != ncols for i in rows):
            raise ShapeMismatch("ragged rows")
        return cls(len(rows), ncols, itertools.chain.from_iterable(rows), backend)

    @classmethod
    def column(cls, values: Sequence, backend: Optional[Backend] = None) -> 'Matrix':
        """Column vector from a flat sequence."""
        values = list(values)
        return cls(len(values), 1, values, backend)

    @classmethod
    def identity(cls, size: int, backend: Backend = EXACT) -> 'Matrix':
        one, zero = backend.one(), backend.zero()
        return cls._raw(size, size, tuple(
            one if i == j else zero for i in range(size) for j in range(size)
        ), backend)

    @classmethod
    def zeros(cls, rows: int, cols: int, backend: Backend = EXACT) -> 'Matrix':
        return cls._raw(rows, cols, (backend.zero(),) * (rows * cols), backend)

    @classmethod
    def scalar(cls, value, size: int, backend: Optional[Backend] = None) -> 'Matrix':
        """value * I_size."""
        backend = backend if backend is not None else backend_of(value)
        value = backend.coerce(value)
        zero = backend.zero()
        return cls._raw(size, size, tuple(
            value if i == j else zero for i in range(size) for j in range(size)
        ), backend)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> 'Matrix':
        """Approximate-backend matrix from a numpy array."""
        arr = np.atleast_2d(np.asarray(arr, dtype=np.complex128))
        return cls._raw(arr.shape[0], arr.shape[1], tuple(
            ApproxComplex(i.real, i.imag) for i in arr.ravel()
        ), APPROX)

    # ---- access ---------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx: Tuple[int, int]) -> Scalar:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {idx} out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> List[List[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def col(self, j: int) -> 'Matrix':
        return Matrix._raw(self.rows, 1, self.entries[j::self.cols] if self.cols else (), self.backend)

    def columns(self) -> List['Matrix']:
        return [self.col(j) for j in range(self.cols)]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> 'Matrix':
        """Rows r0:r1 and columns c0:c1."""
        return Matrix._raw(r1 - r0, c1 - c0, tuple(
            self.entries[i * self.cols + j] for i in range(r0, r1) for j in range(c0, c1)
        ), self.backend)

    def flat(self) -> Tuple[Scalar, ...]:
        """Entries of a vector (row or column) as a flat tuple."""
        return self.entries

    @property
    def T(self) -> 'Matrix':
        return Matrix._raw(self.cols, self.rows, tuple(
            self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)
        ), self.backend)

    def to_array(self) -> np.ndarray:
        """Complex128 numpy copy (both backends)."""
        return np.array(
            [i.to_complex() for i in self.entries], dtype=np.complex128
        ).reshape(self.rows, self.cols)

    def to_backend(self, backend: Backend) -> 'Matrix':
        """Lift exact entries to the approximate backend (or no-op)."""
        if backend is self.backend:
            return self
        if backend is APPROX:
            return Matrix._raw(self.rows, self.cols, tuple(
                ApproxComplex.from_exact(i) for i in self.entries
            ), APPROX)
        raise BackendMismatch("approximate matrices cannot be made exact")

    # ---- protocol -------------------------------------------------

    def __repr__(self):
        return f"Matrix({self.tolist_str()})"

    def __str__(self):
        return "\n".join(
            "[" + ", ".join(str(j) for j in self.row(i)) + "]" for i in range(self.rows)
        )

    def tolist_str(self) -> List[List[str]]:
        """Nested lists of scalar strings (the JSON text form)."""
        return [[str(j) for j in self.row(i)] for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.backend is other.backend
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.backend.name, self.entries))

    def _check(self, other: 'Matrix'):
        if self.backend is not other.backend:
            raise BackendMismatch("exact and approximate matrices cannot be mixed")

    def __add__(self, other: 'Matrix') -> 'Matrix':
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(self.rows, self.cols, tuple(
            i + j for i, j in zip(self.entries, other.entries)
        ), self.backend)

    def __sub__(self, other: 'Matrix') -> 'Matrix':
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._raw(self.rows, self.cols, tuple(
            i - j for i, j in zip(self.entries, other.entries)
        ), self.backend)

    def __neg__(self) -> 'Matrix':
        return Matrix._raw(self.rows, self.cols, tuple(-i for i in self.entries), self.backend)

    def __matmul__(self, other: 'Matrix') -> 'Matrix':
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.backend.zero()
        ocols = [other.entries[j::other.cols] for j in range(other.cols)] if other.cols else []
        out = []
        for i in range(self.rows):
            row = self.row(i)
            for col in ocols:
                acc = zero
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
        return Matrix._raw(self.rows, other.cols, tuple(out), self.backend)

    def __mul__(self, value) -> 'Matrix':
        """Scalar multiplication (use @ for matrix products)."""
        if isinstance(value, Matrix):
            return NotImplemented
        value = self.backend.coerce(value)
        return Matrix._raw(self.rows, self.cols, tuple(
            i * value for i in self.entries
        ), self.backend)

    __rmul__ = __mul__

    # ---- predicates -----------------------------------------------

    def is_zero(self, tol: Optional[Tolerance] = None) -> bool:
        return all(i.is_zero(tol) for i in self.entries)

    def is_identity(self, tol: Optional[Tolerance] = None) -> bool:
        return self.is_square and (self - Matrix.identity(self.rows, self.backend)).is_zero(tol)

    def scalar_value(self, tol: Optional[Tolerance] = None) -> Optional[Scalar]:
        """Return c if self == c * I, else None."""
        if not self.is_square:
            return None
        if not self.rows:
            return self.backend.one()
        value = self.entries[0]
        if (self - Matrix.scalar(value, self.rows, self.backend)).is_zero(tol):
            return value
        return None

    def is_scalar(self, tol: Optional[Tolerance] = None) -> bool:
        return self.scalar_value(tol) is not None

    def is_upper_unitriangular(self) -> bool:
        """Ones on the diagonal and zeros below it, exactly."""
        one = self.backend.one()
        for i in range(self.rows):
            for j in range(min(i + 1, self.cols)):
                val = self.entries[i * self.cols + j]
                if (i == j and val != one) or (i != j and val):
                    return False
        return True

    def trace(self) -> Scalar:
        acc = self.backend.zero()
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.entries[i * self.cols + i]
        return acc

    def power(self, exponent: int) -> 'Matrix':
        """Nonnegative integer power by repeated squaring."""
        if not self.is_square:
            raise ShapeMismatch("power of a non-square matrix")
        if exponent < 0:
            raise ValueError("use inverse() for negative powers")
        result = Matrix.identity(self.rows, self.backend)
        base = self
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result


# ----------------------------------------------------------------
# elimination kernels
# ----------------------------------------------------------------

def _rref_rows(rows: List[list], ncols: int, backend: Backend, tol: Optional[Tolerance] = None):
    """In-place reduced row echelon form of a list of rows.

    Exact backend: the pivot is the first nonzero entry at or below
    the current row. Approximate backend: largest magnitude pivot,
    entries below eps count as zero.
    """
    pivots = []
    prow = 0
    nrows = len(rows)
    approx = backend is APPROX
    for col in range(ncols):
        if prow >= nrows:
            break
        if approx:
            best = max(range(prow, nrows), key=lambda r: abs(rows[r][col]))
            sel = None if rows[best][col].is_zero(tol) else best
        else:
            sel = next((r for r in range(prow, nrows) if rows[r][col]), None)
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        piv = rows[prow]
        inv = piv[col].inv(tol)
        rows[prow] = piv = [i * inv if i else i for i in piv]
        for r in range(nrows):
            if r == prow:
                continue
            factor = rows[r][col]
            if factor.is_zero(tol) if approx else not factor:
                continue
            rows[r] = [
                a - factor * b if b else a for a, b in zip(rows[r], piv)
            ]
        pivots.append(col)
        prow += 1
    return rows, pivots


def rref(mat: Matrix, tol: Optional[Tolerance] = None) -> Tuple[Matrix, Tuple[int, ...]]:
    """Return (reduced row echelon form, pivot columns)."""
    rows, pivots = _rref_rows(mat.tolist(), mat.cols, mat.backend, tol)
    return Matrix._raw(
        mat.rows, mat.cols, tuple(itertools.chain.from_iterable(rows)), mat.backend
    ), tuple(pivots)


def rank(mat: Matrix, tol: Optional[Tolerance] = None) -> int:
    """Rank by exact elimination."""
    return len(_rref_rows(mat.tolist(), mat.cols, mat.backend, tol)[1])


def span_basis(vectors: Sequence[Matrix], size: Optional[int] = None, tol: Optional[Tolerance] = None) -> List[Matrix]:
    """Canonical basis of the span of column vectors.

    The basis is the list of nonzero rows of the reduced row echelon
    form of the vectors stacked as rows, so equal subspaces give
    structurally equal bases.
    """
    if not vectors:
        return []
    backend = vectors[0].backend
    size = vectors[0].rows if size is None else size
    rows = [list(v.flat()) for v in vectors]
    rows, pivots = _rref_rows(rows, size, backend, tol)
    return [Matrix._raw(size, 1, tuple(rows[i]), backend) for i in range(len(pivots))]


def kernel_basis(mat: Matrix, tol: Optional[Tolerance] = None) -> List[Matrix]:
    """Canonical basis of the right null space as column vectors.

    Example
    -------
    >>> kernel_basis(Matrix.from_rows([[0, 1], [0, 0]]))
    [column (1, 0)]
    """
    rows, pivots = _rref_rows(mat.tolist(), mat.cols, mat.backend, tol)
    free = [j for j in range(mat.cols) if j not in pivots]
    zero, one = mat.backend.zero(), mat.backend.one()
    basis = []
    for fcol in free:
        vec = [zero] * mat.cols
        vec[fcol] = one
        for ridx, pcol in enumerate(pivots):
            val = rows[ridx][fcol]
            if val:
                vec[pcol] = -val
        basis.append(Matrix._raw(mat.cols, 1, tuple(vec), mat.backend))
    return span_basis(basis, mat.cols, tol)


def solve(mat: Matrix, rhs: Matrix, tol: Optional[Tolerance] = None) -> Optional[Matrix]:
    """A particular solution X of mat @ X = rhs, or None.

    Free variables are set to zero, so the answer is deterministic.
    rhs may hold several columns.
    """
    if mat.rows != rhs.rows:
        raise ShapeMismatch(f"cannot solve {mat.shape} system with rhs {rhs.shape}")
    mat._check(rhs)
    aug = [list(mat.row(i)) + list(rhs.row(i)) for i in range(mat.rows)]
    rows, pivots = _rref_rows(aug, mat.cols + rhs.cols, mat.backend, tol)
    if any(p >= mat.cols for p in pivots):
        return None
    zero = mat.backend.zero()
    sol = [[zero] * rhs.cols for _ in range(mat.cols)]
    for ridx, pcol in enumerate(pivots):
        sol[pcol] = rows[ridx][mat.cols:]
    return Matrix._raw(mat.cols, rhs.cols, tuple(itertools.chain.from_iterable(sol)), mat.backend)


def inverse(mat: Matrix, tol: Optional[Tolerance] = None) -> Optional[Matrix]:
    """Inverse of a square full-rank matrix, else None."""
    if not mat.is_square:
        return None
    size = mat.rows
    one, zero = mat.backend.one(), mat.backend.zero()
    aug = [
        list(mat.row(i)) + [one if i == j else zero for j in range(size)]
        for i in range(size)
    ]
    rows, pivots = _rref_rows(aug, 2 * size, mat.backend, tol)
    if tuple(pivots[:size]) != tuple(range(size)):
        return None
    return Matrix._raw(size, size, tuple(
        itertools.chain.from_iterable(r[size:] for r in rows)
    ), mat.backend)


def det(mat: Matrix) -> Scalar:
    """Determinant by Gaussian elimination (first nonzero pivot)."""
    if not mat.is_square:
        raise ShapeMismatch("determinant of a non-square matrix")
    rows = mat.tolist()
    size = mat.rows
    result = mat.backend.one()
    for col in range(size):
        sel = next((r for r in range(col, size) if rows[r][col]), None)
        if sel is None:
            return mat.backend.zero()
        if sel != col:
            rows[col], rows[sel] = rows[sel], rows[col]
            result = -result
        piv = rows[col][col]
        result = result * piv
        inv = piv.inv()
        for r in range(col + 1, size):
            factor = rows[r][col] * inv
            if factor:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return result


def hstack(mats: Sequence[Matrix]) -> Matrix:
    """Concatenate matrices with equal row counts side by side."""
    if len({m.rows for m in mats}) > 1:
        raise ShapeMismatch("hstack needs equal row counts")
    backend = mats[0].backend
    rows = mats[0].rows
    return Matrix._raw(rows, sum(m.cols for m in mats), tuple(
        itertools.chain.from_iterable(
            itertools.chain.from_iterable(m.row(i) for m in mats) for i in range(rows)
        )
    ), backend)


def vstack(mats: Sequence[Matrix]) -> Matrix:
    """Stack matrices with equal column counts vertically."""
    if len({m.cols for m in mats}) > 1:
        raise ShapeMismatch("vstack needs equal column counts")
    backend = mats[0].backend
    return Matrix._raw(sum(m.rows for m in mats), mats[0].cols, tuple(
        itertools.chain.from_iterable(m.entries for m in mats)
    ), backend)


def kron(amat: Matrix, bmat: Matrix) -> Matrix:
    """Kronecker product, (A kron B)[i*rB + k, j*cB + l] = A[i,j] * B[k,l]."""
    amat._check(bmat)
    rows, cols = amat.rows * bmat.rows, amat.cols * bmat.cols
    zero = amat.backend.zero()
    out = [zero] * (rows * cols)
    for i in range(amat.rows):
        for j in range(amat.cols):
            aval = amat.entries[i * amat.cols + j]
            if not aval:
                continue
            for k in range(bmat.rows):
                base = (i * bmat.rows + k) * cols + j * bmat.cols
                for l in range(bmat.cols):
                    bval = bmat.entries[k * bmat.cols + l]
                    if bval:
                        out[base + l] = aval * bval
    return Matrix._raw(rows, cols, tuple(out), amat.backend)


def direct_sum(amat: Matrix, bmat: Matrix) -> Matrix:
    """Block diagonal matrix diag(A, B)."""
    amat._check(bmat)
    zero = amat.backend.zero()
    rows, cols = amat.rows + bmat.rows, amat.cols + bmat.cols
    out = []
    for i in range(amat.rows):
        out.extend(amat.row(i))
        out.extend([zero] * bmat.cols)
    for i in range(bmat.rows):
        out.extend([zero] * amat.cols)
        out.extend(bmat.row(i))
    return Matrix._raw(rows, cols, tuple(out), amat.backend)


# ----------------------------------------------------------------
# nilpotent and unipotent kernels
# ----------------------------------------------------------------

def nilpotency_index(nmat: Matrix, tol: Optional[Tolerance] = None) -> int:
    """Smallest n >= 0 with N**n == 0.

    Nilpotency is first decided by ceil(log2 r) squarings, bounding
    the cost, then the index is found by successive powers.

    Raises NotNilpotent with the nonzero power as witness.
    """
    if not nmat.is_square:
        raise ShapeMismatch("nilpotency of a non-square matrix")
    size = nmat.rows
    if size == 0:
        return 0
    squared = nmat
    for _ in range(max(0, (size - 1).bit_length())):
        squared = squared @ squared
    if not squared.is_zero(tol):
        raise NotNilpotent(f"N**{2 ** max(0, (size - 1).bit_length())} != 0", witness=squared)
    power = nmat
    index = 1
    while not power.is_zero(tol):
        power = power @ nmat
        index += 1
    return index


def is_nilpotent(nmat: Matrix, tol: Optional[Tolerance] = None) -> bool:
    try:
        nilpotency_index(nmat, tol)
    except NotNilpotent:
        return False
    return True


def exp_nilpotent(nmat: Matrix, tol: Optional[Tolerance] = None) -> Matrix:
    """Finite series exp(N) = sum_{k<n} N**k / k! for nilpotent N."""
    index = nilpotency_index(nmat, tol)
    result = Matrix.identity(nmat.rows, nmat.backend)
    term = Matrix.identity(nmat.rows, nmat.backend)
    for k in range(1, index):
        term = term @ nmat
        result = result + term * _rational(Fraction(1, factorial(k)), nmat.backend)
    return result


def log_unipotent(umat: Matrix, tol: Optional[Tolerance] = None) -> Matrix:
    """Finite series log(U) = sum_{k>=1} (-1)**(k+1) (U - I)**k / k.

    Raises NotUnipotent if U - I is not nilpotent.
    """
    if not umat.is_square:
        raise ShapeMismatch("logarithm of a non-square matrix")
    nmat = umat - Matrix.identity(umat.rows, umat.backend)
    try:
        index = nilpotency_index(nmat, tol)
    except NotNilpotent as inst:
        raise NotUnipotent("U - I is not nilpotent", witness=inst.witness) from inst
    result = Matrix.zeros(umat.rows, umat.rows, umat.backend)
    term = Matrix.identity(umat.rows, umat.backend)
    for k in range(1, index):
        term = term @ nmat
        sign = 1 if k % 2 else -1
        result = result + term * _rational(Fraction(sign, k), umat.backend)
    return result


def _rational(value: Fraction, backend: Backend) -> Scalar:
    if backend is EXACT:
        return GaussianRational(value)
    return ApproxComplex(float(value))


def expm_approx(mat: Matrix) -> Matrix:
    """General matrix exponential on the approximate backend (scipy)."""
    arr = mat.to_array()
    logger.debug(f"expm on {mat.rows}x{mat.cols} approximate matrix")
    return Matrix.from_array(expm(arr) if arr.size else arr)


def max_abs_diff(amat: Matrix, bmat: Matrix) -> float:
    """Largest entrywise |A - B| (works across backends)."""
    if amat.shape != bmat.shape:
        raise ShapeMismatch(f"cannot compare {amat.shape} and {bmat.shape}")
    if not amat.entries:
        return 0.0
    return float(np.max(np.abs(amat.to_array() - bmat.to_array())))
