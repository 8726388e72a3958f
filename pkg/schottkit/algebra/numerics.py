#!/usr/bin/env python

"""
Scalar backends for schottkit.

Two scalar types share one field-operations contract (the Python
arithmetic protocol: +, -, *, /, unary -, inv(), ==):

GaussianRational
    Exact elements of Q(i). Every core algorithm runs on these.
ApproxComplex
    Finite IEEE double complex numbers, used only where a
    transcendental logarithm is unavoidable (degree-zero line bundles).

Mixing the two backends in one operation raises BackendMismatch;
use ApproxComplex.from_exact() to lift exact values explicitly.
"""

from typing import Optional, Union
from dataclasses import dataclass
from fractions import Fraction
import math
import re

import numpy as np

from schottkit.utils.utils import (
    BackendMismatch, DivisionByZero, DomainError, ParseError,
)


DEFAULT_EPS = 1e-9

# text forms: "p", "p/q", "p/q+r/s*i", "r/s*i", "i", "-i", "1-i"
_RAT = r"\d+(?:/\d+)?"
EXACT_RE = re.compile(
    rf"^(?P<re>[+-]?{_RAT})?"
    rf"(?:(?P<isign>[+-])?(?:(?P<icoef>{_RAT})\*)?(?P<unit>i))?$"
)
_FLT = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
APPROX_RE = re.compile(
    rf"^(?P<re>[+-]?{_FLT})?"
    rf"(?:(?P<isign>[+-])?(?:(?P<icoef>{_FLT})\*)?(?P<unit>i))?$"
)


@dataclass(frozen=True)
class Tolerance:
    """Absolute tolerance used by the approximate backend."""
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not (math.isfinite(self.eps) and self.eps > 0):
            raise DomainError(f"tolerance must be finite and > 0, got {self.eps}")


DEFAULT_TOL = Tolerance()


def _tol(tol: Optional[Tolerance]) -> Tolerance:
    return DEFAULT_TOL if tol is None else tol


class GaussianRational:
    """An exact element re + im*i of Q(i).

    Both parts are stored as reduced Fractions (positive
    denominators), so equality and hashing are structural.

    Parameters
    ----------
    re: int, Fraction or str
        Real part. A str is parsed as a Fraction ("2/3").
    im: int, Fraction or str
        Imaginary part.
    """
    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # ---- construction ---------------------------------------------

    @classmethod
    def parse(cls, text: str) -> 'GaussianRational':
        """Parse the canonical text form, e.g. "1/2-3*i"."""
        text = str(text).strip().replace(" ", "")
        match = EXACT_RE.match(text)
        if not text or match is None:
            raise ParseError(f"malformed Gaussian rational: {text!r}")
        real, isign, icoef, unit = match.group("re", "isign", "icoef", "unit")
        if unit and real is not None and isign is None:
            raise ParseError(f"malformed Gaussian rational: {text!r}")
        try:
            rpart = Fraction(real) if real is not None else Fraction(0)
            ipart = Fraction(0)
            if unit:
                ipart = Fraction(icoef) if icoef is not None else Fraction(1)
                if isign == "-":
                    ipart = -ipart
        except ZeroDivisionError as inst:
            raise ParseError(f"zero denominator in {text!r}") from inst
        return cls(rpart, ipart)

    @classmethod
    def coerce(cls, value) -> 'GaussianRational':
        """Return value as a GaussianRational (ints, Fractions, text)."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls(value)
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, (ApproxComplex, float, complex)):
            raise BackendMismatch(
                f"cannot use approximate value {value!r} on the exact backend")
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianRational")

    # ---- protocol -------------------------------------------------

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        coef = abs(self.im)
        cstr = "" if coef == 1 else f"{coef}*"
        if not self.re:
            return f"{'-' if self.im < 0 else ''}{cstr}i"
        return f"{self.re}{'-' if self.im < 0 else '+'}{cstr}i"

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @staticmethod
    def _other(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        if isinstance(value, ApproxComplex):
            raise BackendMismatch("exact and approximate scalars cannot be mixed")
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        # real fast path, most matrices in practice are real
        if not self.im and not other.im:
            return GaussianRational(self.re * other.re)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inv()
        result = GaussianRational(1)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    # ---- field extras ---------------------------------------------

    def norm(self) -> Fraction:
        """Field norm re**2 + im**2."""
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> 'GaussianRational':
        return GaussianRational(self.re, -self.im)

    def inv(self, tol: Optional[Tolerance] = None) -> 'GaussianRational':
        """Multiplicative inverse, conj / norm. tol is unused (exact)."""
        if not self:
            raise DivisionByZero("inverse of exact zero")
        if not self.im:
            return GaussianRational(1 / self.re)
        nrm = self.norm()
        return GaussianRational(self.re / nrm, -self.im / nrm)

    def is_zero(self, tol: Optional[Tolerance] = None) -> bool:
        return not self

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))


class ApproxComplex:
    """A finite double-precision complex number.

    Results of every operation are checked for finiteness; NaN or
    infinity raise DomainError. Division treats divisors with
    magnitude below the default eps as zero.
    """
    __slots__ = ("re", "im")

    def __init__(self, re: float = 0.0, im: float = 0.0):
        re, im = float(re), float(im)
        if not (math.isfinite(re) and math.isfinite(im)):
            raise DomainError(f"non-finite approximate scalar ({re}, {im})")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("ApproxComplex is immutable")

    @classmethod
    def from_complex(cls, value: complex) -> 'ApproxComplex':
        value = complex(value)
        return cls(value.real, value.imag)

    @classmethod
    def from_exact(cls, value: GaussianRational) -> 'ApproxComplex':
        return cls(float(value.re), float(value.im))

    @classmethod
    def parse(cls, text: str) -> 'ApproxComplex':
        """Parse "1.5-2e-3*i"; exact rational text is accepted too."""
        text = str(text).strip().replace(" ", "")
        match = APPROX_RE.match(text)
        if text and match is not None:
            real, isign, icoef, unit = match.group("re", "isign", "icoef", "unit")
            if not (unit and real is not None and isign is None):
                ipart = 0.0
                if unit:
                    ipart = float(icoef) if icoef is not None else 1.0
                    if isign == "-":
                        ipart = -ipart
                return cls(float(real) if real is not None else 0.0, ipart)
        return cls.from_exact(GaussianRational.parse(text))

    @classmethod
    def coerce(cls, value) -> 'ApproxComplex':
        if isinstance(value, ApproxComplex):
            return value
        if isinstance(value, GaussianRational):
            raise BackendMismatch(
                f"cannot use exact value {value} on the approximate backend")
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, (int, float, Fraction)) and not isinstance(value, bool):
            return cls(float(value), 0.0)
        if isinstance(value, (complex, np.complexfloating, np.floating, np.integer)):
            return cls.from_complex(complex(value))
        raise TypeError(f"cannot convert {type(value).__name__} to ApproxComplex")

    def __repr__(self):
        return f"ApproxComplex({self})"

    def __str__(self):
        sign = "-" if math.copysign(1.0, self.im) < 0 else "+"
        return f"{self.re!r}{sign}{abs(self.im)!r}*i"

    def __hash__(self):
        return hash(complex(self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, ApproxComplex):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, float)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __abs__(self):
        return math.hypot(self.re, self.im)

    @staticmethod
    def _other(value):
        if isinstance(value, ApproxComplex):
            return value
        if isinstance(value, (int, float)):
            return ApproxComplex(value)
        if isinstance(value, GaussianRational):
            raise BackendMismatch("exact and approximate scalars cannot be mixed")
        return None

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return ApproxComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return ApproxComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return ApproxComplex.from_complex(self.to_complex() * other.to_complex())

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other * self.inv()

    def __neg__(self):
        return ApproxComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inv()
        return ApproxComplex.from_complex(base.to_complex() ** abs(exponent))

    def conjugate(self) -> 'ApproxComplex':
        return ApproxComplex(self.re, -self.im)

    def inv(self, tol: Optional[Tolerance] = None) -> 'ApproxComplex':
        if abs(self) <= _tol(tol).eps:
            raise DivisionByZero(f"inverse of {self} (magnitude below eps)")
        return ApproxComplex.from_complex(1 / self.to_complex())

    def divide(self, other, tol: Optional[Tolerance] = None) -> 'ApproxComplex':
        """self / other, treating |other| <= tol.eps as zero."""
        return self * ApproxComplex.coerce(other).inv(tol)

    def is_zero(self, tol: Optional[Tolerance] = None) -> bool:
        return abs(self) <= _tol(tol).eps

    def close(self, other, tol: Optional[Tolerance] = None) -> bool:
        """True if |self - other| <= eps."""
        return abs(self - ApproxComplex.coerce(other)) <= _tol(tol).eps


Scalar = Union[GaussianRational, ApproxComplex]


# ----------------------------------------------------------------
# backend descriptors used by Matrix
# ----------------------------------------------------------------

class Backend:
    """Describes one scalar backend: constants, coercion, zero test."""
    name: str = ""
    scalar_type: type = object

    def __repr__(self):
        return f"Backend({self.name})"

    def coerce(self, value) -> Scalar:
        return self.scalar_type.coerce(value)

    def parse(self, text: str) -> Scalar:
        return self.scalar_type.parse(text)

    def zero(self) -> Scalar:
        return self.scalar_type(0)

    def one(self) -> Scalar:
        return self.scalar_type(1)

    def is_zero(self, value: Scalar, tol: Optional[Tolerance] = None) -> bool:
        return value.is_zero(tol)


class ExactBackend(Backend):
    name = "exact"
    scalar_type = GaussianRational


class ApproxBackend(Backend):
    name = "approx"
    scalar_type = ApproxComplex


EXACT = ExactBackend()
APPROX = ApproxBackend()
BACKENDS = {"exact": EXACT, "approx": APPROX}


def get_backend(name: Union[str, Backend]) -> Backend:
    """Return the backend named 'exact' or 'approx'."""
    if isinstance(name, Backend):
        return name
    try:
        return BACKENDS[str(name).lower()]
    except KeyError as inst:
        raise ParseError(f"unknown backend {name!r}; use 'exact' or 'approx'") from inst


def backend_of(value) -> Backend:
    """Infer the backend of a scalar (ints and Fractions are exact)."""
    if isinstance(value, ApproxComplex):
        return APPROX
    if isinstance(value, (float, complex)):
        return APPROX
    return EXACT


def principal_log(value: Union[ApproxComplex, complex], tol: Optional[Tolerance] = None) -> ApproxComplex:
    """Principal branch of the complex logarithm.

    The imaginary part of the result lies in (-pi, pi]. A negative
    zero imaginary part is read as +0 so that -1 maps to i*pi.

    Raises DomainError if |value| <= eps.
    """
    value = ApproxComplex.coerce(value)
    if abs(value) <= _tol(tol).eps:
        raise DomainError(f"logarithm of {value}: magnitude below eps")
    logz = np.log(complex(value.re, value.im + 0.0))
    return ApproxComplex(logz.real, logz.imag)


def approx_exp(value: Union[ApproxComplex, complex]) -> ApproxComplex:
    """Complex exponential on the approximate backend."""
    value = ApproxComplex.coerce(value)
    return ApproxComplex.from_complex(np.exp(value.to_complex()))
