"""Exact biquaternion arithmetic in the 2x2 complex-matrix realization.

Scalars are Gaussian rationals ``re + im*i`` backed by :class:`gmpy2.mpq`.
The quaternion units are embedded as

    e0 -> identity,   e_k -> -i * sigma_k   (Pauli matrices),

which gives the entry dictionary

    z11 = c0 - i c3,   z12 = -c2 - i c1,
    z21 = c2 - i c1,   z22 = c0 + i c3,

so that the quadratic norm ``c0^2 + c1^2 + c2^2 + c3^2`` is the determinant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from gmpy2 import mpq

__all__ = [
    "GaussianRational",
    "Biquaternion",
    "EBasisCoords",
    "NonInvertible",
    "gr",
    "I",
    "E0",
    "E1",
    "E2",
    "E3",
    "E_UNITS",
    "mul",
    "conj_plus",
    "norm",
    "invert",
    "bar",
    "coords_to_matrix",
    "matrix_to_coords",
    "from_coords",
]

_Q0 = mpq(0)
_Q1 = mpq(1)


class NonInvertible(ArithmeticError):
    """Raised when inverting a biquaternion on the null cone N(Z) = 0."""


def _new(re_: mpq, im_: mpq) -> "GaussianRational":
    obj = object.__new__(GaussianRational)
    obj.re = re_
    obj.im = im_
    return obj


def _coerce(x):
    if type(x) is GaussianRational:
        return x
    if isinstance(x, (int, Fraction)) or type(x) is type(_Q0):
        return _new(mpq(x), _Q0)
    return NotImplemented


class GaussianRational:
    """An exact element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re_=0, im_=0):
        if isinstance(re_, str):
            g = GaussianRational.parse(re_)
            re_, im_ = g.re, g.im
        self.re = mpq(re_)
        self.im = mpq(im_)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _new(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _new(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _new(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        if type(other) is not GaussianRational:
            other = _coerce(other)
            if other is NotImplemented:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return _new(a * c, _Q0)
            return _new(a * c, a * d)
        if not d:
            return _new(a * c, b * c)
        return _new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        den = other.re * other.re + other.im * other.im
        if not den:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b, c, d = self.re, self.im, other.re, other.im
        return _new((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return _new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (_new(_Q1, _Q0) / self) ** (-k)
        out = _new(_Q1, _Q0)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return _new(self.re, -self.im)

    def abs2(self) -> mpq:
        return self.re * self.re + self.im * self.im

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(Fraction(int(self.re.numerator), int(self.re.denominator)))
        return hash((int(self.re.numerator), int(self.re.denominator),
                     int(self.im.numerator), int(self.im.denominator)))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    # -- text forms ---------------------------------------------------------
    def __str__(self):
        if not self.im:
            return _qstr(self.re)
        if not self.re:
            return f"{_qstr(self.im)}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{_qstr(self.re)}{sign}{_qstr(abs(self.im))}*i"

    def __repr__(self):
        return f"GaussianRational('{self}')"

    _PATTERN = re.compile(
        r"^\s*(?:(?P<re>[+-]?\d+(?:/\d+)?)(?![\d/]*\*i))?"
        r"\s*(?:(?P<im>[+-]?\s*\d+(?:/\d+)?)\*i)?\s*$"
    )

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Inverse of ``str``: accepts ``"p/q"``, ``"p/q*i"`` and ``"p/q+r/s*i"``."""
        m = cls._PATTERN.match(text)
        if not m or (m.group("re") is None and m.group("im") is None):
            raise ValueError(f"not a Gaussian rational: {text!r}")
        re_ = mpq(m.group("re").lstrip("+")) if m.group("re") else _Q0
        im_ = mpq(m.group("im").replace(" ", "").lstrip("+")) if m.group("im") else _Q0
        return _new(re_, im_)


def _qstr(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def gr(re_=0, im_=0) -> GaussianRational:
    """Shorthand constructor; ``gr("1/2")`` and ``gr(1, 3)`` both work."""
    if isinstance(re_, GaussianRational) and im_ == 0:
        return re_
    return GaussianRational(re_, im_)


ZERO = _new(_Q0, _Q0)
ONE = _new(_Q1, _Q0)
I = _new(_Q0, _Q1)


# ---------------------------------------------------------------------------
# Biquaternions
# ---------------------------------------------------------------------------


class EBasisCoords(NamedTuple):
    c0: GaussianRational
    c1: GaussianRational
    c2: GaussianRational
    c3: GaussianRational


@dataclass(frozen=True)
class Biquaternion:
    """Element of H_C stored as the matrix ``[[z11, z12], [z21, z22]]``."""

    z11: GaussianRational
    z12: GaussianRational
    z21: GaussianRational
    z22: GaussianRational

    def __post_init__(self):
        for name in ("z11", "z12", "z21", "z22"):
            v = getattr(self, name)
            if not isinstance(v, GaussianRational):
                object.__setattr__(self, name, gr(v))

    @classmethod
    def from_matrix(cls, m) -> "Biquaternion":
        return cls(m[0][0], m[0][1], m[1][0], m[1][1])

    @classmethod
    def scalar(cls, c) -> "Biquaternion":
        c = gr(c)
        return cls(c, ZERO, ZERO, c)

    @property
    def entries(self) -> tuple:
        return (self.z11, self.z12, self.z21, self.z22)

    def matrix(self) -> tuple:
        return ((self.z11, self.z12), (self.z21, self.z22))

    def __getitem__(self, ij):
        i, j = ij
        return self.matrix()[i][j]

    def __add__(self, other):
        return Biquaternion(*(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        return Biquaternion(*(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return Biquaternion(*(-a for a in self.entries))

    def __mul__(self, other):
        if isinstance(other, Biquaternion):
            return mul(self, other)
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Biquaternion(*(a * other for a in self.entries))

    def __rmul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Biquaternion(*(other * a for a in self.entries))

    def __truediv__(self, other):
        other = gr(other)
        return Biquaternion(*(a / other for a in self.entries))

    def conj_plus(self) -> "Biquaternion":
        return conj_plus(self)

    def norm(self) -> GaussianRational:
        return norm(self)

    def inverse(self) -> "Biquaternion":
        return invert(self)

    def bar(self) -> "Biquaternion":
        return bar(self)

    def adjoint(self) -> "Biquaternion":
        """Matrix adjoint ``Z*`` (conjugate transpose), equal to ``bar(Z)^+``."""
        return Biquaternion(self.z11.conjugate(), self.z21.conjugate(),
                            self.z12.conjugate(), self.z22.conjugate())

    def trace(self) -> GaussianRational:
        return self.z11 + self.z22

    def coords(self) -> EBasisCoords:
        return matrix_to_coords(self)

    def is_real_quaternion(self) -> bool:
        return all(c.is_real for c in self.coords())

    def __str__(self):
        return f"[[{self.z11}, {self.z12}], [{self.z21}, {self.z22}]]"


def mul(a: Biquaternion, b: Biquaternion) -> Biquaternion:
    return Biquaternion(
        a.z11 * b.z11 + a.z12 * b.z21,
        a.z11 * b.z12 + a.z12 * b.z22,
        a.z21 * b.z11 + a.z22 * b.z21,
        a.z21 * b.z12 + a.z22 * b.z22,
    )


def conj_plus(z: Biquaternion) -> Biquaternion:
    """Quaternionic conjugation Z^+; the adjugate of the matrix."""
    return Biquaternion(z.z22, -z.z12, -z.z21, z.z11)


def norm(z: Biquaternion) -> GaussianRational:
    return z.z11 * z.z22 - z.z12 * z.z21


def invert(z: Biquaternion) -> Biquaternion:
    n = norm(z)
    if not n:
        raise NonInvertible(f"N(Z) = 0 for Z = {z}")
    return conj_plus(z) / n


def bar(z: Biquaternion) -> Biquaternion:
    """Complex conjugation relative to H; fixes real quaternions."""
    return Biquaternion(z.z22.conjugate(), -z.z21.conjugate(),
                        -z.z12.conjugate(), z.z11.conjugate())


def coords_to_matrix(c) -> Biquaternion:
    c0, c1, c2, c3 = (gr(x) for x in c)
    return Biquaternion(c0 - I * c3, -c2 - I * c1, c2 - I * c1, c0 + I * c3)


def from_coords(c0=0, c1=0, c2=0, c3=0) -> Biquaternion:
    return coords_to_matrix((c0, c1, c2, c3))


def matrix_to_coords(z: Biquaternion) -> EBasisCoords:
    half = gr(Fraction(1, 2))
    return EBasisCoords(
        (z.z11 + z.z22) * half,
        I * (z.z12 + z.z21) * half,
        (z.z21 - z.z12) * half,
        I * (z.z11 - z.z22) * half,
    )


E0 = from_coords(1, 0, 0, 0)
E1 = from_coords(0, 1, 0, 0)
E2 = from_coords(0, 0, 1, 0)
E3 = from_coords(0, 0, 0, 1)
E_UNITS = (E0, E1, E2, E3)
