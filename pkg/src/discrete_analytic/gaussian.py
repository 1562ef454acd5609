"""Exact complex numbers with rational real and imaginary parts."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["GaussianRational", "GR", "I", "ONE", "ZERO", "as_gr", "gr_arith"]

Scalar = Union["GaussianRational", int, Fraction]


class GaussianRational:
    """An element of Q(i), stored as a pair of reduced fractions.

    Instances are immutable and hashable.  Arithmetic mixes freely with
    ``int`` and ``Fraction``; mixing with ``float``/``complex`` is refused so
    that exact results can never be silently downgraded.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Rational | int | str = 0, im: Rational | int | str = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational._make, (self.re, self.im))

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> GaussianRational:
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational._make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a Gaussian rational by zero")
            return GaussianRational._make(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            return self * other.reciprocal()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.reciprocal() * other
        return NotImplemented

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.reciprocal() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def reciprocal(self) -> GaussianRational:
        norm = self.norm()
        if norm == 0:
            raise ZeroDivisionError("division of a Gaussian rational by zero")
        return GaussianRational._make(self.re / norm, -self.im / norm)

    def conjugate(self) -> GaussianRational:
        return GaussianRational._make(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def log_abs(self) -> float:
        """``log|self|`` computed without overflow for huge numerators."""
        n = self.norm()
        if n == 0:
            return -math.inf
        return 0.5 * (math.log(n.numerator) - math.log(n.denominator))

    # -- comparisons and conversion -------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_complex(self) -> complex:
        return complex(self)

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"

    def __str__(self):
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}*i"

    _TERM = re.compile(r"[+-]?[^+-]+")

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Parse ``"a/b+c/d*i"``; also accepts ``"3"``, ``"-i"``, ``"2/3*i"``."""
        s = text.strip().replace(" ", "")
        if not s:
            raise ValueError("empty Gaussian rational string")
        re_part = Fraction(0)
        im_part = Fraction(0)
        for term in cls._TERM.findall(s):
            if term.endswith("i"):
                body = term[:-1]
                if body.endswith("*"):
                    body = body[:-1]
                if body in ("", "+", "-"):
                    body += "1"
                im_part += Fraction(body)
            else:
                re_part += Fraction(term)
        if "".join(cls._TERM.findall(s)) != s:
            raise ValueError(f"malformed Gaussian rational: {text!r}")
        return cls._make(re_part, im_part)

    def to_json(self) -> dict:
        return {"re": _frac_str(self.re), "im": _frac_str(self.im)}

    @classmethod
    def from_json(cls, obj) -> GaussianRational:
        if isinstance(obj, str):
            return cls.parse(obj)
        if isinstance(obj, dict):
            return cls._make(Fraction(obj["re"]), Fraction(obj.get("im", 0)))
        return as_gr(obj)


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


GR = GaussianRational
ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def as_gr(value) -> GaussianRational:
    """Coerce ints, fractions, strings and exact-valued floats to a GaussianRational."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational._make(Fraction(value), Fraction(0))
    if isinstance(value, str):
        return GaussianRational.parse(value)
    if isinstance(value, float):
        return GaussianRational._make(Fraction(value), Fraction(0))
    if isinstance(value, complex):
        return GaussianRational._make(Fraction(value.real), Fraction(value.imag))
    raise TypeError(f"cannot convert {type(value).__name__} to GaussianRational")


def gr_arith(a: GaussianRational, b: GaussianRational, op: str) -> GaussianRational:
    """Apply ``op`` in {"add", "sub", "mul", "div"}; division by zero raises."""
    a, b = as_gr(a), as_gr(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
