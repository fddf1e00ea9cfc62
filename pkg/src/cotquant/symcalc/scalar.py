"""Exact Gaussian rationals, the coefficient field of every polynomial here."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal. Decimal and float syntax is refused."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational {text!r}; expected 'p/q' or an integer")
    value = Fraction(text.replace(" ", ""))
    return value


class QI:
    """An element ``re + im*i`` of Q(i).

    Instances are immutable. Integers and Fractions are accepted wherever a
    QI is expected and compare equal to the corresponding real QI.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Rational | int = 0, im: Rational | int = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("QI is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> QI:
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, value) -> QI:
        if isinstance(value, QI):
            return value
        if isinstance(value, (int, Fraction)):
            return cls._raw(Fraction(value), _ZERO)
        if isinstance(value, str):
            return cls._raw(parse_rational(value), _ZERO)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return QI._raw(self.re + other, self.im)
        if not isinstance(other, QI):
            return NotImplemented
        return QI._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QI._raw(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return QI._raw(self.re - other, self.im)
        if not isinstance(other, QI):
            return NotImplemented
        return QI._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return QI._raw(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QI._raw(self.re * other, self.im * other)
        if not isinstance(other, QI):
            return NotImplemented
        if not self.im and not other.im:
            return QI._raw(self.re * other.re, _ZERO)
        return QI._raw(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QI:
        return QI._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> QI:
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return QI._raw(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero in Q(i)")
            return QI._raw(self.re / other, self.im / other)
        if not isinstance(other, QI):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QI.coerce(other) * self.inverse()
        return NotImplemented

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # comparison -----------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, QI):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    @property
    def is_real(self) -> bool:
        return not self.im

    def real_value(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return self.re

    # display --------------------------------------------------------------

    def __repr__(self):
        return f"QI({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if self.im == 1:
            imag = "i"
        elif self.im == -1:
            imag = "-i"
        elif self.im.denominator == 1:
            imag = f"{self.im}i"
        else:
            imag = f"({self.im})i"
        if not self.re:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"({self.re}{sign}{imag})"


_ZERO = Fraction(0)
ZERO = QI(0)
ONE = QI(1)
I = QI(0, 1)
