"""Exact coefficients: rationals and Gaussian rationals.

Rationals are ``gmpy2.mpq`` values.  A Gaussian rational ``a + b*i`` is a
:class:`GaussRational` only while ``b != 0``; anything with a vanishing
imaginary part collapses to a plain rational, so every value has exactly one
representation and the compact (real) computations never pay for complex
arithmetic.
"""
from __future__ import annotations

import re

from gmpy2 import mpq

__all__ = [
    "Rational",
    "GaussRational",
    "I",
    "gauss",
    "as_coeff",
    "re_part",
    "im_part",
    "conj",
    "is_real",
    "field_arith",
    "parse_coeff",
    "format_coeff",
]

Rational = type(mpq(0))


def _q(x) -> "mpq":
    if isinstance(x, Rational):
        return x
    if isinstance(x, str):
        return mpq(x)
    return mpq(x)


class GaussRational:
    """``re + im*i`` with ``im != 0``.  Build through :func:`gauss`."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, GaussRational):
            return gauss(self.re + other.re, self.im + other.im)
        if isinstance(other, (Rational, int)):
            return GaussRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, GaussRational):
            return gauss(self.re - other.re, self.im - other.im)
        if isinstance(other, (Rational, int)):
            return GaussRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (Rational, int)):
            return GaussRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussRational):
            return gauss(self.re * other.re - self.im * other.im,
                         self.re * other.im + self.im * other.re)
        if isinstance(other, (Rational, int)):
            if other == 0:
                return mpq(0)
            return GaussRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        if isinstance(other, GaussRational):
            d = other.norm()
            return gauss((self.re * other.re + self.im * other.im) / d,
                         (self.im * other.re - self.re * other.im) / d)
        if isinstance(other, (Rational, int)):
            if other == 0:
                raise ZeroDivisionError("division by zero coefficient")
            return GaussRational(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (Rational, int)):
            d = self.norm()
            return gauss(other * self.re / d, -other * self.im / d)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        result = mpq(1)
        base = self
        if k < 0:
            base, k = 1 / self, -k
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return GaussRational(self.re, -self.im)

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (Rational, int)):
            return False  # im != 0 by construction
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True

    def __repr__(self):
        return f"GaussRational({format_coeff(self)})"

    def __str__(self):
        return format_coeff(self)


def gauss(re, im=0):
    """Canonical constructor: returns a rational when ``im == 0``."""
    re = _q(re)
    im = _q(im)
    if im == 0:
        return re
    return GaussRational(re, im)


I = GaussRational(mpq(0), mpq(1))


def as_coeff(x):
    if isinstance(x, (Rational, GaussRational)):
        return x
    if isinstance(x, complex):
        raise TypeError("floating point coefficients are not allowed")
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not allowed")
    return _q(x)


def re_part(x):
    return x.re if isinstance(x, GaussRational) else x


def im_part(x):
    return x.im if isinstance(x, GaussRational) else mpq(0)


def conj(x):
    return x.conjugate() if isinstance(x, GaussRational) else x


def is_real(x) -> bool:
    return not isinstance(x, GaussRational)


def field_arith(a, b, op: str):
    """``op`` is one of add, sub, mul, div; division by zero raises."""
    a, b = as_coeff(a), as_coeff(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError("division by zero coefficient")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _fmt_q(q) -> str:
    return str(q)


def format_coeff(x) -> str:
    """``a/b`` for rationals, ``a/b+c/d*i`` for Gaussian rationals."""
    if isinstance(x, GaussRational):
        im = x.im
        sign = "-" if im < 0 else "+"
        return f"{_fmt_q(x.re)}{sign}{_fmt_q(abs(im))}*i"
    return _fmt_q(x)


_COEFF_RE = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)\s*\*\s*i)?\s*$"
)
_IMAG_RE = re.compile(r"^\s*(?P<im>[+-]?\d+(?:/\d+)?)\s*\*\s*i\s*$")


def parse_coeff(text: str):
    """Inverse of :func:`format_coeff`; also accepts a bare ``c*i``."""
    m = _COEFF_RE.match(text)
    if m:
        re_ = mpq(m.group("re"))
        if m.group("im") is None:
            return re_
        im = mpq(m.group("im"))
        if m.group("sign") == "-":
            im = -im
        return gauss(re_, im)
    m = _IMAG_RE.match(text)
    if m:
        return gauss(0, mpq(m.group("im")))
    raise ValueError(f"not a coefficient: {text!r}")
