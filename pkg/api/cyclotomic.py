"""Exact arithmetic in the cyclotomic fields Q(zeta_q)

An element is a rational coefficient vector of length phi(q) holding a polynomial
in x = zeta_q reduced modulo the q-th cyclotomic polynomial. Elements of different
conductors are lifted to the lcm of the conductors before combining.
"""
from __future__ import annotations

import cmath
import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

import sympy
from mpmath.ctx_iv import MPIntervalContext

from api.errors import DomainError, IndeterminateError
from api.logs import logger as logger_wrapper
from api.settings import message, read_config

Rational = Union[int, Fraction]

_X = sympy.Symbol("x")
_local = threading.local()


@lru_cache(maxsize=None)
def cyclotomic_coefficients(q: int) -> Tuple[int, ...]:
    """Coefficients of Phi_q in ascending degree"""
    if q < 1:
        raise DomainError("conductor must be positive, got {}".format(q))
    poly = sympy.Poly(sympy.cyclotomic_poly(q, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def degree(q: int) -> int:
    """phi(q), the dimension of Q(zeta_q) over Q"""
    return len(cyclotomic_coefficients(q)) - 1


def _interval_context() -> MPIntervalContext:
    """Per-thread interval context; precision changes never leak across threads"""
    ctx = getattr(_local, "iv", None)
    if ctx is None:
        ctx = MPIntervalContext()
        _local.iv = ctx
    return ctx


class CyclotomicElement:
    """Element of Q(zeta_q)

    Attributes
    ----------
    q : int
        conductor
    coeffs : tuple of Fraction
        coefficients of 1, x, ..., x^{phi(q)-1}, reduced modulo Phi_q
    """

    __slots__ = ("q", "coeffs")

    def __init__(self, q: int, coeffs: Sequence[Rational]):
        self.q = q
        self.coeffs = _reduce(q, [Fraction(c) for c in coeffs])

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, q: int = 1) -> CyclotomicElement:
        return cls(q, [])

    @classmethod
    def rational(cls, value: Rational, q: int = 1) -> CyclotomicElement:
        return cls(q, [value])

    @classmethod
    def root(cls, q: int, k: int = 1) -> CyclotomicElement:
        """zeta_q^k"""
        k %= q
        return cls(q, [0] * k + [1])

    @classmethod
    def imaginary_unit(cls) -> CyclotomicElement:
        return cls.root(4, 1)

    # -- conductor handling -----------------------------------------------

    def embed(self, target: int) -> CyclotomicElement:
        """Same number expressed in Q(zeta_target); target must be a multiple of q"""
        if target == self.q:
            return self
        if target % self.q:
            raise DomainError("cannot embed conductor {} into {}".format(self.q, target))
        step = target // self.q
        coeffs: List[Fraction] = [Fraction(0)] * (step * len(self.coeffs))
        for k, c in enumerate(self.coeffs):
            coeffs[k * step] = c
        return CyclotomicElement(target, coeffs)

    def _align(self, other) -> Tuple[CyclotomicElement, CyclotomicElement]:
        if isinstance(other, (int, Fraction)):
            return self, CyclotomicElement.rational(other, self.q)
        if not isinstance(other, CyclotomicElement):
            raise TypeError("cannot combine with {}".format(type(other).__name__))
        if other.q == self.q:
            return self, other
        common = math.lcm(self.q, other.q)
        return self.embed(common), other.embed(common)

    # -- field structure --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, CyclotomicElement)):
            return NotImplemented
        a, b = self._align(other)
        length = max(len(a.coeffs), len(b.coeffs))
        padded_a = list(a.coeffs) + [Fraction(0)] * (length - len(a.coeffs))
        padded_b = list(b.coeffs) + [Fraction(0)] * (length - len(b.coeffs))
        return CyclotomicElement(a.q, [x + y for x, y in zip(padded_a, padded_b)])

    __radd__ = __add__

    def __neg__(self) -> CyclotomicElement:
        return CyclotomicElement(self.q, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, CyclotomicElement)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement(self.q, [c * other for c in self.coeffs])
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        a, b = self._align(other)
        if not a.coeffs or not b.coeffs:
            return CyclotomicElement.zero(a.q)
        product = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    product[i + j] += x * y
        return CyclotomicElement(a.q, product)

    __rmul__ = __mul__

    def conjugate(self) -> CyclotomicElement:
        """Complex conjugation x^k -> x^{q-k}"""
        coeffs = [Fraction(0)] * self.q
        for k, c in enumerate(self.coeffs):
            coeffs[(-k) % self.q] += c
        return CyclotomicElement(self.q, coeffs)

    def inverse(self) -> CyclotomicElement:
        """Multiplicative inverse via the extended Euclidean algorithm over Q

        Raises
        ------
        ZeroDivisionError : self is zero
        """
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse in Q(zeta_{})".format(self.q))
        modulus = sympy.Poly(list(reversed(cyclotomic_coefficients(self.q))), _X, domain=sympy.QQ)
        value = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)],
                           _X, domain=sympy.QQ)
        inverse = value.invert(modulus)
        return CyclotomicElement(self.q, [Fraction(int(c.p), int(c.q)) for c in reversed(inverse.all_coeffs())])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CyclotomicElement.rational(other, self.q) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicElement.rational(other, self.q)
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        canonical = self.minimal()
        if canonical.q == 1:
            return hash(canonical.rational_value())
        return hash((canonical.q, canonical.coeffs))

    def minimal(self) -> CyclotomicElement:
        """Same number in Q(zeta_n) for the least conductor n that holds it

        Conductors 2 mod 4 never come out; Q(zeta_2m) is Q(zeta_m) for odd m.
        """
        current = self
        while current.q > 1:
            for p in sympy.primefactors(current.q):
                smaller = _descend(current, p)
                if smaller is not None:
                    current = smaller
                    break
            else:
                break
        return current

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_real(self) -> bool:
        return self == self.conjugate()

    def real_part(self) -> CyclotomicElement:
        return (self + self.conjugate()) * Fraction(1, 2)

    def imaginary_part(self) -> CyclotomicElement:
        """Im(self) as an element of Q(zeta_lcm(q, 4))"""
        i = CyclotomicElement.imaginary_unit()
        return (self - self.conjugate()) * Fraction(1, 2) * (-i)

    def rational_value(self) -> Fraction:
        """The value when the element lies in Q"""
        if self.is_zero():
            return Fraction(0)
        if len(self.coeffs) != 1:
            raise DomainError("{} is not rational".format(self))
        return self.coeffs[0]

    def scaled_integers(self) -> Tuple[int, List[int]]:
        """(lcm of denominators, integer numerators) of the coefficient vector"""
        common = 1
        for c in self.coeffs:
            common = math.lcm(common, c.denominator)
        return common, [int(c * common) for c in self.coeffs]

    # -- numerics ---------------------------------------------------------

    def to_complex(self) -> complex:
        return sum((float(c) * cmath.exp(2j * math.pi * k / self.q) for k, c in enumerate(self.coeffs)),
                   0j)

    def enclosure(self, bits: int):
        """Interval enclosure of the real part at the given working precision"""
        ctx = _interval_context()
        ctx.prec = bits
        total = ctx.mpf(0)
        for k, c in enumerate(self.coeffs):
            if c:
                term = ctx.mpf(c.numerator) / ctx.mpf(c.denominator)
                if k:
                    term = term * ctx.cos(2 * ctx.pi * k / self.q)
                total = total + term
        return total

    def sign(self) -> int:
        """Certified sign of a real element

        Zero is decided exactly from the reduced coefficient vector. A nonzero value
        is enclosed in an interval, starting at [numeric] start_precision bits and
        doubling until the interval excludes 0.

        Raises
        ------
        DomainError : element is not real
        IndeterminateError : precision ceiling reached (never for valid input)
        """
        if self.is_zero():
            return 0
        if not self.is_real():
            raise DomainError("sign of non-real value {}".format(self))
        if len(self.coeffs) == 1:
            return 1 if self.coeffs[0] > 0 else -1
        numeric = read_config()["numeric"]
        bits = int(numeric["start_precision"])
        ceiling = int(numeric["max_precision"])
        while bits <= ceiling:
            interval = self.enclosure(bits)
            if interval.a > 0:
                return 1
            if interval.b < 0:
                return -1
            logger_wrapper().debug(message("numeric", "msg_precision_escalate", self, bits))
            bits *= 2
        raise IndeterminateError("sign of {} undecided at {} bits".format(self, ceiling))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for k, c in enumerate(self.coeffs):
            if c:
                pieces.append("{}".format(c) if k == 0 else "({})*z{}^{}".format(c, self.q, k))
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return "CyclotomicElement({}, {})".format(self.q, [str(c) for c in self.coeffs])


def _reduce(q: int, coeffs: List[Fraction]) -> Tuple[Fraction, ...]:
    """Canonical remainder modulo Phi_q (monic), trailing zeros stripped"""
    modulus = cyclotomic_coefficients(q)
    d = len(modulus) - 1
    work = list(coeffs)
    for top in range(len(work) - 1, d - 1, -1):
        lead = work[top]
        if lead:
            shift = top - d
            for k, m in enumerate(modulus):
                if m:
                    work[shift + k] -= lead * m
    work = work[:d]
    while work and not work[-1]:
        work.pop()
    return tuple(work)


def _descend(x: CyclotomicElement, p: int) -> CyclotomicElement | None:
    """x as an element of Q(zeta_{q/p}), or None when it does not lie there"""
    q = x.q
    m = q // p
    if m % p == 0:
        # Phi_q(z) = Phi_m(z^p): only powers of z^p may occur
        if any(c for k, c in enumerate(x.coeffs) if k % p):
            return None
        return CyclotomicElement(m, x.coeffs[::p])
    if p == 2:
        # zeta_2m = -zeta_m^((m+1)/2)
        coeffs = [Fraction(0)] * m
        for k, c in enumerate(x.coeffs):
            coeffs[k * (m + 1) // 2 % m] += -c if k % 2 else c
        return CyclotomicElement(m, coeffs)
    # zeta_q^k = zeta_m^(ks) * zeta_p^(kt) with sp + tm = 1 mod q
    s = pow(p, -1, m) if m > 1 else 0
    t = pow(m, -1, p)
    parts = [CyclotomicElement.zero(m) for _ in range(p)]
    for k, c in enumerate(x.coeffs):
        if c:
            parts[k * t % p] = parts[k * t % p] + CyclotomicElement.root(m, k * s) * c
    if any(part != parts[1] for part in parts[2:]):
        return None
    return parts[0] - parts[1]
