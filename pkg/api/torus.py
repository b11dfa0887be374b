"""Points of the punctured torus and evaluation of Laurent polynomials at them"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, List, Tuple, Union

from sympy import factorint, primerange

from api.cyclotomic import CyclotomicElement
from api.errors import DomainError
from api.laurent import LaurentPoly


@dataclass(frozen=True, order=True)
class Exact:
    """omega = exp(2 pi i k / q) with 0 < k < q and gcd(k, q) = 1"""
    k: int
    q: int

    def __post_init__(self):
        if self.q < 2 or not 0 < self.k < self.q:
            raise DomainError("{}/{} is not a point of the punctured circle".format(self.k, self.q))
        if math.gcd(self.k, self.q) != 1:
            raise DomainError("{}/{} is not reduced".format(self.k, self.q))

    @classmethod
    def of(cls, k: int, q: int) -> Exact:
        """Reduced form of k/q, read modulo 1"""
        turn = Fraction(k, q) % 1
        if turn == 0:
            raise DomainError("{}/{} is the excluded point 1".format(k, q))
        return cls(turn.numerator, turn.denominator)

    @property
    def turn(self) -> Fraction:
        return Fraction(self.k, self.q)

    @property
    def theta(self) -> float:
        return 2 * math.pi * self.k / self.q

    def __str__(self) -> str:
        return "{}/{}".format(self.k, self.q)


@dataclass(frozen=True)
class Approx:
    """omega = exp(i theta) with theta in (0, 2 pi)"""
    theta: float

    def __post_init__(self):
        if not 0 < self.theta < 2 * math.pi:
            raise DomainError("angle {} is not in (0, 2pi)".format(self.theta))

    def __str__(self) -> str:
        return "~{!r}".format(self.theta)


Coordinate = Union[Exact, Approx]


def _inverse(c: Coordinate) -> Coordinate:
    return Exact(c.q - c.k, c.q) if isinstance(c, Exact) else Approx(2 * math.pi - c.theta)


@dataclass(frozen=True)
class TorusPoint:
    """A point of the torus with no coordinate equal to 1"""
    coords: Tuple[Coordinate, ...]

    def __post_init__(self):
        if not self.coords:
            raise DomainError("a torus point needs at least one coordinate")

    @classmethod
    def exact(cls, *turns: Tuple[int, int]) -> TorusPoint:
        return cls(tuple(Exact.of(k, q) for k, q in turns))

    @classmethod
    def diagonal(cls, coord: Coordinate, mu: int) -> TorusPoint:
        return cls((coord,) * mu)

    @classmethod
    def parse(cls, text: str) -> TorusPoint:
        """Reads ``k/q`` or ``~radians`` per coordinate, comma-separated

        Raises
        ------
        DomainError : empty text, bad numbers or a coordinate equal to 1
        """
        coords = []
        for piece in text.replace(" ", "").split(","):
            if not piece:
                raise DomainError("empty coordinate in '{}'".format(text))
            if piece.startswith("~"):
                try:
                    theta = float(piece[1:])
                except ValueError:
                    raise DomainError("bad angle '{}'".format(piece))
                coords.append(Approx(theta % (2 * math.pi)))
                continue
            k, slash, q = piece.partition("/")
            if not slash:
                raise DomainError("coordinate '{}' is neither k/q nor ~radians".format(piece))
            try:
                k, q = int(k), int(q)
            except ValueError:
                raise DomainError("bad fraction '{}'".format(piece))
            if q <= 0:
                raise DomainError("denominator of '{}' must be positive".format(piece))
            coords.append(Exact.of(k, q))
        return cls(tuple(coords))

    @property
    def mu(self) -> int:
        return len(self.coords)

    def is_exact(self) -> bool:
        return all(isinstance(c, Exact) for c in self.coords)

    @property
    def conductor(self) -> int | None:
        if not self.is_exact():
            return None
        return math.lcm(*(c.q for c in self.coords))

    def angles(self) -> Tuple[float, ...]:
        return tuple(c.theta for c in self.coords)

    def conjugate(self) -> TorusPoint:
        return TorusPoint(tuple(_inverse(c) for c in self.coords))

    def inverted(self, index: int) -> TorusPoint:
        """The point with coordinate index (0-based) replaced by its inverse"""
        if not 0 <= index < self.mu:
            raise DomainError("coordinate {} outside 0..{}".format(index, self.mu - 1))
        return TorusPoint(tuple(_inverse(c) if j == index else c for j, c in enumerate(self.coords)))

    def sort_key(self):
        return (self.conductor or 0, tuple(c.turn if isinstance(c, Exact) else c.theta for c in self.coords))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coords)


@dataclass(frozen=True)
class Classification:
    in_T_star: bool
    in_T_Q: bool
    in_T_P: bool
    conductor: int | None
    prime: int | None = None


def classify(point: TorusPoint) -> Classification:
    """Membership of a point in the punctured, rational and prime-power tori"""
    if not point.is_exact():
        return Classification(True, False, False, None)
    primes = set()
    for c in point.coords:
        primes.update(factorint(c.q))
    prime = primes.pop() if len(primes) == 1 else None
    return Classification(True, True, prime is not None, point.conductor, prime)


def half_point(point: TorusPoint) -> TorusPoint:
    """Coordinate-wise square root on the branch exp(i theta / 2), 0 < theta < 2 pi"""
    return TorusPoint(tuple(
        Exact.of(c.k, 2 * c.q) if isinstance(c, Exact) else Approx(c.theta / 2)
        for c in point.coords))


def evaluation_conductor(p: LaurentPoly, point: TorusPoint) -> int:
    if p.has_half_exponents():
        return math.lcm(*(2 * c.q for c in point.coords))
    return point.conductor


def eval_at(p: LaurentPoly, point: TorusPoint) -> Union[CyclotomicElement, complex]:
    """Substitutes t_j -> omega_j

    Half powers t_j^{1/2} take the branch of ``half_point``. Exact points give a
    CyclotomicElement, points with an approximate coordinate a complex number.

    Raises
    ------
    DomainError : the point has the wrong number of coordinates
    """
    if point.mu != p.num_vars:
        raise DomainError("{} coordinates for a polynomial in {} variables".format(point.mu, p.num_vars))
    terms = p.doubled_terms()
    if not point.is_exact():
        angles = point.angles()
        return sum((c * cmath.exp(0.5j * sum(d * a for d, a in zip(exps, angles)))
                    for exps, c in terms.items()), 0j)
    n = evaluation_conductor(p, point)
    coeffs = [0] * n
    for exps, c in terms.items():
        power = sum(d * coord.k * n // (2 * coord.q) for d, coord in zip(exps, point.coords))
        coeffs[power % n] += c
    return CyclotomicElement(n, coeffs)


def grid_points(mu: int, q: int) -> Iterator[Tuple[Tuple[int, ...], TorusPoint]]:
    """(k_1..k_mu, point) for every 0 < k_j < q, lexicographic in k"""
    for ks in product(range(1, q), repeat=mu):
        yield ks, TorusPoint(tuple(Exact.of(k, q) for k in ks))


def prime_power_points(mu: int, max_q: int) -> List[TorusPoint]:
    """Exact points whose coordinate orders are powers of one prime, conductor <= max_q

    Sorted by conductor, then by coordinates.
    """
    points = set()
    for p in primerange(2, max_q + 1):
        top = p
        while top * p <= max_q:
            top *= p
        for ks in product(range(1, top), repeat=mu):
            points.add(TorusPoint(tuple(Exact.of(k, top) for k in ks)))
    return sorted(points, key=TorusPoint.sort_key)
