"""Multivariable Laurent polynomials over the integers.

Exponents are stored doubled so that half-integer powers t_j^{k/2}, needed by the
Conway potential function, live in the same ring as ordinary Laurent polynomials.
A value is a monomial shift times an element of the sympy ring Z[u_1, ..., u_mu]
with u_j = t_j^{1/2}; ring arithmetic, exact division and determinants are done by
sympy. Values are immutable; every operation returns a new object.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple, Union

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import ExactQuotientFailed

from api.errors import DimensionError, DomainError

Exponents = Tuple[int, ...]
Scalar = Union[int, "LaurentPoly"]


@lru_cache(maxsize=None)
def polynomial_domain(num_vars: int):
    """ZZ[u_1, ..., u_mu], one half-variable per color"""
    return ZZ.poly_ring(*["u{}".format(j + 1) for j in range(num_vars)])


class LaurentPoly:
    """An element of Z[t_1^{±1/2}, ..., t_mu^{±1/2}]

    Attributes
    ----------
    num_vars : int
        number of variables mu
    shift : tuple
        doubled exponents of the monomial factored out of every term
    poly : PolyElement
        sympy polynomial in the half-variables, divisible by no u_j

    The pair (shift, poly) is canonical, so equality of two Laurent polynomials is
    equality of the pairs.
    """

    __slots__ = ("_num_vars", "_shift", "_poly", "_hash")

    def __init__(self, num_vars: int, terms: Dict[Exponents, int] | None = None):
        if num_vars < 1:
            raise DomainError("number of variables must be positive")
        clean: Dict[Exponents, int] = {}
        for exponents, coeff in (terms or {}).items():
            exponents = tuple(int(e) for e in exponents)
            if len(exponents) != num_vars:
                raise DimensionError("exponent vector {} has wrong length".format(exponents))
            clean[exponents] = clean.get(exponents, 0) + int(coeff)
        clean = {e: c for e, c in clean.items() if c}
        shift = tuple(min(e[j] for e in clean) for j in range(num_vars)) if clean else (0,) * num_vars
        ring = polynomial_domain(num_vars).ring
        poly = ring.from_dict({tuple(a - s for a, s in zip(e, shift)): c for e, c in clean.items()})
        self._set(num_vars, shift, poly)

    def _set(self, num_vars: int, shift: Exponents, poly) -> None:
        self._num_vars = num_vars
        self._shift = shift
        self._poly = poly
        self._hash = None

    @classmethod
    def from_polynomial(cls, num_vars: int, shift: Sequence[int], poly) -> LaurentPoly:
        """u^shift * poly, with any monomial factor of poly moved into the shift"""
        result = cls.__new__(cls)
        shift = tuple(int(s) for s in shift)
        if not poly:
            result._set(num_vars, (0,) * num_vars, polynomial_domain(num_vars).ring.zero)
            return result
        low = tuple(min(m[j] for m in poly.itermonoms()) for j in range(num_vars))
        if any(low):
            poly = poly.ring.from_dict({tuple(a - b for a, b in zip(m, low)): c for m, c in poly.items()})
            shift = tuple(a + b for a, b in zip(shift, low))
        result._set(num_vars, shift, poly)
        return result

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, num_vars: int) -> LaurentPoly:
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars: int, value: int) -> LaurentPoly:
        return cls(num_vars, {(0,) * num_vars: value})

    @classmethod
    def one(cls, num_vars: int) -> LaurentPoly:
        return cls.constant(num_vars, 1)

    @classmethod
    def monomial(cls, num_vars: int, exponents: Sequence[Union[int, Fraction]],
                 coeff: int = 1) -> LaurentPoly:
        """coeff * t_1^{e_1} ... t_mu^{e_mu}, each e_j an integer or half-integer"""
        doubled = []
        for e in exponents:
            twice = Fraction(e) * 2
            if twice.denominator != 1:
                raise DomainError("exponent {} is not a half-integer".format(e))
            doubled.append(int(twice))
        return cls(num_vars, {tuple(doubled): coeff})

    @classmethod
    def variable(cls, num_vars: int, index: int, power: int = 1) -> LaurentPoly:
        """t_{index+1}^power (index is 0-based)"""
        if not 0 <= index < num_vars:
            raise DomainError("variable index {} out of range".format(index))
        exponents = [0] * num_vars
        exponents[index] = 2 * power
        return cls(num_vars, {tuple(exponents): 1})

    @classmethod
    def half_variable(cls, num_vars: int, index: int, numerator: int = 1) -> LaurentPoly:
        """t_{index+1}^{numerator/2}"""
        if not 0 <= index < num_vars:
            raise DomainError("variable index {} out of range".format(index))
        exponents = [0] * num_vars
        exponents[index] = numerator
        return cls(num_vars, {tuple(exponents): 1})

    # -- accessors --------------------------------------------------------

    @property
    def num_vars(self) -> int:
        return self._num_vars

    @property
    def shift_exponents(self) -> Exponents:
        return self._shift

    @property
    def polynomial(self):
        return self._poly

    def doubled_terms(self) -> Dict[Exponents, int]:
        return {tuple(a + s for a, s in zip(m, self._shift)): int(c) for m, c in self._poly.items()}

    def terms(self) -> Iterator[Tuple[Tuple[Fraction, ...], int]]:
        """(exponents as Fractions, coefficient), lexicographically descending"""
        terms = self.doubled_terms()
        for exponents in sorted(terms, reverse=True):
            yield tuple(Fraction(e, 2) for e in exponents), terms[exponents]

    def is_zero(self) -> bool:
        return not self._poly

    def is_monomial(self) -> bool:
        return len(self._poly) == 1

    def is_constant(self) -> bool:
        return self.is_zero() or (self.is_monomial() and not any(self._shift))

    def has_half_exponents(self) -> bool:
        return any(e % 2 for exponents in self.doubled_terms() for e in exponents)

    def leading_term(self) -> Tuple[Exponents, int]:
        lead = self._poly.LM
        return tuple(a + s for a, s in zip(lead, self._shift)), int(self._poly.LC)

    def min_exponents(self) -> Exponents:
        """Per-variable minimum of the doubled exponents"""
        if self.is_zero():
            raise DomainError("the zero polynomial has no exponents")
        return self._shift

    def max_exponents(self) -> Exponents:
        if self.is_zero():
            raise DomainError("the zero polynomial has no exponents")
        return tuple(a + s for a, s in zip(self._poly.degrees(), self._shift))

    def _lifted(self, shift: Sequence[int]):
        """The polynomial u^(self.shift - shift) * poly; shift must not exceed self.shift"""
        return self._poly.mul_monom(tuple(a - b for a, b in zip(self._shift, shift)))

    # -- ring structure ---------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other._num_vars != self._num_vars:
                raise DimensionError("mixing polynomials in {} and {} variables".format(
                    self._num_vars, other._num_vars))
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self._num_vars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        common = tuple(min(a, b) for a, b in zip(self._shift, other._shift))
        return LaurentPoly.from_polynomial(self._num_vars, common, self._lifted(common) + other._lifted(common))

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly.from_polynomial(self._num_vars, self._shift, -self._poly)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        shift = tuple(a + b for a, b in zip(self._shift, other._shift))
        return LaurentPoly.from_polynomial(self._num_vars, shift, self._poly * other._poly)

    __rmul__ = __mul__

    def __pow__(self, power: int) -> LaurentPoly:
        if power < 0:
            if not self.is_monomial() or abs(self.leading_term()[1]) != 1:
                raise ArithmeticError("only units can be inverted")
            exponents, coeff = self.leading_term()
            return LaurentPoly(self._num_vars, {tuple(-e for e in exponents): coeff}) ** (-power)
        return LaurentPoly.from_polynomial(self._num_vars, tuple(power * s for s in self._shift),
                                           self._poly ** power)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(self._num_vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self._num_vars == other._num_vars and self._shift == other._shift
                and self._poly == other._poly)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._num_vars, self._shift, self._poly))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._poly)

    # -- substitutions ----------------------------------------------------

    def shift(self, doubled: Sequence[int]) -> LaurentPoly:
        """Multiply by the monomial with the given doubled exponents"""
        return LaurentPoly.from_polynomial(self._num_vars, tuple(a + b for a, b in zip(self._shift, doubled)),
                                           self._poly)

    def bar(self) -> LaurentPoly:
        return bar_involution(self)

    def substitute_squares(self) -> LaurentPoly:
        """p(t_1, ..., t_mu) -> p(t_1^2, ..., t_mu^2)"""
        return LaurentPoly(self._num_vars, {
            tuple(2 * a for a in e): c for e, c in self.doubled_terms().items()})

    def substitute_roots(self) -> LaurentPoly:
        """p(t_1, ..., t_mu) -> p(t_1^{1/2}, ..., t_mu^{1/2}); needs integral exponents"""
        if self.has_half_exponents():
            raise DomainError("quarter powers are not representable")
        return LaurentPoly(self._num_vars, {
            tuple(a // 2 for a in e): c for e, c in self.doubled_terms().items()})

    def exquo(self, other: LaurentPoly) -> LaurentPoly:
        """Exact quotient self / other in the Laurent ring

        Neither polynomial part has a monomial factor, so other divides self in the
        Laurent ring exactly when its polynomial part divides ours in Z[u].

        Raises
        ------
        ZeroDivisionError : other is zero
        ArithmeticError : other does not divide self
        """
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero(self._num_vars)
        try:
            quotient = self._poly.exquo(other._poly)
        except ExactQuotientFailed:
            raise ArithmeticError("inexact division")
        shift = tuple(a - b for a, b in zip(self._shift, other._shift))
        return LaurentPoly.from_polynomial(self._num_vars, shift, quotient)


    # -- text -------------------------------------------------------------

    def variable_name(self, index: int) -> str:
        return "t" if self._num_vars == 1 else "t{}".format(index + 1)

    def _monomial_text(self, exponents: Exponents) -> str:
        factors = []
        for j, e in enumerate(exponents):
            if e == 0:
                continue
            name = self.variable_name(j)
            if e == 2:
                factors.append(name)
            elif e % 2 == 0:
                factors.append("{}^{}".format(name, e // 2))
            else:
                factors.append("{}^({}/2)".format(name, e))
        return "*".join(factors)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        terms = self.doubled_terms()
        for exponents in sorted(terms, reverse=True):
            coeff = terms[exponents]
            mono = self._monomial_text(exponents)
            magnitude = abs(coeff)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = "{}*{}".format(magnitude, mono)
            if not pieces:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return "LaurentPoly({}, '{}')".format(self._num_vars, self)

    @classmethod
    def parse(cls, text: str, num_vars: int | None = None) -> LaurentPoly:
        """Parses the textual form produced by ``str``

        Terms are ``c*t1^a1*...*tmu^amu``; exponents are integers, ``(p/2)`` half
        powers or parenthesised integers. A bare ``t`` means ``t1``.

        Raises
        ------
        DomainError : malformed text or variable index beyond num_vars
        """
        return _parse_poly(text, num_vars)


def _split_terms(text: str) -> List[str]:
    terms, current, depth = [], "", 0
    for position, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char in "+-" and depth == 0 and current.strip() and not current.rstrip().endswith("^"):
            terms.append(current)
            current = ""
        current += char
    if current.strip():
        terms.append(current)
    return terms


def _parse_factor(factor: str) -> Tuple[int, Fraction] | int:
    if factor.isdigit():
        return int(factor)
    if not factor.startswith("t"):
        raise DomainError("cannot parse factor '{}'".format(factor))
    name, _, power = factor.partition("^")
    index = int(name[1:]) - 1 if len(name) > 1 else 0
    if len(name) > 1 and not name[1:].isdigit():
        raise DomainError("bad variable name '{}'".format(name))
    if not power:
        return index, Fraction(1)
    power = power.strip("()")
    try:
        return index, Fraction(power)
    except ValueError:
        raise DomainError("bad exponent '{}'".format(power))


def _parse_poly(text: str, num_vars: int | None) -> LaurentPoly:
    cleaned = text.replace(" ", "")
    if not cleaned:
        raise DomainError("empty polynomial text")
    parsed = []
    highest = 0
    for term in _split_terms(cleaned):
        sign = -1 if term.startswith("-") else 1
        body = term.lstrip("+-")
        if not body:
            raise DomainError("dangling sign in '{}'".format(text))
        coeff, powers = sign, {}
        for factor in body.split("*"):
            value = _parse_factor(factor)
            if isinstance(value, int):
                coeff *= value
            else:
                index, exponent = value
                powers[index] = powers.get(index, Fraction(0)) + exponent
                highest = max(highest, index + 1)
        parsed.append((coeff, powers))
    if num_vars is None:
        num_vars = max(highest, 1)
    if highest > num_vars:
        raise DomainError("variable index {} exceeds {} variables".format(highest, num_vars))
    result = LaurentPoly.zero(num_vars)
    for coeff, powers in parsed:
        exponents = [powers.get(j, 0) for j in range(num_vars)]
        result = result + LaurentPoly.monomial(num_vars, exponents, coeff)
    return result


def bar_involution(p: LaurentPoly) -> LaurentPoly:
    """t_i -> t_i^{-1}; a ring involution"""
    return LaurentPoly(p.num_vars, {tuple(-e for e in exps): c for exps, c in p.doubled_terms().items()})


def normalize_unit(p: LaurentPoly) -> LaurentPoly:
    """Canonical representative of the class of p up to units ±t^m

    Minimal exponent 0 in every variable, positive leading coefficient for the
    lexicographic term order. Zero maps to zero.
    """
    if p.is_zero():
        return p
    shifted = p.shift(tuple(-m for m in p.min_exponents()))
    if shifted.leading_term()[1] < 0:
        shifted = -shifted
    return shifted


class LaurentMatrix:
    """Dense row-major matrix of LaurentPoly entries

    Attributes
    ----------
    rows, cols : int
        shape
    num_vars : int
        number of variables shared by every entry (kept for 0x0 matrices)
    """

    __slots__ = ("rows", "cols", "num_vars", "_entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[LaurentPoly], num_vars: int):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise DimensionError("{} entries for a {}x{} matrix".format(len(entries), rows, cols))
        for entry in entries:
            if entry.num_vars != num_vars:
                raise DimensionError("entry in {} variables, expected {}".format(entry.num_vars, num_vars))
        self.rows = rows
        self.cols = cols
        self.num_vars = num_vars
        self._entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[LaurentPoly]], num_vars: int) -> LaurentMatrix:
        cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), cols, [entry for row in rows for entry in row], num_vars)

    @classmethod
    def from_integers(cls, rows: Sequence[Sequence[int]], num_vars: int) -> LaurentMatrix:
        return cls.from_rows([[LaurentPoly.constant(num_vars, v) for v in row] for row in rows], num_vars)

    @classmethod
    def zeros(cls, rows: int, cols: int, num_vars: int) -> LaurentMatrix:
        return cls(rows, cols, [LaurentPoly.zero(num_vars)] * (rows * cols), num_vars)

    @classmethod
    def identity(cls, n: int, num_vars: int) -> LaurentMatrix:
        one, zero = LaurentPoly.one(num_vars), LaurentPoly.zero(num_vars)
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)], num_vars)

    def __getitem__(self, index: Tuple[int, int]) -> LaurentPoly:
        i, j = index
        return self._entries[i * self.cols + j]

    def to_rows(self) -> List[List[LaurentPoly]]:
        return [list(self._entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> LaurentMatrix:
        return LaurentMatrix(self.cols, self.rows,
                             [self[i, j] for j in range(self.cols) for i in range(self.rows)],
                             self.num_vars)

    def bar(self) -> LaurentMatrix:
        return LaurentMatrix(self.rows, self.cols, [bar_involution(e) for e in self._entries], self.num_vars)

    def map(self, func) -> LaurentMatrix:
        return LaurentMatrix(self.rows, self.cols, [func(e) for e in self._entries], self.num_vars)

    def __add__(self, other: LaurentMatrix) -> LaurentMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("adding {}x{} and {}x{}".format(self.rows, self.cols, other.rows, other.cols))
        return LaurentMatrix(self.rows, self.cols,
                             [a + b for a, b in zip(self._entries, other._entries)], self.num_vars)

    def __neg__(self) -> LaurentMatrix:
        return self.map(lambda e: -e)

    def __sub__(self, other: LaurentMatrix) -> LaurentMatrix:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.map(lambda e: e * other)
        if self.cols != other.rows:
            raise DimensionError("multiplying {}x{} by {}x{}".format(self.rows, self.cols, other.rows, other.cols))
        zero = LaurentPoly.zero(self.num_vars)
        entries = []
        for i in range(self.rows):
            for j in range(other.cols):
                total = zero
                for k in range(self.cols):
                    total = total + self[i, k] * other[k, j]
                entries.append(total)
        return LaurentMatrix(self.rows, other.cols, entries, self.num_vars)

    def __rmul__(self, scalar):
        return self.map(lambda e: scalar * e)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentMatrix):
            return NotImplemented
        return ((self.rows, self.cols, self.num_vars) == (other.rows, other.cols, other.num_vars)
                and self._entries == other._entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def det(self) -> LaurentPoly:
        return det(self)

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.to_rows())

    def __repr__(self) -> str:
        return "LaurentMatrix({}x{})".format(self.rows, self.cols)


def det(m: LaurentMatrix) -> LaurentPoly:
    """Exact determinant through a sympy DomainMatrix over Z[u_1, ..., u_mu]

    Every entry is first multiplied by one monomial so all exponents are
    non-negative; sympy's fraction-free elimination then runs in the polynomial
    ring. The monomial is divided back out at the end.

    Raises
    ------
    DimensionError : m is not square
    """
    if not m.is_square():
        raise DimensionError("determinant of a {}x{} matrix".format(m.rows, m.cols))
    n, num_vars = m.rows, m.num_vars
    if n == 0:
        return LaurentPoly.one(num_vars)
    shift = (0,) * num_vars
    for row in m.to_rows():
        for e in row:
            if not e.is_zero():
                shift = tuple(min(a, b) for a, b in zip(shift, e.min_exponents()))
    domain = polynomial_domain(num_vars)
    rows = [[e._lifted(shift) if not e.is_zero() else domain.zero for e in row] for row in m.to_rows()]
    value = DomainMatrix(rows, (n, n), domain).det()
    return LaurentPoly.from_polynomial(num_vars, tuple(n * s for s in shift), value)


def det_expansion(m: LaurentMatrix) -> LaurentPoly:
    """Determinant by Laplace expansion along the first row (reference oracle)"""
    if not m.is_square():
        raise DimensionError("determinant of a {}x{} matrix".format(m.rows, m.cols))
    rows = m.to_rows()

    def expand(block):
        if not block:
            return LaurentPoly.one(m.num_vars)
        total = LaurentPoly.zero(m.num_vars)
        for j, entry in enumerate(block[0]):
            if entry.is_zero():
                continue
            minor = [row[:j] + row[j + 1:] for row in block[1:]]
            term = entry * expand(minor)
            total = total + (term if j % 2 == 0 else -term)
        return total

    return expand(rows)


class LaurentFraction:
    """numerator / (sign * prod_j (t_j - t_j^{-1})^{d_j})

    The denominator is kept in factored form: ``powers`` holds the exponents
    d_j >= 0 and ``sign`` is ±1. Equality is tested by cross-multiplication.
    """

    __slots__ = ("numerator", "powers", "sign")

    def __init__(self, numerator: LaurentPoly, powers: Sequence[int] | None = None, sign: int = 1):
        powers = tuple(powers) if powers is not None else (0,) * numerator.num_vars
        if len(powers) != numerator.num_vars or any(d < 0 for d in powers):
            raise DomainError("denominator powers {} are invalid".format(powers))
        if sign not in (1, -1):
            raise DomainError("denominator sign must be ±1")
        self.numerator = numerator
        self.powers = powers
        self.sign = sign

    @property
    def num_vars(self) -> int:
        return self.numerator.num_vars

    @property
    def denominator(self) -> LaurentPoly:
        return self.sign * _difference_product(self.num_vars, self.powers)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            other = LaurentFraction(other)
        if not isinstance(other, LaurentFraction):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self) -> int:
        return hash((self.num_vars,))

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return LaurentFraction(self.numerator * other, self.powers, self.sign)
        if isinstance(other, LaurentFraction):
            return LaurentFraction(self.numerator * other.numerator,
                                   [a + b for a, b in zip(self.powers, other.powers)],
                                   self.sign * other.sign)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "({}) / ({})".format(self.numerator, self.denominator)

    def __repr__(self) -> str:
        return "LaurentFraction({!r}, powers={}, sign={})".format(self.numerator, self.powers, self.sign)


def difference(num_vars: int, index: int) -> LaurentPoly:
    """t_j - t_j^{-1}"""
    return LaurentPoly.variable(num_vars, index) - LaurentPoly.variable(num_vars, index, -1)


def _difference_product(num_vars: int, powers: Sequence[int]) -> LaurentPoly:
    result = LaurentPoly.one(num_vars)
    for j, d in enumerate(powers):
        if d:
            result = result * difference(num_vars, j) ** d
    return result
