"""Hermitian matrices over Q(zeta_q) or floating complex numbers, and their inertia"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import numpy as np
from mpmath.ctx_mp import MPContext

from api.cyclotomic import CyclotomicElement
from api.errors import DimensionError, DomainError, IndeterminateError
from api.logs import logger as logger_wrapper
from api.settings import message, read_config

Entry = Union[CyclotomicElement, complex]


class HermitianMatrix:
    """Square Hermitian matrix in exact or approximate mode

    Attributes
    ----------
    size : int
        number of rows
    exact : bool
        True for CyclotomicElement entries, False for complex floats

    Construction checks entry (j, i) against the conjugate of entry (i, j),
    exactly in exact mode and to [numeric] approx_tol otherwise.
    """

    __slots__ = ("size", "exact", "_rows")

    def __init__(self, rows: Sequence[Sequence[Entry]], exact: bool = True, check: bool = True):
        self.size = len(rows)
        if any(len(row) != self.size for row in rows):
            raise DimensionError("Hermitian matrix must be square")
        self.exact = exact
        if exact:
            self._rows = tuple(tuple(e if isinstance(e, CyclotomicElement) else CyclotomicElement.rational(e)
                                     for e in row) for row in rows)
        else:
            self._rows = tuple(tuple(complex(e.to_complex() if isinstance(e, CyclotomicElement) else e)
                                     for e in row) for row in rows)
        if check:
            self._check_hermitian()

    @classmethod
    def from_integers(cls, rows: Sequence[Sequence[int]]) -> HermitianMatrix:
        return cls([[CyclotomicElement.rational(v) for v in row] for row in rows], exact=True)

    @classmethod
    def from_complex(cls, rows) -> HermitianMatrix:
        return cls([[complex(v) for v in row] for row in rows], exact=False)

    def _check_hermitian(self):
        if self.exact:
            for i in range(self.size):
                for j in range(i, self.size):
                    if self._rows[j][i] != self._rows[i][j].conjugate():
                        raise DomainError(message("numeric", "msg_not_hermitian", i, j))
            return
        array = self.to_numpy()
        tol = float(read_config()["numeric"]["approx_tol"])
        scale = max(1.0, float(np.abs(array).max())) if self.size else 1.0
        bad = np.argwhere(np.abs(array - array.conj().T) > tol * scale)
        if len(bad):
            raise DomainError(message("numeric", "msg_not_hermitian", *bad[0]))

    def __getitem__(self, index: Tuple[int, int]) -> Entry:
        i, j = index
        return self._rows[i][j]

    def rows(self) -> List[List[Entry]]:
        return [list(row) for row in self._rows]

    @property
    def conductor(self) -> int:
        if not self.exact:
            raise DomainError("approximate matrices have no conductor")
        return math.lcm(1, *(e.q for row in self._rows for e in row))

    def to_numpy(self) -> np.ndarray:
        if self.exact:
            return np.array([[e.to_complex() for e in row] for row in self._rows],
                            dtype=complex).reshape(self.size, self.size)
        return np.array(self._rows, dtype=complex).reshape(self.size, self.size)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        if self.exact != other.exact or self.size != other.size:
            return False
        if self.exact:
            return self._rows == other._rows
        return bool(np.allclose(self.to_numpy(), other.to_numpy()))

    def __hash__(self) -> int:
        return hash((self.size, self.exact))

    def signature_nullity(self, tol: float | None = None) -> Tuple[int, int]:
        return signature_nullity(self, tol)

    def determinant(self) -> Entry:
        """Exact determinant by Gaussian elimination over Q(zeta_q), numpy otherwise"""
        if not self.exact:
            return complex(np.linalg.det(self.to_numpy())) if self.size else 1 + 0j
        work = self.rows()
        n = self.size
        result = CyclotomicElement.rational(1)
        for k in range(n):
            pivot_row = next((i for i in range(k, n) if not work[i][k].is_zero()), None)
            if pivot_row is None:
                return CyclotomicElement.zero()
            if pivot_row != k:
                work[k], work[pivot_row] = work[pivot_row], work[k]
                result = -result
            pivot = work[k][k]
            result = result * pivot
            inverse = pivot.inverse()
            for i in range(k + 1, n):
                if work[i][k].is_zero():
                    continue
                factor = work[i][k] * inverse
                for j in range(k + 1, n):
                    work[i][j] = work[i][j] - factor * work[k][j]
        return result

    def bordered(self, column: Sequence[Entry], corner: Union[Entry, Fraction, int]) -> HermitianMatrix:
        """[[H, v], [v*, corner]]"""
        if len(column) != self.size:
            raise DimensionError("border of length {} for size {}".format(len(column), self.size))
        if self.exact:
            column = [c if isinstance(c, CyclotomicElement) else CyclotomicElement.rational(c) for c in column]
            corner = corner if isinstance(corner, CyclotomicElement) else CyclotomicElement.rational(corner)
            conj = [c.conjugate() for c in column]
        else:
            column = [complex(c) for c in column]
            corner = complex(corner)
            conj = [c.conjugate() for c in column]
        rows = [list(row) + [column[i]] for i, row in enumerate(self._rows)]
        rows.append(conj + [corner])
        return HermitianMatrix(rows, exact=self.exact)

    def __repr__(self) -> str:
        return "HermitianMatrix(size={}, exact={})".format(self.size, self.exact)


def signature_nullity(h: HermitianMatrix, tol: float | None = None) -> Tuple[int, int]:
    """Signature and nullity of a Hermitian matrix

    Exact mode runs a sign-scaled symmetric elimination over Q(zeta_q). Each step
    replaces the working block by a positive multiple of a Schur complement, so
    inertia is tracked with no division:

    - nonzero diagonal pivot d: contributes sgn(d), new block
      sgn(d) * (d * h_ab - h_ai * h_ib)
    - all diagonals zero, lexicographically first h_ij = a != 0: a hyperbolic pair
      contributing signature 0 and rank 2, new block
      a*conj(a) * h_uv - (h_ui * a * h_jv + h_uj * conj(a) * h_iv)
    - zero block: its size adds to the nullity

    Approximate mode counts numpy eigenvalues against the relative tolerance tol.

    Raises
    ------
    IndeterminateError : approximate eigenvalue inside (tol/8, 8 tol)
    """
    if h.exact:
        return _exact_inertia(h.rows())
    if tol is None:
        tol = float(read_config()["numeric"]["approx_tol"])
    return _approx_inertia(h.to_numpy(), tol)


def _exact_inertia(block: List[List[CyclotomicElement]]) -> Tuple[int, int]:
    signature, nullity = 0, 0
    log = logger_wrapper()
    while block:
        n = len(block)
        pivot = next((i for i in range(n) if not block[i][i].is_zero()), None)
        if pivot is not None:
            d = block[pivot][pivot]
            s = d.sign()
            signature += s
            rest = [r for r in range(n) if r != pivot]
            block = [[(d * block[a][b] - block[a][pivot] * block[pivot][b]) * s for b in rest] for a in rest]
            log.debug("pivot %d sign %d, %d rows left", pivot, s, n - 1)
        else:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if not block[i][j].is_zero()), None)
            if pair is None:
                nullity += n
                break
            i, j = pair
            a = block[i][j]
            a_bar = a.conjugate()
            norm = a * a_bar
            rest = [r for r in range(n) if r not in pair]
            block = [[norm * block[u][v] - (block[u][i] * a * block[j][v] + block[u][j] * a_bar * block[i][v])
                      for v in rest] for u in rest]
            log.debug("hyperbolic pair (%d, %d), %d rows left", i, j, n - 2)
        block = _primitive(block)
    return signature, nullity


def _primitive(block: List[List[CyclotomicElement]]) -> List[List[CyclotomicElement]]:
    """Rescales by a positive rational so all coefficients are coprime integers"""
    common, content = 1, 0
    for row in block:
        for entry in row:
            common = math.lcm(common, entry.scaled_integers()[0])
    for row in block:
        for entry in row:
            for c in entry.coeffs:
                content = math.gcd(content, int(c * common))
    if content == 0:
        return block
    factor = Fraction(common, content)
    if factor == 1:
        return block
    return [[entry * factor for entry in row] for row in block]


def _approx_inertia(array: np.ndarray, tol: float) -> Tuple[int, int]:
    if array.shape[0] == 0:
        return 0, 0
    eigenvalues = np.linalg.eigvalsh(array)
    scale = float(np.abs(eigenvalues).max())
    if scale == 0.0:
        return 0, array.shape[0]
    signature, nullity = 0, 0
    for value in eigenvalues:
        magnitude = abs(value) / scale
        if tol / 8 < magnitude < 8 * tol:
            raise IndeterminateError(message("numeric", "msg_indeterminate", value, tol))
        if magnitude <= tol / 8:
            nullity += 1
        else:
            signature += 1 if value > 0 else -1
    return signature, nullity


def eigen_oracle(h: HermitianMatrix, bits: int | None = None) -> Tuple[int, int]:
    """Signature and nullity from mpmath eigenvalues at high precision

    Independent of the elimination engine; eigenvalues below 2^(-bits/2) relative
    to the largest one count as zero.
    """
    if bits is None:
        bits = int(read_config()["numeric"]["oracle_precision"])
    if h.size == 0:
        return 0, 0
    ctx = MPContext()
    ctx.prec = bits
    matrix = ctx.matrix(h.size, h.size)
    for i in range(h.size):
        for j in range(h.size):
            matrix[i, j] = _mp_entry(ctx, h[i, j])
    eigenvalues = ctx.eighe(matrix, eigvals_only=True)
    values = [ctx.re(eigenvalues[i]) for i in range(h.size)]
    scale = max(abs(v) for v in values)
    if scale == 0:
        return 0, h.size
    threshold = scale * ctx.mpf(2) ** (-bits // 2)
    signature = sum(1 if v > 0 else -1 for v in values if abs(v) > threshold)
    nullity = sum(1 for v in values if abs(v) <= threshold)
    return signature, nullity


def _mp_entry(ctx, entry: Entry):
    if not isinstance(entry, CyclotomicElement):
        return ctx.mpc(entry.real, entry.imag)
    total = ctx.mpc(0)
    for k, c in enumerate(entry.coeffs):
        if c:
            angle = 2 * ctx.pi * k / entry.q
            total += ctx.mpc(ctx.cos(angle), ctx.sin(angle)) * ctx.mpf(c.numerator) / c.denominator
    return total
