"""Colored link models: generalized Seifert families plus combinatorial metadata

A model is immutable; mirror, reverse_color, connected_sum, disjoint_sum and
enlarge_family all return new models. Files follow the JSON layout

    {"mu": int, "nu": int, "colors": [...], "linking_matrix": [[...]...],
     "beta0_S": int, "clasp_count": int, "chi_complement": [...] | null,
     "basis_split": [...] | null, "seifert": {"<sign-string>": [[...]...], ...}}
"""
from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from api.cyclotomic import CyclotomicElement
from api.errors import DimensionError, DomainError, SchemaError
from api.hermitian import HermitianMatrix
from api.logs import logger as logger_wrapper
from api.settings import message

IntMatrix = Tuple[Tuple[int, ...], ...]


def sign_vectors(mu: int) -> List[str]:
    """All 2^mu sign strings, coordinate i is color i"""
    return ["".join(signs) for signs in product("+-", repeat=mu)]


def opposite(signs: str) -> str:
    return signs.translate(str.maketrans("+-", "-+"))


def sign_product(signs: str) -> int:
    return -1 if signs.count("-") % 2 else 1


def transpose(matrix: IntMatrix) -> IntMatrix:
    return tuple(zip(*matrix)) if matrix else ()


def block_diagonal(first: IntMatrix, second: IntMatrix) -> IntMatrix:
    n1, n2 = len(first), len(second)
    rows = [tuple(row) + (0,) * n2 for row in first]
    rows += [(0,) * n1 + tuple(row) for row in second]
    return tuple(rows)


def _freeze(matrix: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(int(v) for v in row) for row in matrix)


@dataclass(frozen=True)
class SeifertFamily:
    """The matrices A^eps for eps in {+,-}^mu, all n x n"""
    mu: int
    n: int
    matrices: Mapping[str, IntMatrix]

    @classmethod
    def from_lists(cls, mu: int, matrices: Mapping[str, Sequence[Sequence[int]]]) -> SeifertFamily:
        frozen = {signs: _freeze(m) for signs, m in matrices.items()}
        n = len(next(iter(frozen.values()))) if frozen else 0
        return cls(mu, n, frozen)

    def matrix(self, signs: str) -> IntMatrix:
        return self.matrices[signs]

    def negated(self) -> SeifertFamily:
        return SeifertFamily(self.mu, self.n, {
            signs: tuple(tuple(-v for v in row) for row in m) for signs, m in self.matrices.items()})

    def flipped(self, color: int) -> SeifertFamily:
        """Re-keys by flipping coordinate color (1-based)"""
        def flip(signs):
            index = color - 1
            return signs[:index] + opposite(signs[index]) + signs[index + 1:]
        return SeifertFamily(self.mu, self.n, {flip(signs): m for signs, m in self.matrices.items()})


@dataclass(frozen=True)
class ColoredLinkModel:
    """A mu-colored link presented by its Seifert family

    Attributes
    ----------
    mu : int
        number of colors
    nu : int
        number of components
    colors : tuple of int
        color of each component, values 1..mu
    linking_matrix : tuple of tuples
        lk(K_i, K_j), symmetric with zero diagonal
    seifert : SeifertFamily
    beta0_S : int
        number of connected components of the C-complex
    clasp_count : int
    chi_complement : tuple or None
        Euler characteristics chi(S - S_j), needed by the Conway potential
    basis_split : tuple or None
        first Betti numbers of the S_j in basis order, needed by the two-color
        presentation matrix
    name : str
        model id for reports, not part of the file format
    """
    mu: int
    nu: int
    colors: Tuple[int, ...]
    linking_matrix: IntMatrix
    seifert: SeifertFamily
    beta0_S: int = 1
    clasp_count: int = 0
    chi_complement: Optional[Tuple[int, ...]] = None
    basis_split: Optional[Tuple[int, ...]] = None
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return self.seifert.n

    def color_linking(self, first: int, second: int) -> int:
        """lk(L_first, L_second) of the two monochromatic sublinks"""
        return sum(self.linking_matrix[a][b]
                   for a in range(self.nu) for b in range(self.nu)
                   if self.colors[a] == first and self.colors[b] == second)

    @property
    def total_linking(self) -> int:
        """Sum over color pairs i < j of lk(L_i, L_j)"""
        return sum(self.linking_matrix[a][b]
                   for a in range(self.nu) for b in range(a + 1, self.nu)
                   if self.colors[a] != self.colors[b])

    def cross_color_linking_vanishes(self) -> bool:
        return all(self.color_linking(i, j) == 0
                   for i in range(1, self.mu + 1) for j in range(i + 1, self.mu + 1))

    def to_json(self) -> dict:
        return {
            "mu": self.mu,
            "nu": self.nu,
            "colors": list(self.colors),
            "linking_matrix": [list(row) for row in self.linking_matrix],
            "beta0_S": self.beta0_S,
            "clasp_count": self.clasp_count,
            "chi_complement": list(self.chi_complement) if self.chi_complement is not None else None,
            "basis_split": list(self.basis_split) if self.basis_split is not None else None,
            "seifert": {signs: [list(row) for row in self.seifert.matrix(signs)]
                        for signs in sign_vectors(self.mu) if signs in self.seifert.matrices},
        }


@dataclass(frozen=True)
class HermitianMoveSpec:
    """Data of an elementary enlargement [[H, xi, 0], [xi*, lam, alpha], [0, conj(alpha), 0]]"""
    kind: str
    xi: Tuple[Union[CyclotomicElement, complex], ...] = ()
    lam: Union[Fraction, float] = Fraction(0)
    alpha: Union[CyclotomicElement, complex, int] = 1

    def __post_init__(self):
        if self.kind not in ("enlargement", "reduction"):
            raise DomainError("move kind must be enlargement or reduction, got {}".format(self.kind))
        if self.kind == "enlargement" and not self.alpha:
            raise DomainError("alpha must be nonzero")


def validate(m: ColoredLinkModel) -> List[str]:
    """Violated invariants of a model, empty when the model is valid"""
    violations = []
    if m.mu < 1:
        violations.append("colors: mu must be positive")
    if len(m.colors) != m.nu:
        violations.append("colors: {} colors for {} components".format(len(m.colors), m.nu))
    if set(m.colors) != set(range(1, m.mu + 1)):
        violations.append("color surjectivity: colors {} do not cover 1..{}".format(sorted(set(m.colors)), m.mu))
    lk = m.linking_matrix
    if len(lk) != m.nu or any(len(row) != m.nu for row in lk):
        violations.append("linking matrix: shape is not {}x{}".format(m.nu, m.nu))
    else:
        if any(lk[i][j] != lk[j][i] for i in range(m.nu) for j in range(m.nu)):
            violations.append("linking matrix: not symmetric")
        if any(lk[i][i] for i in range(m.nu)):
            violations.append("linking matrix: nonzero diagonal")
    family = m.seifert
    expected = set(sign_vectors(m.mu))
    if family.mu != m.mu or set(family.matrices) != expected:
        violations.append("seifert keys: expected the {} sign vectors of length {}".format(2 ** m.mu, m.mu))
    for signs, matrix in family.matrices.items():
        if len(matrix) != family.n or any(len(row) != family.n for row in matrix):
            violations.append("seifert size: A^{} is not {}x{}".format(signs, family.n, family.n))
    if not violations:
        for signs in sign_vectors(m.mu):
            other = opposite(signs)
            if signs < other and family.matrix(other) != transpose(family.matrix(signs)):
                violations.append("transpose symmetry: A^{} != (A^{})^T".format(other, signs))
    if m.beta0_S < 1:
        violations.append("beta0_S: must be positive")
    if m.clasp_count < 0:
        violations.append("clasp_count: must be non-negative")
    elif m.beta0_S == 1 and not violations and (m.clasp_count - m.total_linking) % 2:
        violations.append("clasp parity: c = {} and total linking {} differ mod 2".format(
            m.clasp_count, m.total_linking))
    if m.chi_complement is not None and len(m.chi_complement) != m.mu:
        violations.append("chi_complement: expected {} values".format(m.mu))
    if m.basis_split is not None:
        if len(m.basis_split) != m.mu or any(b < 0 for b in m.basis_split):
            violations.append("basis_split: expected {} non-negative values".format(m.mu))
        elif sum(m.basis_split) > family.n:
            violations.append("basis_split: total {} exceeds matrix size {}".format(sum(m.basis_split), family.n))
    return violations


def mirror(m: ColoredLinkModel) -> ColoredLinkModel:
    """Mirror image: every A^eps and every linking number negated"""
    return replace(m, seifert=m.seifert.negated(),
                   linking_matrix=tuple(tuple(-v for v in row) for row in m.linking_matrix),
                   name="mirror({})".format(m.name))


def reverse_color(m: ColoredLinkModel, color: int) -> ColoredLinkModel:
    """Reverses the orientation of every component of one color

    Raises
    ------
    DomainError : color outside 1..mu
    """
    if not 1 <= color <= m.mu:
        raise DomainError("color {} outside 1..{}".format(color, m.mu))
    lk = tuple(tuple(-v if (m.colors[a] == color) != (m.colors[b] == color) else v
                     for b, v in enumerate(row)) for a, row in enumerate(m.linking_matrix))
    return replace(m, seifert=m.seifert.flipped(color), linking_matrix=lk,
                   name="reverse({}, {})".format(m.name, color))


def connected_sum(a: ColoredLinkModel, b: ColoredLinkModel,
                  shared_color_of_a: int, shared_color_of_b: int) -> ColoredLinkModel:
    """Band sum of one component of color shared_color_of_a in a with one of color
    shared_color_of_b in b

    The glued colors are identified; b's other colors follow a's, in order. The
    first component of each glued color is the one banded together.

    Raises
    ------
    DomainError : color index outside its model's range
    """
    if not 1 <= shared_color_of_a <= a.mu or not 1 <= shared_color_of_b <= b.mu:
        raise DomainError("shared colors ({}, {}) out of range".format(shared_color_of_a, shared_color_of_b))
    recolor: Dict[int, int] = {shared_color_of_b: shared_color_of_a}
    for color in range(1, b.mu + 1):
        if color != shared_color_of_b:
            recolor[color] = a.mu + len(recolor)
    mu = a.mu + b.mu - 1
    matrices = {}
    for signs in sign_vectors(mu):
        signs_b = "".join(signs[recolor[color] - 1] for color in range(1, b.mu + 1))
        matrices[signs] = block_diagonal(a.seifert.matrix(signs[:a.mu]), b.seifert.matrix(signs_b))

    glued_a = a.colors.index(shared_color_of_a)
    glued_b = b.colors.index(shared_color_of_b)
    kept_b = [j for j in range(b.nu) if j != glued_b]
    position = {glued_b: glued_a}
    position.update({j: a.nu + index for index, j in enumerate(kept_b)})
    nu = a.nu + len(kept_b)
    lk = [[0] * nu for _ in range(nu)]
    for i in range(a.nu):
        for j in range(a.nu):
            lk[i][j] = a.linking_matrix[i][j]
    for i in range(b.nu):
        for j in range(b.nu):
            if i != j:
                lk[position[i]][position[j]] = b.linking_matrix[i][j]
    colors = a.colors + tuple(recolor[b.colors[j]] for j in kept_b)
    return ColoredLinkModel(
        mu=mu, nu=nu, colors=colors, linking_matrix=_freeze(lk),
        seifert=SeifertFamily(mu, a.n + b.n, matrices),
        beta0_S=a.beta0_S + b.beta0_S - 1,
        clasp_count=a.clasp_count + b.clasp_count,
        chi_complement=(0,) if a.mu == b.mu == 1 else None,
        name="{}#{}".format(a.name, b.name))


def disjoint_sum(a: ColoredLinkModel, b: ColoredLinkModel) -> ColoredLinkModel:
    """Split union with b's colors numbered after a's"""
    mu = a.mu + b.mu
    matrices = {signs: block_diagonal(a.seifert.matrix(signs[:a.mu]), b.seifert.matrix(signs[a.mu:]))
                for signs in sign_vectors(mu)}
    nu = a.nu + b.nu
    lk = block_diagonal(a.linking_matrix, b.linking_matrix) if nu else ()
    return ColoredLinkModel(
        mu=mu, nu=nu, colors=a.colors + tuple(c + a.mu for c in b.colors), linking_matrix=lk,
        seifert=SeifertFamily(mu, a.n + b.n, matrices),
        beta0_S=a.beta0_S + b.beta0_S, clasp_count=a.clasp_count + b.clasp_count,
        name="{}+{}".format(a.name, b.name))


def apply_hermitian_move(h: HermitianMatrix, spec: HermitianMoveSpec) -> HermitianMatrix:
    """Elementary enlargement or reduction; signature and nullity are unchanged

    Raises
    ------
    DimensionError : xi does not match the matrix size
    DomainError : reduction target lacks the enlargement block shape
    """
    if spec.kind == "reduction":
        return _reduce_move(h)
    if len(spec.xi) != h.size:
        raise DimensionError("xi has {} entries for a {}x{} matrix".format(len(spec.xi), h.size, h.size))
    if h.exact:
        zero = CyclotomicElement.zero()
        xi = [x if isinstance(x, CyclotomicElement) else CyclotomicElement.rational(x) for x in spec.xi]
        lam = CyclotomicElement.rational(spec.lam)
        alpha = spec.alpha if isinstance(spec.alpha, CyclotomicElement) else CyclotomicElement.rational(spec.alpha)
    else:
        zero = 0j
        xi = [complex(x.to_complex() if isinstance(x, CyclotomicElement) else x) for x in spec.xi]
        lam = complex(spec.lam)
        alpha = complex(spec.alpha.to_complex() if isinstance(spec.alpha, CyclotomicElement) else spec.alpha)
    rows = [list(row) + [xi[i], zero] for i, row in enumerate(h.rows())]
    rows.append([x.conjugate() for x in xi] + [lam, alpha])
    rows.append([zero] * h.size + [alpha.conjugate(), zero])
    return HermitianMatrix(rows, exact=h.exact)


def _reduce_move(h: HermitianMatrix) -> HermitianMatrix:
    n = h.size - 2
    if n < 0:
        raise DomainError("malformed reduction target: size {} < 2".format(h.size))
    last = h.size - 1
    shaped = (h[last, n] != 0 and h[last, last] == 0
              and all(h[last, j] == 0 for j in range(n)) and all(h[i, last] == 0 for i in range(n)))
    if not shaped:
        raise DomainError("malformed reduction target: last row is not (0, ..., 0, alpha, 0)")
    return HermitianMatrix([row[:n] for row in h.rows()[:n]], exact=h.exact, check=False)


def enlarge_family(m: ColoredLinkModel, colors: Sequence[int], rng: random.Random) -> ColoredLinkModel:
    """Family-level elementary enlargement

    Adds two basis elements to every A^eps in the block shape

        [[A^eps, u^eps, 0], [u^{-eps}^T, x^eps, p(eps)], [0, p(-eps), 0]]

    with random u, x (x^eps = x^{-eps}) and p(eps) = 1 exactly when eps_i = +
    (one color i) or eps_i = + and eps_j = - (two colors i, j). The induced H(omega)
    is an elementary enlargement of the old one, so signature and nullity are
    preserved. Potential and presentation metadata is dropped.

    Raises
    ------
    DomainError : colors not one or two distinct indices in 1..mu
    """
    colors = tuple(colors)
    if len(colors) not in (1, 2) or len(set(colors)) != len(colors) \
            or any(not 1 <= c <= m.mu for c in colors):
        raise DomainError("enlargement needs one or two distinct colors in 1..{}".format(m.mu))
    n = m.n

    def corner(signs: str) -> int:
        if signs[colors[0] - 1] != "+":
            return 0
        return 1 if len(colors) == 1 or signs[colors[1] - 1] == "-" else 0

    columns = {signs: [rng.randint(-2, 2) for _ in range(n)] for signs in sign_vectors(m.mu)}
    diagonal = {}
    for signs in sign_vectors(m.mu):
        if signs not in diagonal:
            diagonal[signs] = diagonal[opposite(signs)] = rng.randint(-2, 2)
    matrices = {}
    for signs in sign_vectors(m.mu):
        old = m.seifert.matrix(signs)
        rows = [tuple(old[i]) + (columns[signs][i], 0) for i in range(n)]
        rows.append(tuple(columns[opposite(signs)]) + (diagonal[signs], corner(signs)))
        rows.append((0,) * n + (corner(opposite(signs)), 0))
        matrices[signs] = tuple(rows)
    return replace(m, seifert=SeifertFamily(m.mu, n + 2, matrices),
                   chi_complement=None, basis_split=None)


# -- file format ---------------------------------------------------------


def _expect_int(value, path: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, "expected an integer")
    if minimum is not None and value < minimum:
        raise SchemaError(path, "expected an integer >= {}".format(minimum))
    return value


def _expect_int_list(value, path: str) -> Tuple[int, ...]:
    if not isinstance(value, list):
        raise SchemaError(path, "expected a list")
    return tuple(_expect_int(v, "{}[{}]".format(path, i)) for i, v in enumerate(value))


def _expect_matrix(value, path: str) -> IntMatrix:
    if not isinstance(value, list):
        raise SchemaError(path, "expected a list of rows")
    return tuple(_expect_int_list(row, "{}[{}]".format(path, i)) for i, row in enumerate(value))


def from_json(data, name: str = "") -> ColoredLinkModel:
    """Builds a model from parsed JSON, reporting schema errors with their JSON path"""
    if not isinstance(data, dict):
        raise SchemaError("$", "expected an object")
    for key in ("mu", "nu", "colors", "linking_matrix", "beta0_S", "clasp_count", "seifert"):
        if key not in data:
            raise SchemaError("$.{}".format(key), "missing key")
    mu = _expect_int(data["mu"], "$.mu", 1)
    nu = _expect_int(data["nu"], "$.nu", 1)
    colors = _expect_int_list(data["colors"], "$.colors")
    linking = _expect_matrix(data["linking_matrix"], "$.linking_matrix")
    beta0 = _expect_int(data["beta0_S"], "$.beta0_S")
    clasps = _expect_int(data["clasp_count"], "$.clasp_count")
    optional = {}
    for key in ("chi_complement", "basis_split"):
        value = data.get(key)
        optional[key] = None if value is None else _expect_int_list(value, "$.{}".format(key))
    seifert = data["seifert"]
    if not isinstance(seifert, dict):
        raise SchemaError("$.seifert", "expected an object keyed by sign strings")
    expected = sign_vectors(mu)
    for signs in seifert:
        if signs not in expected:
            raise SchemaError("$.seifert['{}']".format(signs), "unexpected sign vector for mu={}".format(mu))
    matrices = {}
    size = None
    for signs in expected:
        path = "$.seifert['{}']".format(signs)
        if signs not in seifert:
            raise SchemaError(path, "missing sign vector")
        matrix = _expect_matrix(seifert[signs], path)
        if size is None:
            size = len(matrix)
        if len(matrix) != size:
            raise SchemaError(path, "expected {} rows".format(size))
        for i, row in enumerate(matrix):
            if len(row) != size:
                raise SchemaError("{}[{}]".format(path, i), "expected {} entries".format(size))
        matrices[signs] = matrix
    return ColoredLinkModel(
        mu=mu, nu=nu, colors=colors, linking_matrix=linking,
        seifert=SeifertFamily(mu, size or 0, matrices),
        beta0_S=beta0, clasp_count=clasps,
        chi_complement=optional["chi_complement"], basis_split=optional["basis_split"],
        name=name)


def load(path: str) -> ColoredLinkModel:
    """Reads a model file; the model name is the file stem

    Raises
    ------
    SchemaError : malformed JSON or schema violation, with its JSON path
    """
    with open(path, encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as error:
            raise SchemaError("$", "invalid JSON: {}".format(error))
    name = os.path.splitext(os.path.basename(path))[0]
    model = from_json(data, name)
    logger_wrapper().info(message("model", "msg_model_loaded", name, model.mu, model.n))
    return model


def save(model: ColoredLinkModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(model.to_json(), handle, indent=2)
        handle.write("\n")
    logger_wrapper().info(message("model", "msg_model_saved", path))
