"""Signature, nullity and Alexander-type invariants of colored link models

H(omega) = prod_i (1 - conj(omega_i)) A(omega) with

    A(t) = sum over eps of eps_1...eps_mu t_1^{(1-eps_1)/2} ... t_mu^{(1-eps_mu)/2} A^eps

sigma(omega) is the signature of H(omega) and eta(omega) its nullity plus
beta0_S - 1.
"""
from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

from api.errors import DomainError, InvalidModelError, ScanLimitError
from api.hermitian import HermitianMatrix
from api.laurent import LaurentMatrix, LaurentPoly, normalize_unit
from api.logs import logger as logger_wrapper
from api.model import ColoredLinkModel, sign_product, sign_vectors, transpose
from api.settings import message, read_config, worker_count
from api.torus import TorusPoint, eval_at, grid_points


@dataclass(frozen=True)
class SignatureResult:
    sigma: int
    eta: int
    raw_nullity: int
    point: TorusPoint
    exact: bool

    def __str__(self) -> str:
        return "sigma={} eta={} exact={}".format(self.sigma, self.eta, "true" if self.exact else "false")


def alexander_matrix(m: ColoredLinkModel) -> LaurentMatrix:
    """A(t) as an n x n Laurent matrix"""
    total = LaurentMatrix.zeros(m.n, m.n, m.mu)
    for signs in sign_vectors(m.mu):
        monomial = LaurentPoly.monomial(m.mu, [0 if s == "+" else 1 for s in signs], sign_product(signs))
        total = total + LaurentMatrix.from_integers(m.seifert.matrix(signs), m.mu) * monomial
    return total


class SignatureEngine:
    """Evaluates H(omega) and its inertia for one model

    The matrix prod_i (1 - t_i^{-1}) A(t) is built once, so a scan only pays for
    the evaluation and the elimination at each point. Instances are read-only
    after construction and may be shared between threads.
    """

    def __init__(self, model: ColoredLinkModel):
        self.model = model
        factor = LaurentPoly.one(model.mu)
        for i in range(model.mu):
            factor = factor * (1 - LaurentPoly.variable(model.mu, i, -1))
        self.scaled = alexander_matrix(model) * factor

    def hermitian(self, point: TorusPoint) -> HermitianMatrix:
        if point.mu != self.model.mu:
            raise DomainError("point {} has {} coordinates, model {} has {} colors".format(
                point, point.mu, self.model.name, self.model.mu))
        rows = [[eval_at(entry, point) for entry in row] for row in self.scaled.to_rows()]
        return HermitianMatrix(rows, exact=point.is_exact())

    def signature(self, point: TorusPoint, approx_tol: float | None = None) -> SignatureResult:
        sigma, nullity = self.hermitian(point).signature_nullity(approx_tol)
        return SignatureResult(sigma, nullity + self.model.beta0_S - 1, nullity, point, point.is_exact())


def hermitian_at(m: ColoredLinkModel, point: TorusPoint) -> HermitianMatrix:
    return SignatureEngine(m).hermitian(point)


class ColoringView:
    """A coarser coloring of a model

    color_map[i - 1] is the new color of old color i; it must be onto 1..mu'.
    Signatures are evaluated at the lifted point (each old color takes its new
    color's coordinate) and corrected by the linking numbers between components
    whose distinct old colors were merged. Nullity is unchanged.
    """

    def __init__(self, model: ColoredLinkModel, color_map: Sequence[int]):
        color_map = tuple(color_map)
        if len(color_map) != model.mu:
            raise DomainError("color map {} needs {} entries".format(color_map, model.mu))
        self.mu = max(color_map) if color_map else 0
        if set(color_map) != set(range(1, self.mu + 1)):
            raise DomainError("color map {} is not onto 1..{}".format(color_map, self.mu))
        self.model = model
        self.color_map = color_map
        self.engine = SignatureEngine(model)
        old = model.colors
        self.correction = sum(
            model.linking_matrix[a][b]
            for a in range(model.nu) for b in range(a + 1, model.nu)
            if old[a] != old[b] and color_map[old[a] - 1] == color_map[old[b] - 1])

    @property
    def name(self) -> str:
        return "{}[{}]".format(self.model.name, ",".join(str(c) for c in self.color_map))

    @property
    def nu(self) -> int:
        return self.model.nu

    @property
    def beta0_S(self) -> int:
        return self.model.beta0_S

    @property
    def colors(self) -> Tuple[int, ...]:
        return tuple(self.color_map[c - 1] for c in self.model.colors)

    @property
    def total_linking(self) -> int:
        colors = self.colors
        return sum(self.model.linking_matrix[a][b]
                   for a in range(self.nu) for b in range(a + 1, self.nu) if colors[a] != colors[b])

    def cross_color_linking_vanishes(self) -> bool:
        colors = self.colors
        totals: Dict[Tuple[int, int], int] = {}
        for a in range(self.nu):
            for b in range(self.nu):
                if colors[a] < colors[b]:
                    key = (colors[a], colors[b])
                    totals[key] = totals.get(key, 0) + self.model.linking_matrix[a][b]
        return not any(totals.values())

    def lift(self, point: TorusPoint) -> TorusPoint:
        if point.mu != self.mu:
            raise DomainError("point {} has {} coordinates, coloring has {} colors".format(
                point, point.mu, self.mu))
        return TorusPoint(tuple(point.coords[c - 1] for c in self.color_map))

    def signature(self, point: TorusPoint, approx_tol: float | None = None) -> SignatureResult:
        lifted = self.engine.signature(self.lift(point), approx_tol)
        return SignatureResult(lifted.sigma - self.correction, lifted.eta, lifted.raw_nullity,
                               point, lifted.exact)

    def merged_last(self) -> ColoringView:
        """The view with its last two colors merged"""
        if self.mu < 2:
            raise DomainError("a 1-colored link has no colors to merge")
        return ColoringView(self.model, [min(c, self.mu - 1) for c in self.color_map])


Target = Union[ColoredLinkModel, ColoringView]


def as_view(target: Target) -> ColoringView:
    if isinstance(target, ColoringView):
        return target
    return ColoringView(target, range(1, target.mu + 1))


def signature(target: Target, point: TorusPoint, approx_tol: float | None = None) -> SignatureResult:
    """sigma and eta at omega for a model or a coarsened coloring of one

    Raises
    ------
    DomainError : wrong number of coordinates
    IndeterminateError : approximate eigenvalue inside the tolerance guard band
    """
    if isinstance(target, ColoringView):
        return target.signature(point, approx_tol)
    return SignatureEngine(target).signature(point, approx_tol)


def diagonal_specialize(m: Target, omega: TorusPoint) -> Tuple[int, int]:
    """Levine-Tristram signature and nullity of the underlying 1-colored link

    sigma_L(omega, ..., omega) minus the total linking between colors, and
    eta_L(omega, ..., omega).
    """
    if omega.mu != 1:
        raise DomainError("diagonal specialization takes a single coordinate, got {}".format(omega))
    view = as_view(m)
    result = ColoringView(view.model, [1] * view.model.mu).signature(omega)
    return result.sigma, result.eta


def merge_colors(m: Target, point: TorusPoint) -> SignatureResult:
    """Signature of the coloring with the last two colors merged

    The point is given in the finer coloring and its last two coordinates must be
    equal; the result is reported at the point with the last coordinate dropped.

    Raises
    ------
    DomainError : fewer than two colors or unequal last coordinates
    """
    view = as_view(m)
    if point.mu != view.mu:
        raise DomainError("point {} has {} coordinates for {} colors".format(point, point.mu, view.mu))
    if view.mu < 2 or point.coords[-1] != point.coords[-2]:
        raise DomainError("last two coordinates of {} must be equal to merge colors".format(point))
    merged = view.merged_last()
    logger_wrapper().info(message("invariants", "msg_merge", (view.mu - 1, view.mu),
                                  merged.correction - view.correction))
    return merged.signature(TorusPoint(point.coords[:-1]))


def delta0(m: ColoredLinkModel) -> LaurentPoly:
    """normalize_unit(det A(t))

    Agrees with the Alexander polynomial only up to units and powers of (1 - t_i).

    Raises
    ------
    InvalidModelError : the C-complex is not connected
    """
    if m.beta0_S != 1:
        raise InvalidModelError("delta0 needs a connected C-complex, {} has beta0_S = {}".format(
            m.name, m.beta0_S))
    return normalize_unit(alexander_matrix(m).det())


@dataclass(frozen=True)
class Presentation:
    """Presentation matrix of the Alexander module

    Attributes
    ----------
    matrix : LaurentMatrix
    column_divisors : tuple of LaurentPoly
        column j of the presentation is matrix column j divided by this entry
    localized : bool
        True when the matrix presents the module over the ring localized at the
        (t_i - 1)
    """
    matrix: LaurentMatrix
    column_divisors: Tuple[LaurentPoly, ...]
    localized: bool = False

    def __str__(self) -> str:
        lines = [str(self.matrix)] if self.matrix.rows else ["[]"]
        lines.append("divisors: " + ", ".join(str(d) for d in self.column_divisors))
        lines.append("localized: " + ("true" if self.localized else "false"))
        return "\n".join(lines)


def presentation_matrix(m: ColoredLinkModel) -> Presentation:
    """Alexander module presentation from the Seifert family

    mu = 1: tV - V^T with V = A^-. mu = 2: A(t) = t1 t2 A - t1 B - t2 B^T + A^T
    with A = A^{--}, B = A^{-+}, columns of the first beta_1(S_1) basis elements
    divided by (t2 - 1) and of the next beta_1(S_2) by (t1 - 1); the basis is
    assumed ordered S_1 cycles, S_2 cycles, clasp cycles. mu >= 3: A(t) over the
    localized ring.

    Raises
    ------
    InvalidModelError : two colors without basis_split metadata
    """
    mu, n = m.mu, m.n
    one = LaurentPoly.one(mu)
    if mu == 1:
        seifert = m.seifert.matrix("-")
        t = LaurentPoly.variable(1, 0)
        matrix = LaurentMatrix.from_integers(seifert, 1) * t - LaurentMatrix.from_integers(transpose(seifert), 1)
        return Presentation(matrix, (one,) * n)
    if mu == 2:
        if m.basis_split is None:
            raise InvalidModelError("two-color presentation of {} needs basis_split".format(m.name))
        first, second = m.basis_split
        divisors = ((LaurentPoly.variable(2, 1) - 1,) * first
                    + (LaurentPoly.variable(2, 0) - 1,) * second
                    + (one,) * (n - first - second))
        return Presentation(alexander_matrix(m), divisors)
    return Presentation(alexander_matrix(m), (one,) * n, localized=True)


def stratum_index(m: Target, point: TorusPoint) -> int:
    """The r with omega in Sigma_r minus Sigma_{r+1}, read off as eta(omega)"""
    return signature(m, point).eta


@dataclass(frozen=True)
class GridRow:
    ks: Tuple[int, ...]
    result: SignatureResult

    @property
    def point(self) -> TorusPoint:
        return self.result.point


@dataclass
class GridScan:
    """Exact evaluation on every point k/q of the punctured torus"""
    model: str
    q: int
    mu: int
    rows: List[GridRow]

    def header(self) -> List[str]:
        return ["k{}".format(i + 1) for i in range(self.mu)] + ["q", "sigma", "eta", "raw_nullity", "exact"]

    def to_csv(self, stream) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(self.header())
        for row in self.rows:
            r = row.result
            writer.writerow(list(row.ks) + [self.q, r.sigma, r.eta, r.raw_nullity, int(r.exact)])

    def lookup(self) -> Dict[Tuple[int, ...], SignatureResult]:
        return {row.ks: row.result for row in self.rows}


def scan_points(target: Target, points):
    """Evaluates signature at every point on a thread pool, in input order"""
    points = list(points)
    results = [None] * len(points)
    if not points:
        return results
    engine_target = target if isinstance(target, ColoringView) else SignatureEngine(target)
    with ThreadPoolExecutor(max_workers=worker_count(len(points))) as executor:
        futures = {executor.submit(engine_target.signature, point): index for index, point in enumerate(points)}
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    return results


def grid_scan(target: Target, q: int) -> GridScan:
    """sigma, eta at all (q - 1)^mu exact points, rows lexicographic in k

    Raises
    ------
    DomainError : q < 2
    ScanLimitError : more points than [grid] max_points
    """
    if q < 2:
        raise DomainError("grid conductor must be at least 2, got {}".format(q))
    mu = target.mu
    total = (q - 1) ** mu
    limit = int(read_config()["grid"]["max_points"])
    if total > limit:
        raise ScanLimitError(message("grid", "msg_scan_limit", total, limit))
    log = logger_wrapper()
    log.info(message("grid", "msg_scan_start", total, target.name, q, worker_count(total)))
    labelled = list(grid_points(mu, q))
    results = scan_points(target, [point for _, point in labelled])
    rows = [GridRow(ks, result) for (ks, _), result in zip(labelled, results)]
    log.info(message("grid", "msg_scan_done", target.name, len(rows)))
    return GridScan(target.name, q, mu, rows)


def strata(scan: GridScan) -> Dict[int, List[GridRow]]:
    """Rows grouped by eta, i.e. by the stratum difference they lie in"""
    groups: Dict[int, List[GridRow]] = {}
    for row in scan.rows:
        groups.setdefault(row.result.eta, []).append(row)
    return dict(sorted(groups.items()))


@dataclass(frozen=True)
class Region:
    cells: Tuple[Tuple[int, ...], ...]
    sigmas: frozenset

    @property
    def constant(self) -> bool:
        return len(self.sigmas) == 1


def constant_regions(scan: GridScan) -> List[Region]:
    """Connected components of the grid graph off the locus raw_nullity > 0

    Neighbours differ by one in a single k. Each region reports the set of sigma
    values met on it. sigma is locally constant off the zero locus, but a grid
    step may jump over a zero curve that no grid point lies on, so a region
    of a coarse scan can carry several values.
    """
    table = scan.lookup()
    free = {ks for ks, result in table.items() if result.raw_nullity == 0}
    seen = set()
    regions = []
    for start in sorted(free):
        if start in seen:
            continue
        seen.add(start)
        stack, cells = [start], []
        while stack:
            cell = stack.pop()
            cells.append(cell)
            for axis in range(scan.mu):
                for step in (-1, 1):
                    neighbour = cell[:axis] + (cell[axis] + step,) + cell[axis + 1:]
                    if neighbour in free and neighbour not in seen:
                        seen.add(neighbour)
                        stack.append(neighbour)
        regions.append(Region(tuple(sorted(cells)), frozenset(table[c].sigma for c in cells)))
    return regions
