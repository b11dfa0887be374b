"""Slice and concordance obstructions, and the Casson-Gordon surgery formula

Signature and nullity are concordance invariants on prime-power points, so every
check here restricts to those points. An empty obstruction report means no
obstruction was found, not that the link is slice.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Tuple

from api.errors import DomainError, InapplicableError
from api.hermitian import HermitianMatrix
from api.invariants import Target, scan_points, signature
from api.logs import logger as logger_wrapper
from api.settings import message
from api.torus import Exact, TorusPoint, classify, prime_power_points


@dataclass(frozen=True)
class SurgeryData:
    """Framed link data for the surgery formula

    Attributes
    ----------
    nu : int
        number of components
    framed_linking : tuple of tuples
        symmetric linking matrix with the framings on the diagonal
    q : int
        order of the character
    n : tuple of int
        character values, each coprime to q
    """
    nu: int
    framed_linking: Tuple[Tuple[int, ...], ...]
    q: int
    n: Tuple[int, ...]

    def __post_init__(self):
        matrix = self.framed_linking
        if len(matrix) != self.nu or any(len(row) != self.nu for row in matrix):
            raise DomainError("framed linking matrix must be {}x{}".format(self.nu, self.nu))
        if any(matrix[i][j] != matrix[j][i] for i in range(self.nu) for j in range(self.nu)):
            raise DomainError("framed linking matrix must be symmetric")
        if self.q < 2:
            raise DomainError("character order must be at least 2")
        if len(self.n) != self.nu or any(math.gcd(v, self.q) != 1 for v in self.n):
            raise DomainError("need {} character values coprime to {}".format(self.nu, self.q))


@dataclass(frozen=True)
class SurfaceBudget:
    beta1: int
    c: int = 0
    genus: int = 0

    def __post_init__(self):
        if self.beta1 < 0 or self.c < 0 or self.genus < 0:
            raise DomainError("surface budget entries must be non-negative")


def concordance_domain(point: TorusPoint) -> bool:
    """True on the prime-power points, where sigma and eta are concordance invariants"""
    return classify(point).in_T_P


def murasugi_tristram_ok(sigma: int, eta: int, mu: int, budget: SurfaceBudget) -> bool:
    """|sigma| + |eta - mu + 1| <= beta1 + c"""
    return abs(sigma) + abs(eta - mu + 1) <= budget.beta1 + budget.c


def closed_surface_ok(sigma: int, eta: int, mu: int, budget: SurfaceBudget) -> bool:
    """|sigma| <= genus + min(0, eta + 1 - mu) for a closed surface in S^4 meeting S^3 in the link"""
    return abs(sigma) <= budget.genus + min(0, eta + 1 - mu)


def _require_unlinked_colors(target: Target):
    if not target.cross_color_linking_vanishes():
        raise InapplicableError(message("obstructions", "msg_linking_nonzero", target.name))


def slice_genus_lower_bound(target: Target, points: Iterable[TorusPoint]) -> int:
    """max over prime-power points of |sigma| - min(0, eta + 1 - mu)

    Points outside the prime-power torus are skipped with a warning.

    Raises
    ------
    InapplicableError : linking between different colors does not vanish
    """
    _require_unlinked_colors(target)
    log = logger_wrapper()
    bound = 0
    for point in points:
        if not concordance_domain(point):
            log.warning(message("obstructions", "msg_skip_point", point))
            continue
        result = signature(target, point)
        bound = max(bound, abs(result.sigma) - min(0, result.eta + 1 - target.mu))
    return bound


@dataclass(frozen=True)
class Witness:
    point: TorusPoint
    sigma: int
    eta: int
    violated: str

    def to_json(self) -> dict:
        return {"point": str(self.point), "sigma": self.sigma, "eta": self.eta, "violated": self.violated}


@dataclass
class SliceReport:
    """Witnesses of non-sliceness in the colored sense

    linking_nonzero is set when linking between different colors already rules
    out disjoint slice surfaces; the scan still runs.
    """
    model: str
    max_q: int
    witnesses: List[Witness] = field(default_factory=list)
    linking_nonzero: bool = False
    points_checked: int = 0

    def to_json(self) -> List[dict]:
        return [w.to_json() for w in self.witnesses]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def slice_obstruction(target: Target, max_q: int) -> SliceReport:
    """Scans prime-power points with conductor <= max_q for sigma != 0 or eta < mu - 1

    Each violated condition at a point is one witness; witnesses are ordered by
    conductor, then coordinates.
    """
    if max_q < 2:
        raise DomainError("max_q must be at least 2, got {}".format(max_q))
    log = logger_wrapper()
    report = SliceReport(target.name, max_q)
    if not target.cross_color_linking_vanishes():
        report.linking_nonzero = True
        log.warning(message("obstructions", "msg_linking_nonzero", target.name))
    points = prime_power_points(target.mu, max_q)
    for result in scan_points(target, points):
        if result.sigma != 0:
            report.witnesses.append(Witness(result.point, result.sigma, result.eta, "sigma-nonzero"))
        if result.eta < target.mu - 1:
            report.witnesses.append(Witness(result.point, result.sigma, result.eta, "eta-too-small"))
    report.points_checked = len(points)
    for witness in report.witnesses:
        log.info(message("obstructions", "msg_witness", witness.point, witness.violated))
    return report


def casson_gordon(s: SurgeryData, sigma_L_at: int) -> Fraction:
    """sigma(M, chi) for the manifold obtained by surgery

        (sigma_L - sum_{i<j} L_ij) - sign(L) + (2 / q^2) sum_{i,j} (q - n_i) n_j L_ij

    sign(L) is computed exactly.
    """
    matrix = s.framed_linking
    off_diagonal = sum(matrix[i][j] for i in range(s.nu) for j in range(i + 1, s.nu))
    sign_lambda = HermitianMatrix.from_integers(matrix).signature_nullity()[0]
    correction = sum((s.q - s.n[i]) * s.n[j] * matrix[i][j] for i in range(s.nu) for j in range(s.nu))
    return Fraction(sigma_L_at - off_diagonal - sign_lambda) + Fraction(2 * correction, s.q ** 2)


def casson_gordon_point(s: SurgeryData) -> TorusPoint:
    """(alpha^{n_1}, ..., alpha^{n_nu}) with alpha = exp(2 pi i / q)"""
    return TorusPoint(tuple(Exact.of(v, s.q) for v in s.n))


def casson_gordon_invariants(s: SurgeryData, model: Target) -> Tuple[Fraction, int]:
    """(sigma(M, chi), eta(M, chi)) with eta(M, chi) = eta_L(omega)

    The model must color each component by its own color.
    """
    if model.mu != s.nu or model.nu != s.nu:
        raise DomainError("surgery on {} components needs a {}-colored model with one component per color".format(
            s.nu, s.nu))
    result = signature(model, casson_gordon_point(s))
    return casson_gordon(s, result.sigma), result.eta


def mod2_congruence_holds(target: Target, sigma: int, eta: int) -> bool:
    """sigma + eta = nu + total linking + 1 mod 2"""
    return (sigma + eta - target.nu - target.total_linking - 1) % 2 == 0
