"""Property suites run by ``clasp.py verify``

Each suite returns a SuiteResult; a failing suite carries the first
counterexample. Models that fail validation are reported and left out of every
later suite.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import wraps
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from api.conway import (alexander_from_potential, evaluate_potential, levine_tristram_recursion_demo,
                        local_move_b, mod4_check, potential)
from api.cyclotomic import CyclotomicElement
from api.errors import ClaspError
from api.hermitian import eigen_oracle
from api.invariants import GridScan, SignatureEngine, constant_regions, delta0, diagonal_specialize, grid_scan
from api.laurent import LaurentMatrix, LaurentPoly, det_expansion, normalize_unit
from api.logs import logger as logger_wrapper
from api.model import (ColoredLinkModel, HermitianMoveSpec, SeifertFamily, apply_hermitian_move,
                       connected_sum, disjoint_sum, enlarge_family, mirror, opposite, reverse_color, sign_vectors,
                       transpose, validate)
from api.obstructions import (SurfaceBudget, SurgeryData, casson_gordon, closed_surface_ok, mod2_congruence_holds,
                              slice_genus_lower_bound, slice_obstruction)
from api.settings import message, read_config
from api.torus import Exact, TorusPoint, eval_at, grid_points, prime_power_points


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        if self.passed:
            return message("verify", "msg_suite_pass", self.name)
        return message("verify", "msg_suite_fail", self.name, self.detail)


class PropertyFailure(Exception):
    """Counterexample found by a suite"""


def suite(name_template: str):
    """Turns a check raising PropertyFailure into a SuiteResult"""
    def decorate(func: Callable):
        @wraps(func)
        def wrapper(self, *args):
            name = name_template.format(*(getattr(a, "name", a) for a in args))
            try:
                func(self, *args)
            except PropertyFailure as failure:
                return SuiteResult(name, False, str(failure))
            except ClaspError as error:
                return SuiteResult(name, False, "{}: {}".format(type(error).__name__, error))
            return SuiteResult(name, True)
        return wrapper
    return decorate


def random_poly(rng: random.Random, num_vars: int, terms: int = 3, degree: int = 2) -> LaurentPoly:
    poly = LaurentPoly.zero(num_vars)
    for _ in range(rng.randint(1, terms)):
        exponents = [rng.randint(-degree, degree) for _ in range(num_vars)]
        poly = poly + LaurentPoly.monomial(num_vars, exponents, rng.randint(-3, 3))
    return poly


def random_matrix(rng: random.Random, size: int, num_vars: int) -> LaurentMatrix:
    return LaurentMatrix(size, size, [random_poly(rng, num_vars) for _ in range(size * size)], num_vars)


def random_model(rng: random.Random, mu: int, n: int, entry_range: int = 2) -> ColoredLinkModel:
    """Valid model with a random Seifert family, one unlinked component per color"""
    matrices = {}
    for signs in sign_vectors(mu):
        if signs in matrices:
            continue
        block = tuple(tuple(rng.randint(-entry_range, entry_range) for _ in range(n)) for _ in range(n))
        matrices[signs] = block
        matrices[opposite(signs)] = transpose(block) if n else ()
    return ColoredLinkModel(
        mu=mu, nu=mu, colors=tuple(range(1, mu + 1)),
        linking_matrix=tuple(tuple(0 for _ in range(mu)) for _ in range(mu)),
        seifert=SeifertFamily(mu, n, matrices), name="random{}x{}".format(mu, n))


SUM_SAMPLES = 40


def sample_points(rng: random.Random, mu: int, q: int, limit: int) -> List[TorusPoint]:
    points = [point for _, point in grid_points(mu, q)] if (q - 1) ** mu <= limit else None
    if points is None:
        points = [TorusPoint(tuple(Exact.of(rng.randint(1, q - 1), q) for _ in range(mu)))
                  for _ in range(limit)]
    return points


class Verifier:
    """Runs every property suite over a set of models

    Parameters
    ----------
    models : list of ColoredLinkModel
    q : int
        grid conductor for pointwise suites
    rng : random.Random
        seeded from [verify] random_seed when omitted
    """

    def __init__(self, models: Sequence[ColoredLinkModel], q: int, rng: Optional[random.Random] = None):
        config = read_config()["verify"]
        self.models = list(models)
        self.q = q
        self.rng = rng or random.Random(int(config["random_seed"]))
        self.oracle_cases = int(config["oracle_cases"])
        self.enlargement_moves = int(config["enlargement_moves"])
        self.ring_cases = int(config["ring_cases"])
        self.determinant_cases = int(config["determinant_cases"])
        self.bordered_cases = int(config["bordered_cases"])
        self.casson_gordon_cases = int(config["casson_gordon_cases"])
        self.log = logger_wrapper()
        self._scans: Dict[str, GridScan] = {}

    def scan(self, model: ColoredLinkModel) -> GridScan:
        if model.name not in self._scans:
            self._scans[model.name] = grid_scan(model, self.q)
        return self._scans[model.name]

    def run(self) -> List[SuiteResult]:
        results = []
        valid = []
        for model in self.models:
            outcome = self.validation(model)
            results.append(outcome)
            if outcome.passed:
                valid.append(model)
        results += [self.laurent_ring(), self.laurent_determinant(), self.oracle(),
                    self.bordered_step(), self.casson_gordon_trivial()]
        for model in valid:
            results += [self.transpose_symmetry(model), self.conjugation(model), self.mirror_antisymmetry(model),
                        self.inertia_parity(model), self.enlargement(model), self.orientation_reversal(model)]
            if model.beta0_S == 1:
                results += [self.mod2_congruence(model), self.delta_vanishing(model),
                            self.obstruction_parity(model)]
                if model.chi_complement is not None:
                    results.append(self.conway(model))
            if model.name in CLOSED_FORMS:
                results.append(self.closed_form(model))
            if model.name in DIAGONAL_FORMS:
                results.append(self.diagonal(model))
            if model.name in PIECEWISE_GRIDS:
                results.append(self.piecewise_constancy(model))
        results += self.sums(valid)
        by_name = {m.name: m for m in valid}
        if "clasp2" in by_name and "hopf2" in by_name:
            results.append(self.local_move_consistency(by_name["clasp2"], by_name["hopf2"]))
        if "trefoil" in by_name:
            results.append(self.recursion_demo())
        for result in results:
            (self.log.info if result.passed else self.log.error)(result.line())
        return results

    # -- model level ------------------------------------------------------

    def validation(self, model: ColoredLinkModel) -> SuiteResult:
        violations = validate(model)
        name = "validate[{}]".format(model.name)
        if violations:
            return SuiteResult(name, False, "; ".join(violations))
        return SuiteResult(name, True)

    @suite("transpose-symmetry[{}]")
    def transpose_symmetry(self, model):
        signs = sign_vectors(model.mu)
        for _ in range(200):
            eps = self.rng.choice(signs)
            if model.seifert.matrix(opposite(eps)) != transpose(model.seifert.matrix(eps)):
                raise PropertyFailure("A^{} != (A^{})^T".format(opposite(eps), eps))

    @suite("conjugation[{}]")
    def conjugation(self, model):
        table = self.scan(model).lookup()
        for ks, result in table.items():
            other = table[tuple(self.q - k for k in ks)]
            if (result.sigma, result.eta) != (other.sigma, other.eta):
                raise PropertyFailure("{} vs its conjugate".format(result.point))

    @suite("mirror[{}]")
    def mirror_antisymmetry(self, model):
        table = self.scan(model).lookup()
        for ks, result in grid_scan(mirror(model), self.q).lookup().items():
            if (result.sigma, result.eta) != (-table[ks].sigma, table[ks].eta):
                raise PropertyFailure("mirror at {}: {} vs {}".format(result.point, result, table[ks]))

    @suite("mod2-congruence[{}]")
    def mod2_congruence(self, model):
        for row in self.scan(model).rows:
            if not mod2_congruence_holds(model, row.result.sigma, row.result.eta):
                raise PropertyFailure("at {}: {}".format(row.point, row.result))

    @suite("inertia-parity[{}]")
    def inertia_parity(self, model):
        engine = SignatureEngine(model)
        for row in self.scan(model).rows:
            h = engine.hermitian(row.point)
            sigma, nullity = h.signature_nullity()
            if (sigma + nullity - h.size) % 2:
                raise PropertyFailure("sign + null != n mod 2 at {}".format(row.point))
            if nullity == 0:
                positive = h.determinant().sign() > 0
                if positive != ((sigma - h.size) % 4 == 0):
                    raise PropertyFailure("determinant sign vs sign mod 4 at {}".format(row.point))

    @suite("enlargement[{}]")
    def enlargement(self, model):
        points = prime_power_points(model.mu, 9)
        if len(points) > 10:
            points = self.rng.sample(points, 10)
        engine = SignatureEngine(model)
        moves_per_point = max(1, self.enlargement_moves // len(points))
        for point in points:
            h = engine.hermitian(point)
            expected = h.signature_nullity()
            for _ in range(moves_per_point):
                spec = HermitianMoveSpec(
                    "enlargement",
                    xi=tuple(CyclotomicElement.root(point.conductor, self.rng.randrange(point.conductor))
                             * self.rng.randint(-3, 3) for _ in range(h.size)),
                    lam=Fraction(self.rng.randint(-5, 5), self.rng.randint(1, 3)),
                    alpha=CyclotomicElement.root(point.conductor, self.rng.randrange(point.conductor))
                    * self.rng.choice((-2, -1, 1, 2)))
                bigger = apply_hermitian_move(h, spec)
                if bigger.signature_nullity() != expected:
                    raise PropertyFailure("enlargement changed inertia at {}".format(point))
                if apply_hermitian_move(bigger, HermitianMoveSpec("reduction")) != h:
                    raise PropertyFailure("reduction did not undo enlargement at {}".format(point))
            colors = self.rng.sample(range(1, model.mu + 1), min(model.mu, self.rng.choice((1, 2))))
            enlarged = enlarge_family(model, colors, self.rng)
            if validate(enlarged):
                raise PropertyFailure("enlarged family invalid: {}".format(validate(enlarged)))
            if SignatureEngine(enlarged).hermitian(point).signature_nullity() != expected:
                raise PropertyFailure("family enlargement on colors {} changed inertia at {}".format(colors, point))

    @suite("delta-vanishing[{}]")
    def delta_vanishing(self, model):
        delta = delta0(model)
        for row in self.scan(model).rows:
            if eval_at(delta, row.point).is_zero() != (row.result.raw_nullity >= 1):
                raise PropertyFailure("delta0 vanishing disagrees with nullity at {}".format(row.point))

    @suite("conway[{}]")
    def conway(self, model):
        pot = potential(model)
        for row in self.scan(model).rows:
            value = evaluate_potential(pot, row.point)
            if (row.result.eta == 0) != (not value.is_zero()):
                raise PropertyFailure("nullity/potential equivalence fails at {}".format(row.point))
            if row.result.eta == 0 and not mod4_check(model, row.point):
                raise PropertyFailure("mod 4 relation fails at {}".format(row.point))
        if model.mu == 1:
            recovered = normalize_unit(alexander_from_potential(pot))
            if recovered != delta0(model):
                raise PropertyFailure("potential gives {}, delta0 is {}".format(recovered, delta0(model)))

    @suite("closed-form[{}]")
    def closed_form(self, model):
        formula = CLOSED_FORMS[model.name]
        for row in self.scan(model).rows:
            expected = formula(row.point)
            if expected != (row.result.sigma, row.result.eta):
                raise PropertyFailure("at {}: expected {}, got {}".format(row.point, expected, row.result))

    @suite("diagonal[{}]")
    def diagonal(self, model):
        formula = DIAGONAL_FORMS[model.name]
        for _, point in grid_points(1, self.q):
            found = diagonal_specialize(model, point)
            if found != formula(point):
                raise PropertyFailure("at {}: expected {}, got {}".format(point, formula(point), found))

    @suite("orientation-reversal[{}]")
    def orientation_reversal(self, model):
        for color in range(1, model.mu + 1):
            engine = SignatureEngine(reverse_color(model, color))
            for row in self.scan(model).rows:
                found = engine.signature(row.point.inverted(color - 1))
                if (found.sigma, found.eta) != (row.result.sigma, row.result.eta):
                    raise PropertyFailure("reversing color {} at {} gives {}, expected {}".format(
                        color, row.point, found, row.result))

    @suite("piecewise-constancy[{}]")
    def piecewise_constancy(self, model):
        scan = grid_scan(model, PIECEWISE_GRIDS[model.name])
        for region in constant_regions(scan):
            if not region.constant:
                raise PropertyFailure("sigma takes values {} on the region through {}".format(
                    sorted(region.sigmas), region.cells[0]))

    @suite("obstruction-parity[{}]")
    def obstruction_parity(self, model):
        max_q = min(self.q, 5)
        for witness in slice_obstruction(model, max_q).witnesses:
            if not mod2_congruence_holds(model, witness.sigma, witness.eta):
                raise PropertyFailure("witness at {} breaks the mod 2 congruence".format(witness.point))
        if not model.cross_color_linking_vanishes():
            return
        points = prime_power_points(model.mu, max_q)
        budget = SurfaceBudget(beta1=0, genus=slice_genus_lower_bound(model, points))
        engine = SignatureEngine(model)
        for point in points:
            result = engine.signature(point)
            if not closed_surface_ok(result.sigma, result.eta, model.mu, budget):
                raise PropertyFailure("genus {} from the bound fails the closed-surface inequality at {}".format(
                    budget.genus, point))

    # -- cross-model ------------------------------------------------------

    def sums(self, models: Sequence[ColoredLinkModel]) -> List[SuiteResult]:
        results = []
        for index, a in enumerate(models):
            for b in models[index:]:
                if a.mu + b.mu <= 3:
                    results.append(self.disjoint_additivity(a, b))
                if a.mu + b.mu - 1 <= 3:
                    results.append(self.connected_additivity(a, b))
        return results

    @suite("disjoint-sum[{}+{}]")
    def disjoint_additivity(self, a, b):
        total = disjoint_sum(a, b)
        if validate(total):
            raise PropertyFailure("invalid sum: {}".format(validate(total)))
        engines = SignatureEngine(a), SignatureEngine(b), SignatureEngine(total)
        for point in sample_points(self.rng, total.mu, self.q, SUM_SAMPLES):
            ra = engines[0].signature(TorusPoint(point.coords[:a.mu]))
            rb = engines[1].signature(TorusPoint(point.coords[a.mu:]))
            r = engines[2].signature(point)
            if (r.sigma, r.eta) != (ra.sigma + rb.sigma, ra.eta + rb.eta + 1):
                raise PropertyFailure("at {}: {} vs {} and {}".format(point, r, ra, rb))

    @suite("connected-sum[{}#{}]")
    def connected_additivity(self, a, b):
        total = connected_sum(a, b, a.mu, 1)
        if validate(total):
            raise PropertyFailure("invalid sum: {}".format(validate(total)))
        engines = SignatureEngine(a), SignatureEngine(b), SignatureEngine(total)
        for point in sample_points(self.rng, total.mu, self.q, SUM_SAMPLES):
            coords_b = (point.coords[a.mu - 1],) + point.coords[a.mu:]
            ra = engines[0].signature(TorusPoint(point.coords[:a.mu]))
            rb = engines[1].signature(TorusPoint(coords_b))
            r = engines[2].signature(point)
            if (r.sigma, r.eta) != (ra.sigma + rb.sigma, ra.eta + rb.eta):
                raise PropertyFailure("at {}: {} vs {} and {}".format(point, r, ra, rb))

    @suite("local-move-b[{}<-{}]")
    def local_move_consistency(self, clasp, hopf):
        pot_clasp, pot_hopf = potential(clasp), potential(hopf)
        hopf_engine = SignatureEngine(hopf)
        for row in self.scan(clasp).rows:
            value_clasp = evaluate_potential(pot_clasp, row.point)
            value_hopf = evaluate_potential(pot_hopf, row.point)
            if value_clasp.is_zero() or value_hopf.is_zero():
                continue
            sigma_hopf = hopf_engine.signature(row.point).sigma
            if local_move_b(sigma_hopf, value_clasp, value_hopf, 1) != row.result.sigma:
                raise PropertyFailure("local move disagrees with the engine at {}".format(row.point))

    @suite("trefoil-recursion")
    def recursion_demo(self):
        for _, point in grid_points(1, self.q):
            sigma, eta = _trefoil_sigma(point)
            if eta:
                continue
            found = levine_tristram_recursion_demo(point)
            if found != sigma:
                raise PropertyFailure("recursion at {} gives {}, expected {}".format(point, found, sigma))

    # -- algebra ----------------------------------------------------------

    @suite("laurent-ring")
    def laurent_ring(self):
        for _ in range(self.ring_cases):
            mu = self.rng.randint(1, 3)
            a, b, c = (random_poly(self.rng, mu) for _ in range(3))
            if (a * b) * c != a * (b * c) or a * (b + c) != a * b + a * c or a + b != b + a or a * b != b * a:
                raise PropertyFailure("ring axiom fails for {}, {}, {}".format(a, b, c))
            if a.bar().bar() != a:
                raise PropertyFailure("bar is not an involution on {}".format(a))
            if not b.is_zero() and (a * b).exquo(b) != a:
                raise PropertyFailure("dividing {} by {} does not recover the factor".format(a * b, b))

    @suite("laurent-det")
    def laurent_determinant(self):
        for _ in range(self.determinant_cases):
            mu = self.rng.randint(1, 2)
            size = self.rng.randint(0, 4)
            m = random_matrix(self.rng, size, mu)
            if m.det() != det_expansion(m):
                raise PropertyFailure("DomainMatrix and cofactor expansion disagree on\n{}".format(m))
            if m.transpose().det() != m.det():
                raise PropertyFailure("det(m^T) != det(m) for\n{}".format(m))
            if size <= 3:
                other = random_matrix(self.rng, size, mu)
                if (m * other).det() != m.det() * other.det():
                    raise PropertyFailure("det is not multiplicative on\n{}\n{}".format(m, other))
            p = random_poly(self.rng, mu)
            if p.is_zero():
                continue
            unit = LaurentPoly.monomial(mu, [self.rng.randint(-3, 3) for _ in range(mu)], self.rng.choice((-1, 1)))
            if normalize_unit(unit * p) != normalize_unit(p):
                raise PropertyFailure("normalize_unit not unit invariant on {}".format(p))

    @suite("eigen-oracle")
    def oracle(self):
        for case in range(self.oracle_cases):
            mu = self.rng.randint(1, 2)
            model = random_model(self.rng, mu, self.rng.randint(1, 8))
            point = self.rng.choice(prime_power_points(mu, 9))
            h = SignatureEngine(model).hermitian(point)
            exact, oracle = h.signature_nullity(), eigen_oracle(h)
            if exact != oracle:
                raise PropertyFailure("case {} at {}: engine {} vs oracle {}".format(case, point, exact, oracle))

    @suite("bordered-step")
    def bordered_step(self):
        for _ in range(self.bordered_cases):
            model = random_model(self.rng, 1, self.rng.randint(1, 5))
            point = self.rng.choice(prime_power_points(1, 9))
            h = SignatureEngine(model).hermitian(point)
            column = [CyclotomicElement.root(point.conductor, self.rng.randrange(point.conductor))
                      * self.rng.randint(-2, 2) for _ in range(h.size)]
            sigma, nullity = h.signature_nullity()
            grown = h.bordered(column, self.rng.randint(-2, 2)).signature_nullity()
            if abs(grown[0] - sigma) + abs(grown[1] - nullity) != 1:
                raise PropertyFailure("border changed ({}, {}) to {}".format(sigma, nullity, grown))

    @suite("casson-gordon-trivial")
    def casson_gordon_trivial(self):
        for _ in range(self.casson_gordon_cases):
            nu = self.rng.randint(1, 4)
            q = self.rng.randint(2, 12)
            units = [k for k in range(1, q) if math.gcd(k, q) == 1]
            data = SurgeryData(nu, tuple((0,) * nu for _ in range(nu)), q,
                               tuple(self.rng.choice(units) for _ in range(nu)))
            sigma = self.rng.randint(-6, 6)
            if casson_gordon(data, sigma) != sigma:
                raise PropertyFailure("Lambda = 0 gives {} for sigma {}".format(casson_gordon(data, sigma), sigma))


def _trefoil_sigma(point: TorusPoint) -> Tuple[int, int]:
    """sgn(omega - 1 + conj(omega)) - 1, and (-1, 1) on the zero locus"""
    omega = eval_at(LaurentPoly.variable(1, 0), point)
    value = omega + omega.conjugate() - 1
    if value.is_zero():
        return -1, 1
    return value.sign() - 1, 0


def _clasp2_sigma(point: TorusPoint) -> Tuple[int, int]:
    w1, w2 = (eval_at(LaurentPoly.variable(2, i), point) for i in range(2))
    if w1 * w2 == -1:
        return 0, 1
    return (-((1 - w1) * (1 - w2)).real_part()).sign(), 0


CLOSED_FORMS: Dict[str, Callable[[TorusPoint], Tuple[int, int]]] = {
    "trefoil": _trefoil_sigma,
    "clasp2": _clasp2_sigma,
    "hopf1": lambda point: (-1, 0),
    "hopf2": lambda point: (0, 0),
    "unknot": lambda point: (0, 0),
}

# Levine-Tristram signature and nullity of the fully merged coloring
DIAGONAL_FORMS: Dict[str, Callable[[TorusPoint], Tuple[int, int]]] = {
    "fox": lambda point: (0, 0),
    "hopf2": lambda point: (-1, 0),
    "trefoil": _trefoil_sigma,
}

# conductors whose grids contain every zero-locus point
PIECEWISE_GRIDS: Dict[str, int] = {
    "clasp2": 60,
    "trefoil": 60,
}
