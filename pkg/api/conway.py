"""Conway potential function from Seifert family data and the local-move relations

The potential is

    nabla_L(t) = (-1)^{(c - l)/2} prod_j (t_j - t_j^{-1})^{chi(S - S_j) - 1} det(-B(t))

with B(t) = sum over eps of eps_1...eps_mu t_1^{eps_1}...t_mu^{eps_mu} A^eps, c the
clasp count and l the total linking between colors. The local moves compare
signatures of links that differ at one crossing through the potential evaluated
at omega^{1/2}.

The relations give no information when both potentials vanish identically, as
for irreducible boundary links; no fallback is attempted.
"""
from __future__ import annotations

from typing import Union

from api.cyclotomic import CyclotomicElement
from api.errors import (DomainError, InapplicableError, InconsistentInputError,
                        InvalidModelError, ZeroDenominatorError)
from api.invariants import signature
from api.laurent import LaurentFraction, LaurentMatrix, LaurentPoly, difference
from api.logs import logger as logger_wrapper
from api.model import ColoredLinkModel, sign_product, sign_vectors
from api.settings import message, read_config
from api.torus import TorusPoint, eval_at, half_point

FieldValue = Union[CyclotomicElement, complex]

L_FROM_LP = "L_from_Lp"
LP_FROM_L = "Lp_from_L"
L_FROM_LPP = "L_from_Lpp"
LPP_FROM_L = "Lpp_from_L"


def potential(m: ColoredLinkModel) -> LaurentFraction:
    """nabla_L as a LaurentFraction

    For one color the complement S - S_1 is empty and chi(S - S_1) = 0, which gives
    the classical nabla(t) = Delta(t^2) / (t - t^{-1}).

    Raises
    ------
    InvalidModelError : chi_complement missing, disconnected C-complex or odd c - l
    """
    if m.chi_complement is None:
        raise InvalidModelError("potential of {} needs chi_complement".format(m.name))
    if m.beta0_S != 1:
        raise InvalidModelError("potential of {} needs a connected C-complex".format(m.name))
    excess = m.clasp_count - m.total_linking
    if excess % 2:
        raise InvalidModelError("potential of {}: c - l = {} is odd".format(m.name, excess))
    mu = m.mu
    b = LaurentMatrix.zeros(m.n, m.n, mu)
    for signs in sign_vectors(mu):
        monomial = LaurentPoly.monomial(mu, [1 if s == "+" else -1 for s in signs], sign_product(signs))
        b = b + LaurentMatrix.from_integers(m.seifert.matrix(signs), mu) * monomial
    numerator = b.det() * (-1) ** m.n * (-1) ** (excess // 2)
    powers = []
    for j, chi in enumerate(m.chi_complement):
        exponent = chi - 1
        if exponent > 0:
            numerator = numerator * difference(mu, j) ** exponent
        powers.append(max(0, -exponent))
    logger_wrapper().debug(message("conway", "msg_potential", m.name, (-1) ** (excess // 2),
                                   m.clasp_count, m.total_linking))
    return LaurentFraction(numerator, powers)


def evaluate_potential(pot: LaurentFraction, point: TorusPoint) -> FieldValue:
    """nabla(omega^{1/2}) on the branch of half_point

    Raises
    ------
    ZeroDenominatorError : denominator vanishes (never on the punctured torus)
    """
    half = half_point(point)
    numerator = eval_at(pot.numerator, half)
    denominator = eval_at(pot.denominator, half)
    if not denominator:
        raise ZeroDenominatorError("potential denominator vanishes at {}".format(half))
    return numerator / denominator


def alexander_from_potential(pot: LaurentFraction) -> LaurentPoly:
    """(t^{1/2} - t^{-1/2}) nabla(t^{1/2}) for a one-variable potential"""
    if pot.num_vars != 1:
        raise DomainError("the Alexander polynomial is recovered from one-variable potentials only")
    root_difference = LaurentPoly.half_variable(1, 0, 1) - LaurentPoly.half_variable(1, 0, -1)
    numerator = pot.numerator.substitute_roots() * pot.sign
    power = 1 - pot.powers[0]
    if power >= 0:
        return numerator * root_difference ** power
    return numerator.exquo(root_difference ** (-power))


def _tolerance() -> float:
    return float(read_config()["numeric"]["approx_tol"])


def real_sign(value: FieldValue) -> int:
    """Sign of a value that must be real

    Raises
    ------
    InconsistentInputError : value is not real (exactly, or to approx_tol)
    """
    if isinstance(value, CyclotomicElement):
        if not value.is_real():
            raise InconsistentInputError("{} is not real".format(value))
        return value.sign()
    value = complex(value)
    scale = max(1.0, abs(value))
    if abs(value.imag) > _tolerance() * scale:
        raise InconsistentInputError("{} is not real".format(value))
    if abs(value.real) <= _tolerance() * scale:
        return 0
    return 1 if value.real > 0 else -1


def _is_zero(value: FieldValue) -> bool:
    if isinstance(value, CyclotomicElement):
        return value.is_zero()
    return abs(complex(value)) <= _tolerance()


def _ratio(numerator: FieldValue, denominator: FieldValue) -> FieldValue:
    if _is_zero(denominator):
        raise ZeroDenominatorError("potential of the known link vanishes")
    values = (numerator, denominator)
    if any(isinstance(v, CyclotomicElement) for v in values):
        if any(isinstance(v, (float, complex)) for v in values):
            raise InconsistentInputError("mixing exact and approximate potential values")
        numerator, denominator = (v if isinstance(v, CyclotomicElement) else CyclotomicElement.rational(v)
                                  for v in values)
    return numerator / denominator


def _times_i(value: FieldValue, power: int = 1) -> FieldValue:
    if isinstance(value, CyclotomicElement):
        return value * CyclotomicElement.root(4, power % 4)
    return complex(value) * 1j ** (power % 4)


def local_move_a(sigma_known: int, nabla_L_at: FieldValue, nabla_Lp_at: FieldValue,
                 direction: str = L_FROM_LP) -> int:
    """Crossing change against the smoothing L' that joins two colors

    sigma_L = sigma_L' + sgn(i nabla_L / nabla_L'); the converse direction divides
    by nabla_L instead. A vanishing unknown potential contributes sgn(0) = 0.

    Raises
    ------
    ZeroDenominatorError : the known link's potential vanishes
    InconsistentInputError : the ratio times i is not real
    """
    if direction == L_FROM_LP:
        step = real_sign(_times_i(_ratio(nabla_L_at, nabla_Lp_at)))
        result = sigma_known + step
    elif direction == LP_FROM_L:
        step = real_sign(_times_i(_ratio(nabla_Lp_at, nabla_L_at), -1))
        result = sigma_known - step
    else:
        raise DomainError("direction must be {} or {}".format(L_FROM_LP, LP_FROM_L))
    logger_wrapper().debug(message("conway", "msg_local_move", "a", sigma_known, step))
    return result


def local_move_b(sigma_known: int, nabla_L_at: FieldValue, nabla_Lpp_at: FieldValue,
                 delta: int, direction: str = L_FROM_LPP) -> int:
    """Crossing change within one color against the link L''

    sigma_L = sigma_L'' + delta sgn(nabla_L / nabla_L''), delta = ±1; the converse
    direction divides by nabla_L.

    Raises
    ------
    ZeroDenominatorError : the known link's potential vanishes
    InconsistentInputError : the ratio is not real
    """
    if delta not in (1, -1):
        raise DomainError("delta must be 1 or -1, got {}".format(delta))
    if direction == L_FROM_LPP:
        step = real_sign(_ratio(nabla_L_at, nabla_Lpp_at))
        result = sigma_known + delta * step
    elif direction == LPP_FROM_L:
        step = real_sign(_ratio(nabla_Lpp_at, nabla_L_at))
        result = sigma_known - delta * step
    else:
        raise DomainError("direction must be {} or {}".format(L_FROM_LPP, LPP_FROM_L))
    logger_wrapper().debug(message("conway", "msg_local_move", "b", sigma_known, step))
    return result


def levine_tristram_recursion_demo(omega: TorusPoint) -> int:
    """Trefoil signature by two crossing changes

    The right-handed trefoil K becomes the unknot K'' after one crossing change;
    smoothing that crossing gives the Hopf link L'. Starting from sigma_K'' = 0 with
    Delta_K'' = 1, Delta_L'(t) = t^{1/2} - t^{-1/2} and Delta_K(t) = t - 1 + t^{-1}:

        sigma_L' = sigma_K'' + sgn(i Delta_L'(omega) / Delta_K''(omega))
        sigma_K = sigma_L' + sgn(i Delta_K(omega) / Delta_L'(omega))

    which equals sgn(omega - 1 + conj(omega)) - 1.
    """
    if omega.mu != 1:
        raise DomainError("the trefoil recursion takes a single coordinate")
    t = LaurentPoly.variable(1, 0)
    delta_k = t - 1 + t ** -1
    delta_lp = LaurentPoly.half_variable(1, 0, 1) - LaurentPoly.half_variable(1, 0, -1)
    delta_kpp = LaurentPoly.one(1)
    sigma_lp = local_move_a(0, eval_at(delta_lp, omega), eval_at(delta_kpp, omega))
    return local_move_a(sigma_lp, eval_at(delta_k, omega), eval_at(delta_lp, omega))


def mod4_check(m: ColoredLinkModel, point: TorusPoint) -> bool:
    """sigma = nu + l - sgn(i^nu nabla(omega^{1/2})) mod 4 where eta vanishes

    Raises
    ------
    InapplicableError : eta(omega) != 0
    """
    result = signature(m, point)
    if result.eta != 0:
        raise InapplicableError("mod 4 relation needs eta = 0, got {} at {}".format(result.eta, point))
    value = _times_i(evaluate_potential(potential(m), point), m.nu)
    return (result.sigma - (m.nu + m.total_linking - real_sign(value))) % 4 == 0


def nullity_potential_equivalence(m: ColoredLinkModel, point: TorusPoint) -> bool:
    """eta(omega) = 0 exactly when nabla(omega^{1/2}) != 0"""
    result = signature(m, point)
    value = evaluate_potential(potential(m), point)
    return (result.eta == 0) == (not _is_zero(value))
