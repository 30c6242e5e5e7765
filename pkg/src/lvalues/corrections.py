"""Euler factors at primes where E is additive and chi is ramified.

At such a prime the inertia invariants of the twisted representation are
non-zero only when E acquires semistable reduction over the field cut out by
the p-part of chi, and the local factor at s = 1 is then

    quadratic p-part, twist good:            1 / (1 - a' u/p + u^2/p)
    quadratic p-part, twist multiplicative:  1 / (1 - a' u/p)
    p-part of order e >= 3, good over L_e:   1 / (1 - alpha u/p)

with u = chi'(p) the prime-to-p part of chi at p, a' the trace of the twist and
alpha the Frobenius root on the one-dimensional invariants.
"""
import logging
from math import isqrt
from typing import List, Optional, Tuple

import sympy

from src.dirichlet.character import DirichletCharacter, field_discriminant, quadratic_character_of_field
from src.dirichlet.gauss import gauss_sum
from src.elliptic.curve import CurveData, quadratic_twist
from src.elliptic.points import a_p, count_points_mod_p
from src.elliptic.local_field import element_residue
from src.elliptic.tate import (
    TateResult,
    local_data_from_result,
    reduction_over_character_field,
    tate_local,
    tate_over_tame_extension,
)
from src.errors import CANDIDATE_AMBIGUOUS, WILD_UNDETERMINED
from src.exact_math.cyclo import CycloNumber
from src.exact_math.ideals import congruent_to_one, is_unit_at, primes_above
from src.types import CorrectionEntry

logger = logging.getLogger(__name__)

ONE = CycloNumber.rational(1)


def twisting_discriminant(chi: DirichletCharacter, p: int) -> int:
    """Discriminant of the quadratic field whose character equals the quadratic p-part of chi."""
    if p != 2:
        return p if p % 4 == 1 else -p
    component = chi.component(2).primitive()
    if component.modulus == 4:
        return -4
    return 8 if component.parity == 1 else -8


def _sub_character(component: DirichletCharacter, degree: int) -> DirichletCharacter:
    """The power of the p-part whose order is ``degree`` (a divisor of its order)."""
    power = component.order // degree
    return DirichletCharacter(component.modulus, [x * power for x in component.exponents]).primitive()


def reduction_over_subfield(curve: CurveData, component: DirichletCharacter, p: int, degree: int) -> TateResult:
    """Tate's algorithm over the degree-``degree`` subfield of the field cut out by the p-part of chi."""
    sub = _sub_character(component, degree)
    k = sympy.multiplicity(p, sub.modulus)
    return reduction_over_character_field(curve, p, k, sub.kernel_mod())


def _change(curve: CurveData, p: int, after: str) -> str:
    return f"{curve.local_data(p).symbol}->{after}"


def _quadratic_factor(curve: CurveData, chi: DirichletCharacter, p: int, u: CycloNumber) -> CorrectionEntry:
    D = twisting_discriminant(chi, p)
    twist = quadratic_twist(curve, D)
    local = tate_local(twist, p)
    if p == 2:
        component = chi.component(2).primitive()
        over = local_data_from_result(reduction_over_subfield(curve, component, 2, 2), 2, 2)
    else:
        over = tate_over_tame_extension(curve, p, 2)
    change = _change(curve, p, over.symbol)
    if local.reduction == "good":
        a = a_p(twist, p)
        factor = (ONE - u * a / p + u * u / p).inverse()
    elif local.is_semistable:
        a = 1 if local.reduction == "split" else -1
        factor = (ONE - u * a / p).inverse()
    else:
        return CorrectionEntry(p=p, factor=ONE, change=change, e=2, frobenius_value=u)
    logger.info("%s at p=%d: twist by %d has %s reduction, factor %s", curve.name, p, D, local.reduction, factor)
    return CorrectionEntry(p=p, factor=factor, change=change, e=2, frobenius_value=u,
                           frobenius_root=CycloNumber.rational(a))


def frobenius_candidates(t: int, p: int) -> List[CycloNumber]:
    """The two roots of x^2 - t x + p, exact in a cyclotomic field."""
    n = 4 * p - t * t
    if n <= 0:
        raise ArithmeticError(f"trace {t} at p={p} violates the Hasse bound")
    DK = field_discriminant(-n)
    if n % DK:
        raise ArithmeticError(f"{DK} does not divide {-n}")
    square = -n // DK
    f = isqrt(square)
    if f * f != square:
        raise ArithmeticError(f"{t}^2 - 4*{p} is not a square times {DK}")
    root = gauss_sum(quadratic_character_of_field(DK))
    return [(CycloNumber.rational(t) + root * f) / 2, (CycloNumber.rational(t) - root * f) / 2]


def _residue_trace(result: TateResult, p: int) -> int:
    """p + 1 - #E(F_p) for the residue curve of a good model over a totally ramified field."""
    return p + 1 - count_points_mod_p([element_residue(a, p) for a in result.minimal], p)


def _generator_of_order(component: DirichletCharacter, e: int) -> Optional[int]:
    for g in component.generators:
        if component.angle(g).denominator == e:
            return g
    return None


def _select_root(candidates: List[CycloNumber], component: DirichletCharacter, p: int, e: int
                 ) -> Tuple[Optional[CycloNumber], Optional[str]]:
    """Pick the Frobenius root compatible with the inertia character."""
    g = _generator_of_order(component, e)
    if g is None:
        return None, WILD_UNDETERMINED
    c = component.evaluate(g)
    if (p - 1) % e == 0:
        order = _common_order(candidates + [c])
        target = c - pow(g, (p - 1) // e, p)
        primes = [P for P in primes_above(order, p) if P.contains(target)]
        if not primes:
            return None, CANDIDATE_AMBIGUOUS
        chosen = [x for x in candidates if is_unit_at(x, primes[0])]
    elif e == p ** sympy.multiplicity(p, e):
        order = _common_order(candidates + [c])
        P = primes_above(order, p)[0]
        chosen = [x for x in candidates if congruent_to_one(x / (c - 1), P)]
    else:
        return None, WILD_UNDETERMINED
    if len(chosen) != 1:
        return None, CANDIDATE_AMBIGUOUS
    return chosen[0], None


def _common_order(values: List[CycloNumber]) -> int:
    order = 1
    for v in values:
        order = order * v.order // sympy.gcd(order, v.order)
    return int(order)


def _higher_factor(curve: CurveData, chi: DirichletCharacter, p: int, e: int, u: CycloNumber) -> CorrectionEntry:
    component = chi.component(p).primitive()
    e_min = None
    result = None
    for degree in sympy.divisors(e):
        result = reduction_over_subfield(curve, component, p, degree) if degree > 1 else None
        reduction = result.reduction if result is not None else curve.local_data(p).reduction
        if reduction == "good":
            e_min = degree
            break
    top = result if e_min in (None, e) else reduction_over_subfield(curve, component, p, e)
    change = _change(curve, p, local_data_from_result(top, p, e).symbol)
    if e_min != e:
        return CorrectionEntry(p=p, factor=ONE, change=change, e=e, frobenius_value=u)
    t = _residue_trace(result, p)
    candidates = frobenius_candidates(t, p)
    alpha, warning = _select_root(candidates, chi.component(p), p, e)
    if alpha is None:
        logger.warning("%s at p=%d (e=%d): Frobenius root not determined (%s); using factor 1",
                       curve.name, p, e, warning)
        return CorrectionEntry(p=p, factor=ONE, change=change, e=e, frobenius_value=u, warning=warning)
    factor = (ONE - alpha * u / p).inverse()
    logger.info("%s at p=%d: Frobenius root %s, factor %s", curve.name, p, alpha, factor)
    return CorrectionEntry(p=p, factor=factor, change=change, e=e, frobenius_value=u, frobenius_root=alpha)


def correction_factor(curve: CurveData, chi: DirichletCharacter, p: int) -> Optional[CorrectionEntry]:
    """Correction at p, or None when p is not additive for E or unramified in K_chi."""
    if curve.is_good(p) or not curve.local_data(p).is_additive or chi.modulus % p:
        return None
    local = chi.local_data(p)
    u = local.frobenius_value
    if local.e == 2:
        return _quadratic_factor(curve, chi, p, u)
    return _higher_factor(curve, chi, p, local.e, u)


def corrections(curve: CurveData, chi: DirichletCharacter) -> List[CorrectionEntry]:
    out = []
    for p in sympy.primefactors(chi.modulus):
        entry = correction_factor(curve, chi, p)
        if entry is not None:
            out.append(entry)
    return out
