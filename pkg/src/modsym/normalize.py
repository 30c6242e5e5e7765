"""Fixing the scale of the eigen-functionals against numerical L-values.

For a real primitive character psi of conductor M prime to N,

    sum_{a mod M} psi(a) lambda(a/M) = G(psi) L(E, psi, 1),   G(psi) = sqrt(M) or i sqrt(M),

and L(E, psi, 1) is summed from the rapidly converging series

    S(x) = sum psi(n) a_n / n exp(-2 pi n x / (M sqrt(N))),   L = S(x) + w S(1/x).

The sign w is read off numerically from two values of x.  Each anchor fixes
one scalar s by rational reconstruction; a second anchor must agree.

When N is a square every odd quadratic psi prime to N has w(E x psi) = -w(E),
so for even analytic rank all of them vanish.  The minus scalar then falls
back to odd characters of order > 2, where

    sum_{a mod M} psi(a) lambda(a/M) = G(psi) L(E, conj(psi), 1)

and the root number of the twist is a complex number of modulus 1, again
estimated from two values of x.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

import mpmath

from src.dirichlet.character import DirichletCharacter, conjugacy_classes, field_discriminant, quadratic_character_of_field
from src.dirichlet.gauss import gauss_sum_numeric
from src.elliptic.curve import CurveData
from src.elliptic.periods import Periods
from src.elliptic.points import an_table
from src.errors import (
    SECOND_ANCHOR_MISSING,
    AmbiguousReconstruction,
    NoCandidate,
    NormalisationAmbiguous,
    TrivialCharacter,
    UsageError,
)
from src.exact_math.cyclo import CycloNumber
from src.exact_math.reconstruct import rational_reconstruct

logger = logging.getLogger(__name__)

# global sign convention for [r]^-: Omega_minus lies on the positive imaginary axis
MINUS_SIGN = 1
SYMMETRY_POINT = mpmath.mpf("1.2")


@dataclass
class Normalisation:
    s_plus: Fraction
    s_minus: Fraction
    warnings: List[str] = field(default_factory=list)
    anchors: Dict[str, list] = field(default_factory=dict)


class _Coefficients:
    """a_n of a curve, extended on demand."""

    def __init__(self, curve: CurveData):
        self.curve = curve
        self.values: List[int] = [0]

    def upto(self, n: int) -> List[int]:
        if n >= len(self.values):
            self.values = an_table(self.curve, max(n, 2 * len(self.values)))
        return self.values


def _psi_value(psi: Optional[DirichletCharacter], n: int) -> int:
    if psi is None:
        return 1
    angle = psi.angle(n)
    if angle is None:
        return 0
    return 1 if angle == 0 else -1


def _psi_number(psi: Optional[DirichletCharacter], n: int):
    if psi is None or psi.order <= 2:
        return _psi_value(psi, n)
    angle = psi.angle(n)
    if angle is None:
        return 0
    return mpmath.expjpi(2 * mpmath.mpf(angle.numerator) / angle.denominator)


def anchor_characters(N: int, sign: int, bound: int) -> List[Tuple[int, Optional[DirichletCharacter]]]:
    """(D, psi) with D a fundamental discriminant of the given sign, |D| <= bound, gcd(D, N) = 1.

    The trivial character (D = 1) comes first for the plus sign.
    """
    out: List[Tuple[int, Optional[DirichletCharacter]]] = [(1, None)] if sign > 0 else []
    for k in range(2, bound + 1):
        D = sign * k
        if gcd(D, N) != 1:
            continue
        try:
            if field_discriminant(D) != D:
                continue
        except (TrivialCharacter, UsageError):
            continue
        out.append((D, quadratic_character_of_field(D)))
    return out


def odd_fallback_characters(N: int, bound: int) -> List[DirichletCharacter]:
    """Odd primitive characters of order > 2 and modulus prime to N, one per Galois class."""
    out = []
    for M in range(3, bound + 1):
        if gcd(M, N) != 1:
            continue
        for orbit in conjugacy_classes(M):
            psi = orbit[0]
            if psi.order > 2 and not psi.is_even():
                out.append(psi)
    return out


def series(an: List[int], psi: Optional[DirichletCharacter], M: int, N: int, x, bits: int):
    """sum psi(n) a_n / n exp(-2 pi n x / (M sqrt(N))); complex when psi has order > 2."""
    with mpmath.workprec(bits + 32):
        scale = 2 * mpmath.pi * x / (M * mpmath.sqrt(N))
        n_max = series_length(M, N, x, bits)
        q = mpmath.exp(-scale)
        values = [_psi_number(psi, n) for n in range(M)]
        total = mpmath.mpf(0)
        power = mpmath.mpf(1)
        for n in range(1, n_max + 1):
            power *= q
            a = an[n]
            if a:
                chi = values[n % M]
                if chi:
                    total += chi * a * power / n
        return total


def series_length(M: int, N: int, x, bits: int) -> int:
    return int(math.ceil((bits + 10) * math.log(2) * M * math.sqrt(N) / (2 * math.pi * float(x))))


def twisted_central_value(coefficients: _Coefficients, psi: Optional[DirichletCharacter], M: int, N: int,
                          bits: int) -> Optional[mpmath.mpf]:
    """L(E, psi, 1), or None when the numerically determined sign is -1."""
    x = SYMMETRY_POINT
    an = coefficients.upto(series_length(M, N, 1 / x, bits))
    with mpmath.workprec(bits + 32):
        s1 = series(an, psi, M, N, 1, bits)
        s_hi = series(an, psi, M, N, x, bits)
        s_lo = series(an, psi, M, N, 1 / x, bits)
        w = (s_hi - s1) / (s1 - s_lo)
        sign = 1 if w > 0 else -1
        if abs(w - sign) > mpmath.mpf("1e-6"):
            logger.warning("root number estimate %s for D=%d is not close to +-1", mpmath.nstr(w, 8), M)
        if sign < 0:
            return None
        return 2 * s1


def twisted_central_value_complex(coefficients: _Coefficients, psi: DirichletCharacter, N: int,
                                  bits: int) -> mpmath.mpc:
    """L(E, conj(psi), 1) for psi of order > 2, with the root number fitted numerically."""
    M = psi.modulus
    x = SYMMETRY_POINT
    an = coefficients.upto(series_length(M, N, 1 / x, bits))
    dual = psi.conjugate()
    with mpmath.workprec(bits + 32):
        s1 = series(an, dual, M, N, 1, bits)
        s_hi = series(an, dual, M, N, x, bits)
        t1 = series(an, psi, M, N, 1, bits)
        t_lo = series(an, psi, M, N, 1 / x, bits)
        w = (s1 - s_hi) / (t_lo - t1)
        if abs(abs(w) - 1) > mpmath.mpf("1e-6"):
            logger.warning("root number estimate %s for %s has modulus %s", mpmath.nstr(w, 8), psi.label(),
                           mpmath.nstr(abs(w), 8))
        return s1 + w * t1


def raw_birch_sum(functionals, psi: Optional[DirichletCharacter], M: int, sign: int) -> Fraction:
    if psi is None:
        plus, minus = functionals.raw(Fraction(0))
        return plus if sign > 0 else minus
    total = Fraction(0)
    for a in range(1, M):
        value = _psi_value(psi, a)
        if value:
            plus, minus = functionals.raw(Fraction(a, M))
            total += value * (plus if sign > 0 else minus)
    return total


def _reconstruct(x, curve: CurveData, anchor, bits: int) -> Fraction:
    with mpmath.workprec(bits + 32):
        tolerance = mpmath.mpf(2) ** (-(bits - 32)) * max(1, abs(x))
    try:
        return rational_reconstruct(x, 2 ** 16 * curve.conductor, tolerance)
    except (NoCandidate, AmbiguousReconstruction) as e:
        raise NormalisationAmbiguous(f"anchor {anchor} for {curve.name}: {e}")


def _fallback_minus_anchor(functionals, curve: CurveData, periods: Periods, coefficients: _Coefficients,
                           psi: DirichletCharacter) -> Optional[Fraction]:
    """s_minus from an odd character psi of order > 2, or None when its Birch sum vanishes."""
    M = psi.modulus
    raw = CycloNumber.rational(0, psi.order)
    for a in range(1, M):
        if gcd(a, M) == 1:
            raw = raw + psi.evaluate(a) * functionals.raw(Fraction(a, M))[1]
    if not raw:
        return None
    bits = periods.precision_bits
    value = twisted_central_value_complex(coefficients, psi, curve.conductor, bits)
    with mpmath.workprec(bits + 32):
        x = gauss_sum_numeric(psi, bits + 32) * value / (1j * periods.abs_omega_minus * raw.to_complex(bits + 32))
        if abs(x.imag) > mpmath.mpf(2) ** (-(bits // 2)) * max(1, abs(x)):
            raise NormalisationAmbiguous(f"anchor {psi.label()} for {curve.name} is not real: {mpmath.nstr(x, 12)}")
        return _reconstruct(x.real, curve, psi.label(), bits)


def _solve_scalar(functionals, curve: CurveData, periods: Periods, coefficients: _Coefficients,
                  sign: int, disc_bound: int, warnings: List[str]) -> Tuple[Fraction, list]:
    N = curve.conductor
    bits = periods.precision_bits
    omega = periods.omega_plus if sign > 0 else periods.abs_omega_minus
    found: List[Tuple[object, Fraction]] = []

    def _accept(anchor, s: Fraction) -> bool:
        logger.info("%s: anchor %s gives s%s = %s", curve.name, anchor, "+" if sign > 0 else "-", s)
        if found and found[0][1] != s:
            raise NormalisationAmbiguous(
                f"anchors {found[0][0]} and {anchor} disagree for {curve.name}: {found[0][1]} vs {s}"
            )
        found.append((anchor, s))
        return len(found) == 2

    for D, psi in anchor_characters(N, sign, disc_bound):
        M = abs(D)
        raw = raw_birch_sum(functionals, psi, M, sign)
        if raw == 0:
            continue
        value = twisted_central_value(coefficients, psi, M, N, bits)
        if value is None:
            continue
        with mpmath.workprec(bits + 32):
            x = mpmath.sqrt(M) * value / (omega * (raw.numerator / mpmath.mpf(raw.denominator)))
        if _accept(D, _reconstruct(x, curve, f"D={D}", bits)):
            break
    if sign < 0 and not found:
        for psi in odd_fallback_characters(N, disc_bound):
            s = _fallback_minus_anchor(functionals, curve, periods, coefficients, psi)
            if s is not None and _accept(psi.label(), s):
                break
    if not found:
        raise NormalisationAmbiguous(f"no usable {'even' if sign > 0 else 'odd'} anchor for {curve.name}")
    if len(found) == 1:
        logger.warning("%s: only one %s anchor (%s)", curve.name, "even" if sign > 0 else "odd", found[0][0])
        warnings.append(SECOND_ANCHOR_MISSING)
    return found[0][1], [anchor for anchor, _ in found]


def normalize(functionals, curve: CurveData, periods: Periods, disc_bound: int = 50) -> Normalisation:
    """Scalars (s_plus, s_minus) turning the raw functionals into [r]^+ and [r]^-."""
    coefficients = _Coefficients(curve)
    warnings: List[str] = []
    s_plus, plus_anchors = _solve_scalar(functionals, curve, periods, coefficients, 1, disc_bound, warnings)
    s_minus, minus_anchors = _solve_scalar(functionals, curve, periods, coefficients, -1, disc_bound, warnings)
    return Normalisation(
        s_plus=s_plus,
        s_minus=MINUS_SIGN * s_minus,
        warnings=warnings,
        anchors={"plus": plus_anchors, "minus": minus_anchors},
    )
