"""Néron periods by the arithmetic-geometric mean and coordinates in the Néron lattice."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

import mpmath

from src.elliptic.curve import CurveData

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Periods:
    """Omega_plus > 0 is c_inf times the least real period; Omega_minus lies on the positive imaginary axis."""

    omega_plus: mpmath.mpf
    omega_minus: mpmath.mpc
    c_inf: int
    precision_bits: int

    @property
    def rectangular(self) -> bool:
        return self.c_inf == 2

    @property
    def lattice_shape(self) -> str:
        return "rectangular" if self.rectangular else "non-rectangular"

    @property
    def abs_omega_minus(self) -> mpmath.mpf:
        return mpmath.im(self.omega_minus)

    def lattice_coordinates(self, plus: Fraction, minus: Fraction) -> Tuple[Fraction, Fraction]:
        """Coordinates of plus*Omega_plus + minus*Omega_minus on the basis of the Néron lattice.

        rectangular:      Omega_plus/2, Omega_minus
        non-rectangular:  Omega_plus, (Omega_plus + Omega_minus)/2
        """
        if self.rectangular:
            return 2 * plus, minus
        return plus - minus, 2 * minus

    def covolume(self) -> mpmath.mpf:
        with mpmath.workprec(self.precision_bits):
            return self.omega_plus * self.abs_omega_minus / 2

    def value(self, plus: Fraction, minus: Fraction) -> mpmath.mpc:
        with mpmath.workprec(self.precision_bits):
            return (mpmath.mpf(plus.numerator) / plus.denominator) * self.omega_plus + \
                (mpmath.mpf(minus.numerator) / minus.denominator) * self.omega_minus


def two_division_roots(curve: CurveData, precision_bits: int):
    with mpmath.workprec(precision_bits + 32):
        coeffs = [mpmath.mpf(1), mpmath.mpf(curve.b2) / 4, mpmath.mpf(curve.b4) / 2, mpmath.mpf(curve.b6) / 4]
        return mpmath.polyroots(coeffs, maxsteps=400, extraprec=2 * precision_bits)


def periods(curve: CurveData, precision_bits: int = 128) -> Periods:
    if precision_bits < 128:
        raise ValueError(f"precision_bits must be at least 128, got {precision_bits}")
    roots = two_division_roots(curve, precision_bits)
    with mpmath.workprec(precision_bits + 32):
        if curve.disc > 0:
            e1, e2, e3 = sorted((mpmath.re(r) for r in roots), reverse=True)
            omega_plus = 2 * mpmath.pi / mpmath.agm(mpmath.sqrt(e1 - e3), mpmath.sqrt(e1 - e2))
            omega_minus = mpmath.mpc(0, mpmath.pi / mpmath.agm(mpmath.sqrt(e1 - e3), mpmath.sqrt(e2 - e3)))
            c_inf = 2
        else:
            e1 = max((r for r in roots), key=lambda r: -abs(mpmath.im(r)))
            e1 = mpmath.re(e1)
            a = 3 * e1 + mpmath.mpf(curve.b2) / 4
            b = mpmath.sqrt(3 * e1 * e1 + mpmath.mpf(curve.b2) / 2 * e1 + mpmath.mpf(curve.b4) / 2)
            omega_plus = 2 * mpmath.pi / mpmath.agm(2 * mpmath.sqrt(b), mpmath.sqrt(2 * b + a))
            omega_minus = mpmath.mpc(0, 2 * mpmath.pi / mpmath.agm(2 * mpmath.sqrt(b), mpmath.sqrt(2 * b - a)))
            c_inf = 1
    logger.debug("periods of %s: %s, %s", curve.name, mpmath.nstr(omega_plus, 20), mpmath.nstr(omega_minus, 20))
    return Periods(omega_plus=omega_plus, omega_minus=omega_minus, c_inf=c_inf, precision_bits=precision_bits)
