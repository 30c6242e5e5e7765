from fractions import Fraction
from math import gcd

import mpmath

from src.dirichlet.character import DirichletCharacter
from src.exact_math.cyclo import CycloNumber, cyclo_reduce, lcm


def gauss_sum(chi: DirichletCharacter) -> CycloNumber:
    """G(chi) = sum_a chi(a) exp(2 pi i a/m), exact in Q(zeta_lcm(d, m))."""
    m = chi.modulus
    L = lcm(chi.order, m)
    raw = [Fraction(0)] * L
    for a in range(1, m + 1):
        if gcd(a, m) != 1:
            continue
        angle = chi.angle(a)
        raw[int(angle * L + Fraction(a * L, m)) % L] += 1
    return cyclo_reduce(L, raw)


def gauss_sum_numeric(chi: DirichletCharacter, prec: int = 128) -> mpmath.mpc:
    with mpmath.workprec(prec):
        total = mpmath.mpc(0)
        for a in range(1, chi.modulus + 1):
            angle = chi.angle(a)
            if angle is not None:
                total += mpmath.expjpi(2 * (mpmath.mpf(angle.numerator) / angle.denominator + mpmath.mpf(a) / chi.modulus))
        return total


def check_gauss_norm(chi: DirichletCharacter) -> bool:
    """|G(chi)|^2 = conductor for primitive chi."""
    g = gauss_sum(chi)
    return (g * g.conj()).to_rational() == chi.conductor
