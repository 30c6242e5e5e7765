"""Prime ideals above p in Z[zeta_L], via the factorisation of Phi_L mod p."""
from fractions import Fraction
from typing import List

import sympy

from src.exact_math.cyclo import CycloNumber, cyclotomic_coeffs

_X = sympy.Symbol("x")


class PrimeIdeal:
    """The ideal (p, g(zeta_L)) for a monic irreducible factor g of Phi_L mod p."""

    def __init__(self, order: int, p: int, factor: sympy.Poly):
        self.order = order
        self.p = p
        self.factor = factor

    def reduce(self, x: CycloNumber) -> sympy.Poly:
        x = x.lift(self.order) if x.order != self.order else x
        coeffs = []
        for c in x.coeffs:
            if c.denominator % self.p == 0:
                raise ValueError(f"{x} is not {self.p}-integral")
            coeffs.append(c.numerator * pow(c.denominator, -1, self.p) % self.p)
        return sympy.Poly(list(reversed(coeffs)) or [0], _X, modulus=self.p)

    def contains(self, x: CycloNumber) -> bool:
        return self.reduce(x).rem(self.factor).is_zero

    def __repr__(self):
        return f"PrimeIdeal(order={self.order}, p={self.p}, g={self.factor.as_expr()})"


def primes_above(order: int, p: int) -> List[PrimeIdeal]:
    phi = sympy.Poly(list(reversed(cyclotomic_coeffs(order))), _X, modulus=p)
    _, factors = phi.factor_list()
    return [PrimeIdeal(order, p, f) for f, _ in factors]


def is_unit_at(x: CycloNumber, ideal: PrimeIdeal) -> bool:
    return not ideal.contains(x)


def congruent_to_one(x: CycloNumber, ideal: PrimeIdeal) -> bool:
    """x = 1 mod the ideal; elements that are not p-integral never qualify."""
    try:
        return ideal.contains(x - Fraction(1))
    except ValueError:
        return False
