"""The Birch sum  L^a(E, chi) = sum_{a mod m} chi(a) [a/m]^eps,  eps = chi(-1)."""
from fractions import Fraction
from math import gcd
from typing import Tuple

from src.dirichlet.character import DirichletCharacter
from src.errors import PreconditionViolated
from src.exact_math.cyclo import CycloNumber, cyclo_reduce
from src.modsym.mu import MuContext, mu_symbol


def _character_sum(chi: DirichletCharacter, values) -> CycloNumber:
    """sum chi(a) x_a over units a mod m, exact in Q(zeta_d)."""
    d = chi.order
    raw = [Fraction(0)] * d
    for a, x in values:
        if x:
            raw[int(chi.angle(a) * d)] += x
    return cyclo_reduce(d, raw)


def lla_value(eig, chi: DirichletCharacter) -> CycloNumber:
    if chi.is_trivial():
        raise PreconditionViolated("the Birch sum is only taken for non-trivial characters")
    m = chi.modulus
    sign = 0 if chi.parity == 1 else 1
    values = []
    for a in range(1, m):
        if gcd(a, m) == 1:
            values.append((a, eig.symbol_pm(Fraction(a, m))[sign]))
    return _character_sum(chi, values)


def _pair_sums(chi: DirichletCharacter, pairs) -> Tuple[CycloNumber, CycloNumber]:
    plus = _character_sum(chi, [(a, v[0]) for a, v in pairs])
    minus = _character_sum(chi, [(a, v[1]) for a, v in pairs])
    return plus, minus


def birch_sum_identity_check(eig, chi: DirichletCharacter, ctx: MuContext) -> bool:
    """sum chi(a) [a/m]^{+-} equals sum chi(a) mu(a/m)^{+-} in both components."""
    m = chi.modulus
    if ctx.m != m:
        raise PreconditionViolated(f"context modulus {ctx.m} differs from the character modulus {m}")
    if m == ctx.delta:
        raise PreconditionViolated(f"m = delta = {m}")
    units = [a for a in range(1, m) if gcd(a, m) == 1]
    lhs = _pair_sums(chi, [(a, eig.symbol_pm(Fraction(a, m))) for a in units])
    rhs = _pair_sums(chi, [(a, mu_symbol(eig, ctx, a)) for a in units])
    return lhs == rhs


def galois_conjugate_lla(eig, chi: DirichletCharacter, sigma: int) -> Tuple[CycloNumber, CycloNumber]:
    """(L^a(chi^sigma), sigma(L^a(chi))), equal for every sigma prime to the order."""
    return lla_value(eig, chi.galois_conjugate(sigma)), lla_value(eig, chi).galois(sigma)
