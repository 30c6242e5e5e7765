from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Tuple

from src.errors import PreconditionViolated


@dataclass(frozen=True)
class MuContext:
    m: int
    N: int

    @property
    def D(self) -> int:
        return gcd(self.m, self.N)

    @property
    def delta(self) -> int:
        return gcd(self.D, self.N // self.D)

    @property
    def m_tilde(self) -> int:
        return self.m // self.D

    def alpha(self, a: int) -> int:
        """Least residue of a*m_tilde modulo delta in (-delta/2, delta/2]."""
        delta = self.delta
        r = (a * self.m_tilde) % delta
        if 2 * r > delta:
            r -= delta
        return r


def mu_context(m: int, N: int) -> MuContext:
    ctx = MuContext(m, N)
    if gcd(ctx.m_tilde, ctx.delta) != 1:
        raise ArithmeticError(f"m/D = {ctx.m_tilde} is not coprime to delta = {ctx.delta}")
    return ctx


def mu_symbol(eig, ctx: MuContext, a: int) -> Tuple[Fraction, Fraction]:
    if gcd(a, ctx.m) != 1:
        raise PreconditionViolated(f"{a} is not a unit modulo {ctx.m}")
    if ctx.delta == 2:
        if ctx.m % 4:
            raise PreconditionViolated(f"delta = 2 needs 4 | m, got m = {ctx.m}")
        return eig.symbol_pm(Fraction(a, ctx.m))
    plus, minus = eig.symbol_pm(Fraction(a, ctx.m))
    plus0, minus0 = eig.symbol_pm(Fraction(ctx.alpha(a), ctx.D))
    return plus - plus0, minus - minus0
