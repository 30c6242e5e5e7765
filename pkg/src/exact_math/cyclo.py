"""Exact arithmetic in cyclotomic fields Q(zeta_d).

Elements are stored reduced modulo the d-th cyclotomic polynomial in the power
basis 1, z, ..., z^(phi(d)-1).  That basis is an integral basis of Z[zeta_d],
so integrality is a coefficient check.
"""
import logging
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import mpmath
import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]

_X = sympy.Symbol("x")


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def cyclotomic_coeffs(d: int) -> Tuple[int, ...]:
    """Coefficients of Phi_d, lowest degree first."""
    poly = sympy.Poly(sympy.cyclotomic_poly(d, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def euler_phi(d: int) -> int:
    return int(sympy.totient(d))


@lru_cache(maxsize=None)
def units_mod(d: int) -> Tuple[int, ...]:
    if d <= 2:
        return (1,)
    return tuple(s for s in range(1, d) if gcd(s, d) == 1)


def cyclo_reduce(d: int, raw: Sequence[Scalar]) -> "CycloNumber":
    if d < 1:
        raise ValueError(f"order must be positive, got {d}")
    phi = euler_phi(d)
    work = [Fraction(0)] * max(d, phi + 1)
    for j, c in enumerate(raw):
        if c:
            work[j % d] += c
    poly = cyclotomic_coeffs(d)
    for k in range(d - 1, phi - 1, -1):
        c = work[k]
        if c:
            shift = k - phi
            for i, pc in enumerate(poly):
                if pc:
                    work[shift + i] -= c * pc
    return CycloNumber(d, tuple(work[:phi]))


class CycloNumber:
    __slots__ = ("order", "coeffs", "_canonical")

    def __init__(self, order: int, coeffs: Sequence[Scalar]):
        if len(coeffs) != euler_phi(order):
            raise ValueError(f"expected {euler_phi(order)} coefficients for order {order}, got {len(coeffs)}")
        self.order = order
        self.coeffs: Tuple[Fraction, ...] = tuple(Fraction(c) for c in coeffs)
        self._canonical: Optional["CycloNumber"] = None

    # constructors

    @classmethod
    def rational(cls, q: Scalar, order: int = 1) -> "CycloNumber":
        coeffs = [Fraction(0)] * euler_phi(order)
        coeffs[0] = Fraction(q)
        return cls(order, coeffs)

    @classmethod
    def zeta(cls, d: int, k: int = 1) -> "CycloNumber":
        raw = [0] * d
        raw[k % d] = 1
        return cyclo_reduce(d, raw)

    @classmethod
    def root_of_unity(cls, angle: Fraction) -> "CycloNumber":
        """exp(2*pi*i*angle) for a rational angle."""
        angle = Fraction(angle) % 1
        return cls.zeta(angle.denominator, angle.numerator)

    # structure

    def lift(self, L: int) -> "CycloNumber":
        if L % self.order:
            raise ValueError(f"cannot lift order {self.order} into order {L}")
        if L == self.order:
            return self
        step = L // self.order
        raw = [Fraction(0)] * L
        for j, c in enumerate(self.coeffs):
            raw[j * step] = c
        return cyclo_reduce(L, raw)

    def descend(self, d: int) -> "CycloNumber":
        """Re-express this element in Q(zeta_d); ValueError if it does not lie there."""
        from src.exact_math.linalg import RationalMatrix, solve

        L = lcm(self.order, d)
        target = self.lift(L)
        basis = [CycloNumber.zeta(d, j).lift(L) for j in range(euler_phi(d))]
        rows = [[b.coeffs[i] for b in basis] for i in range(euler_phi(L))]
        solution = solve(RationalMatrix(rows), list(target.coeffs))
        if solution is None:
            raise ValueError(f"{self!r} does not lie in Q(zeta_{d})")
        return CycloNumber(d, solution)

    def minimal_form(self) -> "CycloNumber":
        if self._canonical is None:
            if self.is_rational():
                self._canonical = CycloNumber.rational(self.coeffs[0])
            else:
                for d in sympy.divisors(self.order):
                    if d == self.order:
                        self._canonical = self
                        break
                    if d % 4 == 2:
                        continue
                    try:
                        self._canonical = self.descend(d)
                        break
                    except ValueError:
                        continue
        return self._canonical

    def minimal_order(self) -> int:
        return self.minimal_form().order

    def _align(self, other) -> Tuple["CycloNumber", "CycloNumber"]:
        if not isinstance(other, CycloNumber):
            other = CycloNumber.rational(other, self.order)
        if other.order == self.order:
            return self, other
        L = lcm(self.order, other.order)
        return self.lift(L), other.lift(L)

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, (CycloNumber, int, Fraction)):
            return NotImplemented
        a, b = self._align(other)
        return CycloNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, (CycloNumber, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber(self.order, [c * other for c in self.coeffs])
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._align(other)
        raw = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        raw[i + j] += x * y
        return cyclo_reduce(a.order, raw)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a cyclotomic number by zero")
            return CycloNumber(self.order, [c / other for c in self.coeffs])
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber.rational(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparisons

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        canon = self.minimal_form()
        return hash((canon.order, canon.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    # Galois structure

    def galois(self, sigma: int) -> "CycloNumber":
        d = self.order
        if gcd(sigma, d) != 1:
            raise ValueError(f"sigma={sigma} is not a unit modulo {d}")
        if d <= 2:
            return self
        raw = [Fraction(0)] * d
        for j, c in enumerate(self.coeffs):
            if c:
                raw[(j * sigma) % d] += c
        return cyclo_reduce(d, raw)

    def conj(self) -> "CycloNumber":
        return self.galois(-1)

    def conjugates(self) -> List["CycloNumber"]:
        return [self.galois(s) for s in units_mod(self.order)]

    def norm(self) -> Fraction:
        result = CycloNumber.rational(1, self.order)
        for x in self.conjugates():
            result = result * x
        return result.coeffs[0]

    def trace(self) -> Fraction:
        return cyclo_sum(self.conjugates(), self.order).coeffs[0]

    def inverse(self) -> "CycloNumber":
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        others = CycloNumber.rational(1, self.order)
        for s in units_mod(self.order):
            if s != 1:
                others = others * self.galois(s)
        n = (self * others).coeffs[0]
        return others / n

    # predicates and conversions

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def denominator(self) -> int:
        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        return den

    def to_complex(self, prec: int = 128) -> mpmath.mpc:
        with mpmath.workprec(prec):
            total = mpmath.mpc(0)
            for j, c in enumerate(self.coeffs):
                if c:
                    total += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(mpmath.mpf(2 * j) / self.order)
            return total

    def to_json(self) -> Dict[str, object]:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Dict[str, object]) -> "CycloNumber":
        return cls(int(data["order"]), [Fraction(str(c)) for c in data["coeffs"]])

    def __repr__(self):
        return f"CycloNumber({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_cyclo(self)


def _generator_name(d: int) -> str:
    return "i" if d == 4 else f"z{d}"


def format_cyclo(x: CycloNumber) -> str:
    x = x.minimal_form()
    den = x.denominator()
    nums = [int(c * den) for c in x.coeffs]
    name = _generator_name(x.order)
    terms = []
    for j, n in enumerate(nums):
        if n == 0:
            continue
        if j == 0:
            mono = str(abs(n))
        else:
            power = name if j == 1 else f"{name}^{j}"
            mono = power if abs(n) == 1 else f"{abs(n)}{power}"
        sign = "-" if n < 0 else "+"
        terms.append((sign, mono))
    if not terms:
        return "0"
    text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, mono in terms[1:]:
        text += sign + mono
    if den == 1:
        return text
    if len(terms) == 1 and not text.startswith("-"):
        return f"{text}/{den}"
    return f"({text})/{den}"


_ZETA_NAME = re.compile(r"z(\d+)")
_TRANSFORMS = standard_transformations + (convert_xor,)
_IMPLICIT = [(re.compile(r"(\d)([a-z(])"), r"\1*\2"), (re.compile(r"\)([a-z0-9(])"), r")*\1")]


def parse_cyclo(expr: str) -> CycloNumber:
    """Parse expressions such as ``(2+4z5+z5^2+3z5^3)/5``, ``z3+1`` or ``2-i``."""
    text = expr.replace("ζ", "z").replace(" ", "")
    for pattern, repl in _IMPLICIT:
        text = pattern.sub(repl, text)
    orders = sorted({int(n) for n in _ZETA_NAME.findall(text)})
    symbols = {f"z{d}": sympy.Symbol(f"z{d}") for d in orders}
    local = dict(symbols)
    local["i"] = sympy.Symbol("z4")
    try:
        parsed = sympy.expand(parse_expr(text, local_dict=local, transformations=_TRANSFORMS))
    except (SyntaxError, TypeError, sympy.SympifyError) as e:
        raise ValueError(f"cannot parse cyclotomic expression {expr!r}: {e}")
    gens = sorted(parsed.free_symbols, key=lambda s: s.name)
    unknown = [g for g in gens if not _ZETA_NAME.fullmatch(g.name)]
    if unknown:
        raise ValueError(f"unknown symbols {unknown} in {expr!r}")
    if not gens:
        value = sympy.Rational(parsed)
        return CycloNumber.rational(Fraction(int(value.p), int(value.q)))
    total = CycloNumber.rational(0)
    for monom, coeff in sympy.Poly(parsed, *gens).terms():
        coeff = sympy.Rational(coeff)
        term = CycloNumber.rational(Fraction(int(coeff.p), int(coeff.q)))
        for g, k in zip(gens, monom):
            if k:
                term = term * CycloNumber.zeta(int(g.name[1:]), k)
        total = total + term
    return total


def root_of_unity_angle(x: CycloNumber) -> Optional[Fraction]:
    """Angle k/n with x = exp(2 pi i k/n), or None when x is not a root of unity."""
    canon = x.minimal_form()
    n = 2 * canon.order
    for j in range(n):
        if canon == CycloNumber.zeta(n, j):
            return Fraction(j, n)
    return None


def cyclo_sum(values: Iterable[CycloNumber], order: int = 1) -> CycloNumber:
    total = CycloNumber.rational(0, order)
    for v in values:
        total = total + v
    return total
