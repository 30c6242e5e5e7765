"""The rational eigen-functionals attached to an elliptic curve and the symbols [r]^+, [r]^-."""
import json
import logging
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from src.errors import EigenlineNotFound, NormalisationAmbiguous
from src.exact_math.linalg import RationalMatrix, Vector, left_kernel
from src.modsym.hecke import hecke_operator
from src.modsym.manin import ManinSpace, path_symbols

logger = logging.getLogger(__name__)

START_BOUND = 23
MAX_BOUND = 23 * 2 ** 5


def _refine(W: List[Vector], A: RationalMatrix) -> List[Vector]:
    """Rows of W spanning {phi in span(W) : phi A = 0}."""
    if not W:
        return []
    WA = RationalMatrix(W, A.nrows) * A
    Y = left_kernel(WA)
    return [_combine(y, W) for y in Y]


def _combine(y: Sequence[Fraction], W: Sequence[Vector]) -> Vector:
    out = [Fraction(0)] * len(W[0])
    for coeff, row in zip(y, W):
        if coeff:
            for j, x in enumerate(row):
                if x:
                    out[j] += coeff * x
    return out


def _shift(A: RationalMatrix, scalar: int) -> RationalMatrix:
    return RationalMatrix(
        [[x - scalar if i == j else x for j, x in enumerate(row)] for i, row in enumerate(A.rows)], A.ncols
    )


def _primitive_integral(values: Sequence[Fraction]) -> Fraction:
    """Scalar making the given rationals coprime integers with a positive first nonzero entry."""
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    g = 0
    for v in values:
        g = gcd(g, int(v * den))
    if g == 0:
        raise EigenlineNotFound("eigen-functional vanishes on every Manin symbol")
    lead = next(v for v in values if v)
    return Fraction(den, g) * (1 if lead > 0 else -1)


class EigenFunctionals:
    """Unnormalised plus and minus functionals on a ManinSpace, scaled to coprime integer values."""

    def __init__(self, space: ManinSpace, plus: Vector, minus: Vector, ap: Dict[int, int], bound: int):
        self.space = space
        self.ap = ap
        self.matching_bound = bound
        self.plus, self.plus_values = self._scaled(plus)
        self.minus, self.minus_values = self._scaled(minus)

    def _scaled(self, phi: Vector) -> Tuple[Vector, List[Fraction]]:
        values = [sum((phi[k] * x for k, x in coords.items()), Fraction(0)) for coords in self.space.coordinates]
        scale = _primitive_integral(values)
        return [x * scale for x in phi], [v * scale for v in values]

    def raw(self, r: Fraction) -> Tuple[Fraction, Fraction]:
        plus = minus = Fraction(0)
        p1 = self.space.p1
        for c, d in path_symbols(Fraction(r)):
            k = p1.index_of(c, d)
            plus += self.plus_values[k]
            minus += self.minus_values[k]
        return plus, minus


def eigen_functionals(space: ManinSpace, curve, start_bound: int = START_BOUND) -> EigenFunctionals:
    """Joint a_p-eigenline of the transposed Hecke action, split by the star involution."""
    from src.elliptic.points import a_p

    N = space.N
    n = space.dimension
    W: List[Vector] = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    star = space.star_matrix()
    ap: Dict[int, int] = {}
    bound = start_bound
    while bound <= MAX_BOUND:
        for p in sympy.primerange(2, bound + 1):
            if N % p == 0 or p in ap:
                continue
            ap[p] = a_p(curve, p)
            W = _refine(W, _shift(hecke_operator(space, p), ap[p]))
            logger.debug("level %d: after T_%d the joint eigenspace has dimension %d", N, p, len(W))
            if not W:
                raise EigenlineNotFound(f"no eigenline at level {N} matches a_{p}={ap[p]} of {curve.name}")
        plus = _refine(W, _shift(star, 1))
        minus = _refine(W, _shift(star, -1))
        if len(plus) == 1 and len(minus) == 1:
            logger.info("level %d: eigenline isolated with primes up to %d", N, bound)
            return EigenFunctionals(space, plus[0], minus[0], ap, bound)
        if not plus or not minus:
            raise EigenlineNotFound(f"star splits the eigenspace of {curve.name} as {len(plus)} + {len(minus)}")
        bound *= 2
    raise EigenlineNotFound(f"eigenspace of {curve.name} still has dimension {len(W)} with primes up to {MAX_BOUND}")


class EigenSymbol:
    """Normalised modular symbols r -> ([r]^+, [r]^-) of an elliptic curve."""

    def __init__(self, functionals: EigenFunctionals, s_plus: Fraction, s_minus: Fraction,
                 periods, curve, warnings: Optional[List[str]] = None, anchors: Optional[Dict[str, list]] = None):
        self.functionals = functionals
        self.N = functionals.space.N
        self.s_plus = s_plus
        self.s_minus = s_minus
        self.periods = periods
        self.curve = curve
        self.warnings = list(warnings or [])
        self.anchors = anchors or {}

    @property
    def space(self) -> ManinSpace:
        return self.functionals.space

    @property
    def ap(self) -> Dict[int, int]:
        return self.functionals.ap

    def symbol_pm(self, r) -> Tuple[Fraction, Fraction]:
        plus, minus = self.functionals.raw(Fraction(r))
        return self.s_plus * plus, self.s_minus * minus

    def closed_symbol(self, b: int, d: int) -> Tuple[Fraction, Fraction]:
        """Values on {0, b/d}, a closed path when gcd(d, N) = 1."""
        p1, m1 = self.symbol_pm(Fraction(b, d))
        p0, m0 = self.symbol_pm(Fraction(0))
        return p1 - p0, m1 - m0

    def to_json(self) -> Dict[str, object]:
        f = self.functionals
        return {
            "level": self.N,
            "curve": self.curve.name,
            "ap": {str(p): a for p, a in sorted(f.ap.items())},
            "matching_bound": f.matching_bound,
            "plus": [str(x) for x in f.plus],
            "minus": [str(x) for x in f.minus],
            "s_plus": str(self.s_plus),
            "s_minus": str(self.s_minus),
            "anchors": self.anchors,
            "warnings": self.warnings,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def symbol_pm(eig: EigenSymbol, r) -> Tuple[Fraction, Fraction]:
    return eig.symbol_pm(r)


def eigen_symbol_for_curve(space: ManinSpace, curve, periods, disc_bound: int = 50) -> EigenSymbol:
    from src.elliptic.periods import periods as compute_periods
    from src.modsym.normalize import normalize

    if curve.conductor != space.N:
        raise EigenlineNotFound(f"{curve.name} has conductor {curve.conductor}, space has level {space.N}")
    functionals = eigen_functionals(space, curve)
    try:
        result = normalize(functionals, curve, periods, disc_bound=disc_bound)
    except NormalisationAmbiguous as e:
        bits = 2 * periods.precision_bits
        logger.warning("normalisation of %s failed at %d bits (%s); retrying at %d", curve.name,
                       periods.precision_bits, e, bits)
        periods = compute_periods(curve, bits)
        result = normalize(functionals, curve, periods, disc_bound=disc_bound)
    return EigenSymbol(functionals, result.s_plus, result.s_minus, periods, curve, result.warnings, result.anchors)
