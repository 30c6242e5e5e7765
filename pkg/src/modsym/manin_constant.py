"""The period lattice of integral homology measured against the Néron lattice.

Integral homology H_1(X_0(N), Z) is the set of integer combinations of Manin
symbols with zero boundary.  Its image under ([.]^+, [.]^-) is read off an
echelon basis of the lattice spanned by (boundary, plus value, minus value)
over all symbols: the basis vectors with zero boundary part span it.
"""
import logging
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

from src.errors import NormalisationAmbiguous
from src.exact_math.linalg import gcd_rationals, integer_echelon, lattice_basis_2d

logger = logging.getLogger(__name__)


def _common_denominator(values) -> int:
    den = 1
    for v in values:
        den = den * v.denominator // gcd(den, v.denominator)
    return den


def integral_homology_symbols(eig) -> List[Tuple[Fraction, Fraction]]:
    """([g]^+, [g]^-) for g running over a Z-basis of the image of H_1(X_0(N), Z)."""
    space = eig.space
    functionals = eig.functionals
    boundaries = [space.symbol_boundary(c, d) for c, d in space.p1]
    cusps = len(space.cusps)
    den = _common_denominator(functionals.plus_values + functionals.minus_values)
    rows = [
        [b.get(k, 0) for k in range(cusps)] + [int(p * den), int(m * den)]
        for b, p, m in zip(boundaries, functionals.plus_values, functionals.minus_values)
    ]
    out = []
    for v in integer_echelon(rows):
        if any(v[:cusps]):
            continue
        out.append((eig.s_plus * Fraction(v[cusps], den), eig.s_minus * Fraction(v[cusps + 1], den)))
    logger.debug("level %d: integral homology has rank %d on the eigenline", eig.N, len(out))
    return out


def homology_coordinates(eig) -> List[Tuple[Fraction, Fraction]]:
    """Néron-lattice coordinates of the integral homology lattice L_f."""
    return [eig.periods.lattice_coordinates(plus, minus) for plus, minus in integral_homology_symbols(eig)]


def sampled_closed_paths(eig, bound: int) -> List[Tuple[Fraction, Fraction]]:
    """Néron-lattice coordinates of lambda({0, b/d}) for gcd(d, N) = 1 and d <= bound."""
    out = []
    for d in range(1, bound + 1):
        if gcd(d, eig.N) != 1:
            continue
        for b in range(d):
            if gcd(b, d) != 1:
                continue
            plus, minus = eig.closed_symbol(b, d)
            out.append(eig.periods.lattice_coordinates(plus, minus))
    return out


def c0_covolume_estimate(eig, bound: Optional[int] = None) -> Fraction:
    """Least c > 0 with c * L_f inside the Néron lattice, L_f the image of integral homology.

    The covolume of L_f relative to the Néron lattice is checked against c0^-2
    and a mismatch is only logged.  With a bound, the closed paths {0, b/d},
    d <= bound, are checked to lie in L_f.
    """
    coordinates = homology_coordinates(eig)
    g = gcd_rationals([x for v in coordinates for x in v])
    if g <= 0:
        raise NormalisationAmbiguous(f"integral homology of level {eig.N} has zero periods")
    c0 = 1 / g
    ratio = covolume_ratio(coordinates)
    if ratio != c0 ** -2:
        logger.warning("%s: L_f has covolume ratio %s, not c0^-2 = %s", eig.curve.name, ratio, c0 ** -2)
    if bound:
        basis = lattice_basis_2d(coordinates)
        for point in sampled_closed_paths(eig, bound):
            if not in_lattice(basis, point):
                raise NormalisationAmbiguous(f"{eig.curve.name}: closed path with coordinates {point} is not in L_f")
    return c0


def in_lattice(basis, point: Tuple[Fraction, Fraction]) -> bool:
    (a, b), (_, c) = basis
    x, y = point
    if not a:
        return x == 0 and (y / c).denominator == 1
    k = x / a
    return k.denominator == 1 and ((y - k * b) / c).denominator == 1


def covolume_ratio(coordinates: List[Tuple[Fraction, Fraction]]) -> Fraction:
    (a, _), (_, c) = lattice_basis_2d(coordinates)
    return abs(a * c)


def denominator_scan(eig, modulus_bound: int) -> Dict[str, object]:
    """Largest denominator among [a/m]^+ and [a/m]^- for m <= modulus_bound."""
    worst = (1, None)
    for m in range(1, modulus_bound + 1):
        for a in range(m):
            if gcd(a, m) != 1:
                continue
            for value in eig.symbol_pm(Fraction(a, m)):
                if value.denominator > worst[0]:
                    worst = (value.denominator, f"{a}/{m}")
    return {"curve": eig.curve.name, "modulus_bound": modulus_bound, "max_denominator": worst[0], "at": worst[1]}
