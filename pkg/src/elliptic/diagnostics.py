from math import isqrt

import sympy

from src.elliptic.curve import CurveData
from src.elliptic.local_field import vp

# degrees of cyclic isogenies defined over Q (Kenku's classification)
KENKU_DEGREES = tuple(range(1, 20)) + (21, 25, 27, 37, 43, 67, 163)


def disc_is_square(curve: CurveData) -> bool:
    return curve.disc > 0 and isqrt(curve.disc) ** 2 == curve.disc


def has_two_isogeny(curve: CurveData) -> bool:
    """A rational root of 4x^3 + b2 x^2 + 2 b4 x + b6, found as an integer root of X = 4x."""
    X = sympy.Symbol("X")
    poly = sympy.Poly([1, curve.b2, 8 * curve.b4, 16 * curve.b6], X)
    return any(r.is_integer for r in poly.ground_roots())


def potentially_good(curve: CurveData, p: int) -> bool:
    return curve.j == 0 or vp(curve.j, p) >= 0
