import logging
from fractions import Fraction
from typing import List, Tuple

import mpmath

from src.errors import AmbiguousReconstruction, NoCandidate

logger = logging.getLogger(__name__)

SEPARATION = 10 ** 6


def convergents(x: mpmath.mpf, denominator_cap: int) -> List[Fraction]:
    """Continued-fraction convergents of x with denominator at most the cap."""
    out: List[Fraction] = []
    p_prev, q_prev = 1, 0
    p, q = int(mpmath.floor(x)), 1
    rest = x - p
    while q <= denominator_cap:
        out.append(Fraction(p, q))
        if rest == 0 or abs(rest) < mpmath.mpf(2) ** (-mpmath.mp.prec + 8):
            break
        inv = 1 / rest
        a = int(mpmath.floor(inv))
        rest = inv - a
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
    return out


def farey_neighbour_denominators(r: Fraction, cap: int) -> Tuple[int, int]:
    """Denominators of the two neighbours of r in the Farey sequence of order cap."""
    p, q = r.numerator, r.denominator
    if q == 1:
        return cap, cap
    inv = pow(p % q, -1, q)
    left = inv + q * ((cap - inv) // q)
    right_res = (-inv) % q
    right = right_res + q * ((cap - right_res) // q)
    return left, right


def rational_reconstruct(x, denominator_cap: int, tolerance) -> Fraction:
    """The unique p/q (q <= cap) within tolerance of x, separated from every other candidate."""
    tol = mpmath.mpf(tolerance)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    x = mpmath.mpf(x)
    candidates = [c for c in convergents(x, denominator_cap) if abs(x - mpmath.mpf(c.numerator) / c.denominator) <= tol]
    if not candidates:
        raise NoCandidate(f"no rational with denominator <= {denominator_cap} within {mpmath.nstr(tol, 5)} of {mpmath.nstr(x, 20)}")
    best = candidates[0]
    left, right = farey_neighbour_denominators(best, denominator_cap)
    gap = mpmath.mpf(1) / (best.denominator * max(left, right))
    if gap - tol < SEPARATION * tol:
        raise AmbiguousReconstruction(
            f"{best} is not separated from other fractions with denominator <= {denominator_cap}"
        )
    logger.debug("reconstructed %s from %s", best, mpmath.nstr(x, 15))
    return best
