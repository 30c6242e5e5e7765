"""Point counts over finite fields, Frobenius traces, Dirichlet coefficients and torsion."""
import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy

from src.elliptic.curve import CurveData, quadratic_twist
from src.types import TorsionReport

logger = logging.getLogger(__name__)


def count_points_mod_p(ainvs: Sequence[int], p: int) -> int:
    """#E(F_p) including the point at infinity, for a model that is nonsingular mod p."""
    a1, a2, a3, a4, a6 = (int(a) % p for a in ainvs)
    if p == 2:
        count = 1
        for x in range(2):
            for y in range(2):
                if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2 == 0:
                    count += 1
        return count
    b2 = (a1 * a1 + 4 * a2) % p
    b4 = (2 * a4 + a1 * a3) % p
    b6 = (a3 * a3 + 4 * a6) % p
    x = np.arange(p, dtype=np.int64)
    x2 = x * x % p
    x3 = x2 * x % p
    f = (4 * x3 + b2 * x2 + 2 * b4 * x + b6) % p
    squares = np.zeros(p, dtype=bool)
    squares[x2] = True
    legendre = np.where(f == 0, 0, np.where(squares[f], 1, -1))
    return int(p + 1 + legendre.sum())


@lru_cache(maxsize=None)
def _trace(ainvs: Tuple[int, ...], p: int) -> int:
    return p + 1 - count_points_mod_p(ainvs, p)


def a_p(curve: CurveData, p: int) -> int:
    if not curve.is_good(p):
        reduction = curve.local[p].reduction
        return {"split": 1, "nonsplit": -1}.get(reduction, 0)
    t = _trace(curve.ainvs, p)
    if t * t > 4 * p:
        raise ArithmeticError(f"trace {t} at p={p} violates the Hasse bound")
    return t


def count_points(curve: CurveData, p: int) -> int:
    if not curve.is_good(p):
        raise ValueError(f"{curve.name} has bad reduction at {p}")
    return p + 1 - a_p(curve, p)


def count_points_extension(curve: CurveData, p: int, f: int) -> int:
    """#E(F_{p^f}) at a good prime from the trace recursion s_k = a s_{k-1} - p s_{k-2}."""
    a = a_p(curve, p)
    return p ** f + 1 - frobenius_power_trace(a, p, f)


def frobenius_power_trace(a: int, q: int, f: int) -> int:
    s_prev, s = 2, a
    if f == 0:
        return 2
    for _ in range(f - 1):
        s_prev, s = s, a * s - q * s_prev
    return s


def an_table(curve: CurveData, bound: int) -> List[int]:
    """[a_0, a_1, ..., a_bound] with a_0 = 0."""
    a = [0] * (bound + 1)
    if bound < 1:
        return a
    a[1] = 1
    spf = list(range(bound + 1))
    for i in range(2, isqrt(bound) + 1):
        if spf[i] == i:
            for k in range(i * i, bound + 1, i):
                if spf[k] == k:
                    spf[k] = i
    for n in range(2, bound + 1):
        p = spf[n]
        m, k = n, 0
        while m % p == 0:
            m //= p
            k += 1
        if m > 1:
            a[n] = a[p ** k] * a[m]
            continue
        # n = p^k
        ap = a_p(curve, p)
        if k == 1:
            a[n] = ap
        elif curve.is_good(p):
            a[n] = ap * a[n // p] - p * a[n // (p * p)]
        else:
            a[n] = ap * a[n // p]
    return a


# torsion over Q by Lutz-Nagell on y^2 = x^3 - 27 c4 x - 54 c6

def _short_add(P, Q, A):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and y1 == -y2:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + A) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return x3, lam * (x1 - x3) - y1


def _is_torsion(P, A: int, bound: int = 12) -> bool:
    Q = P
    for _ in range(bound):
        if Q is None:
            return True
        if Q[0].denominator != 1 or Q[1].denominator != 1:
            return False
        Q = _short_add(Q, P, A)
    return Q is None


def _square_divisor_roots(n: int) -> List[int]:
    """All y > 0 with y^2 | n."""
    roots = [1]
    for p, k in sympy.factorint(abs(n)).items():
        roots = [y * p ** j for y in roots for j in range(k // 2 + 1)]
    return sorted(roots)


def _integer_roots(coeffs: Sequence[int]) -> List[int]:
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(coeffs), x)
    return sorted(int(r) for r in poly.ground_roots() if r.is_integer)


def torsion_points(curve: CurveData) -> List[Optional[Tuple[Fraction, Fraction]]]:
    A = -27 * curve.c4
    B = -54 * curve.c6
    D = 4 * A ** 3 + 27 * B ** 2
    points: List[Optional[Tuple[Fraction, Fraction]]] = [None]
    for y in [0] + _square_divisor_roots(D):
        for x in _integer_roots([1, 0, A, B - y * y]):
            for yy in ({y, -y} if y else {0}):
                P = (Fraction(x), Fraction(yy))
                if _is_torsion(P, A):
                    points.append(P)
    return points


def torsion_order_Q(curve: CurveData) -> int:
    return len(torsion_points(curve))


def _odd_part(n: int) -> int:
    while n % 2 == 0:
        n //= 2
    return n


def _roots_over(coeffs: Sequence, root) -> List[sympy.Expr]:
    """Roots in Q(root) of the polynomial with the given coefficients."""
    x = sympy.Symbol("x")
    poly = sympy.Poly(list(coeffs), x, extension=root)
    out = []
    for factor, _ in poly.factor_list()[1]:
        if factor.degree() == 1:
            lead, const = factor.all_coeffs()
            out.append(sympy.expand(sympy.radsimp(-const / lead)))
    return out


def two_power_torsion_quadratic(curve: CurveData, D: int) -> int:
    """#E(Q(sqrt D))[2^inf]: the 2-torsion over the field, then repeated halving."""
    root = sympy.sqrt(D)
    A = sympy.Integer(-27 * curve.c4)
    B = sympy.Integer(-54 * curve.c6)
    found = set()
    frontier = []
    for r in _roots_over([1, 0, A, B], root):
        found.add((str(r), "0"))
        frontier.append(r)
    while frontier:
        xp = frontier.pop()
        # x(2Q) = xp  <=>  x^4 - 2A x^2 - 8B x + A^2 = 4 xp (x^3 + A x + B)
        quartic = [1, -4 * xp, -2 * A, sympy.expand(-8 * B - 4 * A * xp), sympy.expand(A * A - 4 * B * xp)]
        for xq in _roots_over(quartic, root):
            v = sympy.expand(xq ** 3 + A * xq + B)
            if v == 0:
                continue
            for yq in _roots_over([1, 0, -v], root):
                key = (str(xq), str(yq))
                if key not in found:
                    found.add(key)
                    frontier.append(xq)
    return 1 + len(found)


def torsion_order_quadratic(curve: CurveData, D: int) -> int:
    """#E(Q(sqrt D))_tors; the odd part splits over E and its twist by D."""
    odd = _odd_part(torsion_order_Q(curve)) * _odd_part(torsion_order_Q(quadratic_twist(curve, D)))
    return two_power_torsion_quadratic(curve, D) * odd


def _good_primes(curve: CurveData, modulus: int):
    bad = curve.conductor * modulus
    p = 3
    while True:
        if bad % p:
            yield p
        p = sympy.nextprime(p)


def torsion_bound_Kchi(curve: CurveData, chi, primes: int = 25) -> TorsionReport:
    """Torsion of E over K_chi.

    Exact for quadratic characters. Otherwise the gcd of #E(F_{l^f}) over good
    primes l, f the residue degree of l in K_chi, which is an upper bound.
    """
    if chi.order == 2:
        prim = chi.primitive()
        order = torsion_order_quadratic(curve, prim.parity * prim.modulus)
        logger.info("torsion over K_chi for %s: %d (exact)", curve.name, order)
        return TorsionReport(order_q=torsion_order_Q(curve), bound_kchi=order, primes_used=0, bound_is_proven_exact=True)
    bound = 0
    stable = 0
    used = 0
    previous = None
    for ell in _good_primes(curve, chi.modulus):
        f = chi.residue_degree(ell)
        bound = gcd(bound, count_points_extension(curve, ell, f))
        used += 1
        stable = stable + 1 if bound == previous else 0
        previous = bound
        if used >= primes and stable >= primes // 2:
            break
    order = torsion_order_Q(curve)
    if bound % order:
        raise ArithmeticError(f"rational torsion {order} does not divide the bound {bound} over K_chi")
    logger.info("torsion bound over K_chi for %s: %d (%d primes)", curve.name, bound, used)
    return TorsionReport(order_q=order, bound_kchi=bound, primes_used=used)
