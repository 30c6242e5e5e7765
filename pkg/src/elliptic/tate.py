"""Tate's algorithm over Q_p and over totally ramified extensions of Q_p."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from src.errors import WildCase
from src.elliptic.local_field import Element, LocalField
from src.exact_math.cyclo import CycloNumber
from src.types import LocalData

logger = logging.getLogger(__name__)

AInvariants = List[Element]


@dataclass(frozen=True)
class TateResult:
    kodaira: str
    reduction: str
    valuation: int
    components: int
    minimal: Tuple[Element, ...]
    nonminimal_steps: int

    @property
    def conductor_exponent(self) -> int:
        return self.valuation - self.components + 1


def _invariants(K: LocalField, a: AInvariants) -> Tuple[Element, Element, Element, Element, Element]:
    a1, a2, a3, a4, a6 = a
    m = K.mul
    b2 = K.add(m(a1, a1), K.scale(a2, 4))
    b4 = K.add(K.scale(a4, 2), m(a1, a3))
    b6 = K.add(m(a3, a3), K.scale(a6, 4))
    b8 = K.sub(
        K.add(K.add(m(m(a1, a1), a6), K.scale(m(a2, a6), 4)), m(a2, m(a3, a3))),
        K.add(m(a1, m(a3, a4)), m(a4, a4)),
    )
    disc = K.add(
        K.sub(K.neg(m(m(b2, b2), b8)), K.scale(m(b4, m(b4, b4)), 8)),
        K.sub(K.scale(m(b2, m(b4, b6)), 9), K.scale(m(b6, b6), 27)),
    )
    return b2, b4, b6, b8, disc


def _rst(K: LocalField, a: AInvariants, r: Element, s: Element, t: Element) -> AInvariants:
    a1, a2, a3, a4, a6 = a
    m = K.mul
    n1 = K.add(a1, K.scale(s, 2))
    n2 = K.add(K.sub(K.sub(a2, m(s, a1)), m(s, s)), K.scale(r, 3))
    n3 = K.add(K.add(a3, m(r, a1)), K.scale(t, 2))
    n4 = K.sub(
        K.add(K.sub(a4, m(s, a3)), K.add(K.scale(m(r, a2), 2), K.scale(m(r, r), 3))),
        K.add(m(K.add(t, m(r, s)), a1), K.scale(m(s, t), 2)),
    )
    n6 = K.sub(
        K.add(K.add(a6, m(r, a4)), K.add(m(m(r, r), a2), m(r, m(r, r)))),
        K.add(K.add(m(t, a3), m(t, t)), m(r, m(t, a1))),
    )
    return [n1, n2, n3, n4, n6]


def _roots_mod_p(coeffs: Sequence[int], p: int) -> List[int]:
    """Roots in F_p of the polynomial with coefficients lowest degree first."""
    return [x for x in range(p) if sum(c * pow(x, i, p) for i, c in enumerate(coeffs)) % p == 0]


def _singular_point(residues: Sequence[int], p: int) -> Tuple[int, int]:
    A1, A2, A3, A4, A6 = residues
    xs = range(p)
    for x in xs:
        ys = range(p) if p == 2 else [(-(A1 * x + A3) * pow(2, -1, p)) % p]
        for y in ys:
            F = (y * y + A1 * x * y + A3 * y - x ** 3 - A2 * x * x - A4 * x - A6) % p
            Fx = (A1 * y - 3 * x * x - 2 * A2 * x - A4) % p
            Fy = (2 * y + A1 * x + A3) % p
            if F == 0 and Fx == 0 and Fy == 0:
                return x, y
    raise ArithmeticError("reduction is singular but no singular point was found")


def _half_root(b: int, c: int, p: int) -> int:
    """Double root of Y^2 + bY - c over F_p (discriminant zero)."""
    if p == 2:
        return c % 2
    return (-b * pow(2, -1, p)) % p


def tate(K: LocalField, ainvs: Sequence[Element]) -> TateResult:
    p = K.p
    a: AInvariants = list(ainvs)
    if any(K.valuation(x) < 0 for x in a):
        raise ValueError("Tate's algorithm needs an integral model")
    steps = 0
    v = K.valuation
    res = K.residue_shifted
    while True:
        b2, b4, b6, b8, disc = _invariants(K, a)
        vD = v(disc)
        if vD == 0:
            return TateResult("I0", "good", 0, 1, tuple(a), steps)

        residues = [K.residue(x) for x in a]
        x0, y0 = _singular_point(residues, p)
        a = _rst(K, a, K.lift(x0), K.element(0), K.lift(y0))
        b2, b4, b6, b8, disc = _invariants(K, a)

        if v(b2) == 0:
            A1, A2 = K.residue(a[0]), K.residue(a[1])
            split = bool(_roots_mod_p([-A2, A1, 1], p))
            return TateResult(f"I{vD}", "split" if split else "nonsplit", vD, vD, tuple(a), steps)
        if v(a[4]) < 2:
            return TateResult("II", "additive", vD, 1, tuple(a), steps)
        if v(b8) < 3:
            return TateResult("III", "additive", vD, 2, tuple(a), steps)
        if v(b6) < 3:
            return TateResult("IV", "additive", vD, 3, tuple(a), steps)

        if p == 2:
            s = K.lift(K.residue(a[1]))
            t = K.shift(K.lift(res(a[4], 2)), 1)
        else:
            s = K.scale(a[0], Fraction(-1, 2))
            t = K.scale(a[2], Fraction(-1, 2))
        a = _rst(K, a, K.element(0), s, t)

        A, B, C = res(a[1], 1), res(a[3], 2), res(a[4], 3)
        cubic_disc = (A * A * B * B - 4 * B ** 3 - 4 * A ** 3 * C - 27 * C * C + 18 * A * B * C) % p
        if cubic_disc:
            return TateResult("I0*", "additive", vD, 5, tuple(a), steps)

        if (3 * B - A * A) % p:
            double = [x for x in _roots_mod_p([C, B, A, 1], p) if (3 * x * x + 2 * A * x + B) % p == 0][0]
            a = _rst(K, a, K.shift(K.lift(double), 1), K.element(0), K.element(0))
            n = 1
            while True:
                if n % 2:
                    k = (n + 3) // 2
                    bq, cq = res(a[2], k), res(a[4], n + 3)
                    if (bq * bq + 4 * cq) % p:
                        break
                    y = _half_root(bq, cq, p)
                    a = _rst(K, a, K.element(0), K.element(0), K.shift(K.lift(y), k))
                else:
                    k = n // 2 + 2
                    lead, bq, cq = res(a[1], 1), res(a[3], k), res(a[4], n + 3)
                    if (bq * bq - 4 * lead * cq) % p:
                        break
                    if p == 2:
                        x = cq * pow(lead, -1, 2) % 2
                    else:
                        x = (-bq * pow(2 * lead, -1, p)) % p
                    a = _rst(K, a, K.shift(K.lift(x), k - 1), K.element(0), K.element(0))
                n += 1
            return TateResult(f"I{n}*", "additive", vD, 5 + n, tuple(a), steps)

        triple = _roots_mod_p([C, B, A, 1], p)[0]
        a = _rst(K, a, K.shift(K.lift(triple), 1), K.element(0), K.element(0))
        bq, cq = res(a[2], 2), res(a[4], 4)
        if (bq * bq + 4 * cq) % p:
            return TateResult("IV*", "additive", vD, 7, tuple(a), steps)
        y = _half_root(bq, cq, p)
        a = _rst(K, a, K.element(0), K.element(0), K.shift(K.lift(y), 2))
        if v(a[3]) < 4:
            return TateResult("III*", "additive", vD, 8, tuple(a), steps)
        if v(a[4]) < 6:
            return TateResult("II*", "additive", vD, 9, tuple(a), steps)

        logger.debug("model is not minimal at p=%d (e=%d); rescaling", p, K.e)
        a = [K.shift(x, -i) for x, i in zip(a, (1, 2, 3, 4, 6))]
        steps += 1


def local_data_from_result(result: TateResult, p: int, e: int) -> LocalData:
    return LocalData(
        p=p,
        ramification=e,
        valuation=result.valuation,
        kodaira=result.kodaira,
        reduction=result.reduction,
        conductor_exponent=result.conductor_exponent if e == 1 else None,
    )


def tate_rational_model(ainvs: Sequence[Fraction], p: int) -> TateResult:
    K = LocalField.unramified(p)
    return tate(K, [K.element(x) for x in ainvs])


def tate_local(curve, p: int) -> LocalData:
    return local_data_from_result(tate_rational_model(curve.ainvs, p), p, 1)


def tate_over_field(curve, K: LocalField) -> TateResult:
    return tate(K, [K.element(x) for x in curve.ainvs])


def tate_over_tame_extension(curve, p: int, e: int) -> LocalData:
    if e % p == 0:
        raise WildCase(f"ramification degree {e} is wild at p={p}")
    if e == 1:
        return tate_local(curve, p)
    result = tate_over_field(curve, LocalField.tame(p, e))
    data = local_data_from_result(result, p, e)
    if e == 2:
        twisted = twist_criterion(curve, p)
        if twisted is not None and _semistable(twisted.reduction) != _semistable(data.reduction):
            logger.warning(
                "quadratic twist criterion disagrees at p=%d: extension %s, twist %s",
                p, data.reduction, twisted.reduction,
            )
    return data


def _semistable(reduction: str) -> bool:
    return reduction != "additive"


def twist_criterion(curve, p: int) -> Optional[LocalData]:
    """Reduction of the twist by the ramified quadratic character of conductor p (odd p)."""
    if p == 2:
        return None
    from src.elliptic.curve import quadratic_twist

    d = p if p % 4 == 1 else -p
    return tate_local(quadratic_twist(curve, d), p)


# fields cut out by a character component of p-power conductor

@lru_cache(maxsize=None)
def character_field_polynomial(p: int, k: int, kernel: Tuple[int, ...]) -> Tuple[int, ...]:
    """Eisenstein polynomial of the norm of 1 - zeta_{p^k} to the fixed field of ``kernel``.

    ``kernel`` is the subgroup H of (Z/p^k)^x; the field is totally ramified
    at p of degree [G : H] and its local completion is the field cut out by
    any character with kernel H.
    """
    q = p ** k
    units = [u for u in range(1, q) if u % p]
    H = set(kernel)
    reps: List[int] = []
    seen = set()
    for u in units:
        if u in seen:
            continue
        reps.append(u)
        seen.update((u * h) % q for h in H)
    pi_L = CycloNumber.rational(1, q)
    for h in H:
        pi_L = pi_L * (CycloNumber.rational(1, q) - CycloNumber.zeta(q, h))
    # polynomial prod (X - sigma(pi_L)) with coefficients in Q(zeta_q)
    poly = [CycloNumber.rational(1, q)]
    for sigma in reps:
        root = pi_L.galois(sigma)
        shifted = [CycloNumber.rational(0, q)] + poly
        scaled = [c * root for c in poly] + [CycloNumber.rational(0, q)]
        poly = [x - y for x, y in zip(shifted, scaled)]
    coeffs = []
    for c in poly:
        value = c.to_rational()
        if value.denominator != 1:
            raise ArithmeticError("norm polynomial has non-integral coefficients")
        coeffs.append(int(value))
    return tuple(coeffs)


def character_local_field(p: int, k: int, kernel: Sequence[int]) -> LocalField:
    return LocalField(p, character_field_polynomial(p, k, tuple(sorted(kernel))))


def reduction_over_character_field(curve, p: int, k: int, kernel: Sequence[int]) -> TateResult:
    """Tate's algorithm over the totally ramified field cut out by a character of conductor p^k."""
    K = character_local_field(p, k, kernel)
    return tate_over_field(curve, K)
