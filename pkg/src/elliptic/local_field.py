"""Totally ramified extensions of Q_p presented as Q[x]/(E(x)) with E Eisenstein at p.

Elements are coefficient tuples on 1, pi, ..., pi^(e-1).  Because the terms
c_i pi^i have valuations e*v_p(c_i) + i that are pairwise distinct, the
valuation of a sum is the minimum over its terms and the residue of an
integral element is c_0 mod p.

Arithmetic is exact over Q, so there is no precision cap and no precision
error: every valuation comparison made by Tate's algorithm is decided.
"""
from fractions import Fraction
from typing import Sequence, Tuple

Element = Tuple[Fraction, ...]

INFINITE_VALUATION = 10 ** 9


def vp(x: Fraction, p: int) -> int:
    x = Fraction(x)
    if not x:
        return INFINITE_VALUATION
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


class LocalField:
    def __init__(self, p: int, eisenstein: Sequence[int]):
        """``eisenstein`` lists the monic polynomial's coefficients, lowest degree first."""
        self.p = p
        self.modulus: Tuple[Fraction, ...] = tuple(Fraction(c) for c in eisenstein)
        self.e = len(self.modulus) - 1
        if self.modulus[-1] != 1:
            raise ValueError("Eisenstein polynomial must be monic")
        if vp(self.modulus[0], p) != 1 or any(vp(c, p) < 1 for c in self.modulus[1:-1]):
            raise ValueError(f"{list(eisenstein)} is not Eisenstein at {p}")
        self.pi = self._make_pi()
        self.pi_inv = self._make_pi_inv()

    @classmethod
    def unramified(cls, p: int) -> "LocalField":
        return cls(p, (-p, 1))

    @classmethod
    def tame(cls, p: int, e: int) -> "LocalField":
        # the degree-e subfield of Q_p(zeta_p) is Q_p((-p)^(1/e))
        return cls(p, (p,) + (0,) * (e - 1) + (1,))

    def _make_pi(self) -> Element:
        if self.e == 1:
            return (-self.modulus[0],)
        return self.element_from_coeffs([0, 1])

    def _make_pi_inv(self) -> Element:
        c0 = self.modulus[0]
        if self.e == 1:
            return (1 / (-c0),)
        # pi * (pi^(e-1) + c_{e-1} pi^(e-2) + ... + c_1) = -c0
        return tuple(-c / c0 for c in self.modulus[1:])

    def element(self, q) -> Element:
        return (Fraction(q),) + (Fraction(0),) * (self.e - 1)

    def element_from_coeffs(self, coeffs: Sequence) -> Element:
        raw = [Fraction(c) for c in coeffs]
        return self._reduce(raw)

    def _reduce(self, raw) -> Element:
        e = self.e
        raw = list(raw) + [Fraction(0)] * max(0, e - len(raw))
        if e == 1:
            root = -self.modulus[0]
            total = Fraction(0)
            power = Fraction(1)
            for c in raw:
                total += c * power
                power *= root
            return (total,)
        for k in range(len(raw) - 1, e - 1, -1):
            c = raw[k]
            if c:
                for i, m in enumerate(self.modulus):
                    raw[k - e + i] -= c * m
        return tuple(raw[:e])

    def add(self, x: Element, y: Element) -> Element:
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x: Element, y: Element) -> Element:
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x: Element) -> Element:
        return tuple(-a for a in x)

    def scale(self, x: Element, q) -> Element:
        q = Fraction(q)
        return tuple(a * q for a in x)

    def mul(self, x: Element, y: Element) -> Element:
        raw = [Fraction(0)] * (2 * self.e - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        raw[i + j] += a * b
        return self._reduce(raw)

    def power(self, x: Element, k: int) -> Element:
        result = self.element(1)
        for _ in range(k):
            result = self.mul(result, x)
        return result

    def pi_power(self, k: int) -> Element:
        base = self.pi if k >= 0 else self.pi_inv
        return self.power(base, abs(k))

    def shift(self, x: Element, k: int) -> Element:
        """x * pi^k."""
        return self.mul(x, self.pi_power(k))

    def valuation(self, x: Element) -> int:
        return min((self.e * vp(c, self.p) + i for i, c in enumerate(x) if c), default=INFINITE_VALUATION)

    def is_zero(self, x: Element) -> bool:
        return not any(x)

    def residue(self, x: Element) -> int:
        if self.valuation(x) < 0:
            raise ValueError("residue of a non-integral element")
        return element_residue(x, self.p)

    def residue_shifted(self, x: Element, k: int) -> int:
        """Residue of x / pi^k."""
        return self.residue(self.shift(x, -k))

    def lift(self, r: int) -> Element:
        return self.element(r % self.p)


def element_residue(x: Element, p: int) -> int:
    """Residue in F_p of an integral element (the constant coefficient mod p)."""
    c = Fraction(x[0])
    if not c or vp(c, p) > 0:
        return 0
    return c.numerator * pow(c.denominator, -1, p) % p
