"""Dirichlet characters as angles on canonical generators of (Z/m)^x.

The unit group is split by CRT into prime-power factors.  An odd prime power
contributes its smallest primitive root, 4 contributes -1, and 2^k with k >= 3
contributes -1 and 5.  A character is the vector of exponents k_i with
chi(g_i) = exp(2 pi i k_i / o_i), o_i the order of g_i.
"""
import itertools
import logging
import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.ntheory.modular import crt

from src.errors import CharacterUnderdetermined, NotAHomomorphism, TrivialCharacter, UsageError
from src.exact_math.cyclo import CycloNumber, format_cyclo, lcm, parse_cyclo, root_of_unity_angle
from src.types import ChiLocalData

logger = logging.getLogger(__name__)


def _smallest_primitive_root(q: int) -> int:
    phi = int(sympy.totient(q))
    for g in range(2, q):
        if gcd(g, q) == 1 and sympy.n_order(g, q) == phi:
            return g
    raise ArithmeticError(f"(Z/{q})^x is not cyclic")


@lru_cache(maxsize=None)
def local_generators(p: int, k: int) -> Tuple[Tuple[int, int], ...]:
    """(generator mod p^k, order) pairs for the p-part of the unit group."""
    q = p ** k
    if p == 2:
        if k == 1:
            return ()
        if k == 2:
            return ((3, 2),)
        return ((q - 1, 2), (5, 2 ** (k - 2)))
    return ((_smallest_primitive_root(q), int(sympy.totient(q))),)


class UnitGroup:
    """(Z/m)^x with canonical generators lifted by CRT."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError(f"modulus must be positive, got {m}")
        self.m = m
        self.factors: List[Tuple[int, int]] = sorted(sympy.factorint(m).items())
        self.generators: List[int] = []
        self.orders: List[int] = []
        self.owner: List[int] = []  # prime each generator belongs to
        for p, k in self.factors:
            q = p ** k
            for g, o in local_generators(p, k):
                self.generators.append(self._lift(g, q))
                self.orders.append(o)
                self.owner.append(p)
        self._dlog: Dict[int, Tuple[int, ...]] = {}
        for exps in itertools.product(*[range(o) for o in self.orders]):
            a = 1
            for g, e in zip(self.generators, exps):
                a = a * pow(g, e, m) % m
            self._dlog[a % m] = exps

    def _lift(self, g: int, q: int) -> int:
        if q == self.m:
            return g % self.m
        value, _ = crt([q, self.m // q], [g, 1])
        return int(value)

    def dlog(self, a: int) -> Optional[Tuple[int, ...]]:
        return self._dlog.get(a % self.m)

    def lift_coprime_to(self, p: int) -> int:
        """n = p mod m/p^k and n = 1 mod p^k (p | m); n = p otherwise."""
        if self.m % p:
            return p % self.m
        q = p ** dict(self.factors)[p]
        if q == self.m:
            return 1
        value, _ = crt([q, self.m // q], [1, p])
        return int(value)

    def __len__(self):
        return len(self._dlog)


@lru_cache(maxsize=None)
def unit_group(m: int) -> UnitGroup:
    return UnitGroup(m)


class DirichletCharacter:
    __slots__ = ("modulus", "exponents", "declared_modulus", "_group")

    def __init__(self, modulus: int, exponents: Sequence[int], declared_modulus: Optional[int] = None):
        group = unit_group(modulus)
        if len(exponents) != len(group.orders):
            raise ValueError(f"modulus {modulus} has {len(group.orders)} generators, got {len(exponents)} exponents")
        self.modulus = modulus
        self.exponents: Tuple[int, ...] = tuple(e % o for e, o in zip(exponents, group.orders))
        self.declared_modulus = declared_modulus or modulus
        self._group = group

    # structure

    @property
    def generators(self) -> List[int]:
        return self._group.generators

    @property
    def angles(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(e, o) for e, o in zip(self.exponents, self._group.orders))

    @property
    def order(self) -> int:
        d = 1
        for angle in self.angles:
            d = lcm(d, angle.denominator)
        return d

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def angle(self, a: int) -> Optional[Fraction]:
        exps = self._group.dlog(a)
        if exps is None:
            return None
        total = sum((Fraction(k * e, o) for k, e, o in zip(exps, self.exponents, self._group.orders)), Fraction(0))
        return total % 1

    def __call__(self, a: int) -> CycloNumber:
        return self.evaluate(a)

    def evaluate(self, a: int) -> CycloNumber:
        angle = self.angle(a)
        d = self.order
        if angle is None:
            return CycloNumber.rational(0, d)
        return CycloNumber.root_of_unity(angle).lift(d)

    @property
    def parity(self) -> int:
        return 1 if self.angle(-1) == 0 else -1

    def is_even(self) -> bool:
        return self.parity == 1

    @property
    def conductor(self) -> int:
        cond = 1
        idx = 0
        for p, k in self._group.factors:
            n = len(local_generators(p, k))
            exps = self.exponents[idx: idx + n]
            orders = self._group.orders[idx: idx + n]
            idx += n
            if p == 2:
                if k >= 3:
                    o5 = orders[1] // gcd(exps[1], orders[1])
                    if o5 > 1:
                        cond *= 2 ** (sympy.multiplicity(2, o5) + 2)
                        continue
                if exps and exps[0]:
                    cond *= 4
                continue
            o = orders[0] // gcd(exps[0], orders[0])
            if o > 1:
                cond *= p ** (sympy.multiplicity(p, o) + 1)
        return cond

    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def primitive(self) -> "DirichletCharacter":
        c = self.conductor
        if c == self.modulus:
            return self
        target = unit_group(c)
        exps = []
        for h, o in zip(target.generators, target.orders):
            lift = h
            while gcd(lift, self.modulus) != 1:
                lift += c
            angle = self.angle(lift)
            k = angle * o
            if k.denominator != 1:
                raise ArithmeticError(f"character mod {self.modulus} does not factor through {c}")
            exps.append(int(k))
        return DirichletCharacter(c, exps, declared_modulus=self.modulus)

    # Galois action and local pieces

    def galois_conjugate(self, sigma: int) -> "DirichletCharacter":
        if gcd(sigma, self.order) != 1:
            raise ValueError(f"sigma={sigma} is not a unit modulo the order {self.order}")
        return DirichletCharacter(self.modulus, [e * sigma for e in self.exponents], self.declared_modulus)

    def conjugate(self) -> "DirichletCharacter":
        return self.galois_conjugate(-1)

    def galois_orbit(self) -> List["DirichletCharacter"]:
        d = self.order
        seen = {}
        for s in range(1, max(d, 2)):
            if gcd(s, d) == 1:
                chi = self.galois_conjugate(s)
                seen.setdefault(chi.exponents, chi)
        return [seen[k] for k in sorted(seen)]

    def component(self, p: int) -> "DirichletCharacter":
        """The p-part chi_p as a character modulo p^k."""
        k = dict(self._group.factors).get(p, 0)
        if k == 0:
            return DirichletCharacter(1, [])
        exps = [e for e, owner in zip(self.exponents, self._group.owner) if owner == p]
        return DirichletCharacter(p ** k, exps)

    def prime_to_part_at(self, p: int) -> CycloNumber:
        """chi'(p): the prime-to-p part evaluated at p."""
        return self.evaluate(self._group.lift_coprime_to(p))

    def residue_degree(self, ell: int) -> int:
        """Order of chi(ell) for a prime ell not dividing the modulus."""
        angle = self.angle(ell)
        if angle is None:
            raise ValueError(f"{ell} divides the modulus {self.modulus}")
        return angle.denominator

    def local_data(self, p: int) -> ChiLocalData:
        e = self.component(p).order
        u = self.prime_to_part_at(p)
        angle = root_of_unity_angle(u)
        f = 1
        while (f * angle * e).denominator != 1:
            f += 1
        return ChiLocalData(p=p, e=e, f=f, frobenius_value=u)

    def kernel_mod(self) -> List[int]:
        return sorted(a for a in range(1, self.modulus + 1) if self.angle(a) == 0 and gcd(a, self.modulus) == 1)

    # labels

    def is_quadratic(self) -> bool:
        return self.order == 2

    def label(self) -> str:
        if self.is_quadratic() and self.is_primitive():
            return f"kronecker:{kronecker_discriminant(self)}"
        parts = []
        for g, angle in zip(self.generators, self.angles):
            parts.append(f"{g}={_angle_text(angle)}")
        return f"mod:{self.modulus},map:" + ";".join(parts)

    def printed(self) -> str:
        """Table form: (D/·) for quadratic characters, otherwise the generators with nontrivial image."""
        if self.is_quadratic() and self.is_primitive():
            D = kronecker_discriminant(self)
            return f"({D if D % 4 else D // 4}/·)"
        parts = []
        for g, angle in zip(self.generators, self.angles):
            if angle:
                value = format_cyclo(CycloNumber.root_of_unity(angle)).replace("z", "ζ")
                parts.append(f"{g} ↦ {value}")
        return ", ".join(parts)

    def to_json(self) -> Dict[str, object]:
        return {
            "modulus": self.modulus,
            "conductor": self.conductor,
            "order": self.order,
            "parity": self.parity,
            "generators": {str(g): _angle_text(a) for g, a in zip(self.generators, self.angles)},
            "label": self.label(),
        }

    def __eq__(self, other):
        return isinstance(other, DirichletCharacter) and self.modulus == other.modulus and self.exponents == other.exponents

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def __repr__(self):
        return f"DirichletCharacter({self.label()})"


def _angle_text(angle: Fraction) -> str:
    if angle == 0:
        return "1"
    if angle == Fraction(1, 2):
        return "-1"
    n, d = angle.numerator, angle.denominator
    return f"z{d}" if n == 1 else f"z{d}^{n}"


def all_characters(m: int) -> List[DirichletCharacter]:
    group = unit_group(m)
    return [DirichletCharacter(m, exps) for exps in itertools.product(*[range(o) for o in group.orders])]


def enumerate_primitive(m: int) -> List[DirichletCharacter]:
    """All non-trivial primitive characters mod m, ordered by exponent vector."""
    if m < 3:
        return []
    return [chi for chi in all_characters(m) if not chi.is_trivial() and chi.is_primitive()]


def conjugacy_classes(m: int) -> List[List[DirichletCharacter]]:
    """Galois classes of primitive characters mod m; each class starts with its canonical representative."""
    classes: List[List[DirichletCharacter]] = []
    seen = set()
    for chi in enumerate_primitive(m):
        if chi.exponents in seen:
            continue
        orbit = chi.galois_orbit()
        seen.update(c.exponents for c in orbit)
        classes.append(orbit)
    return classes


def canonical_representative(chi: DirichletCharacter) -> DirichletCharacter:
    return chi.galois_orbit()[0]


# Kronecker characters

def field_discriminant(D: int) -> int:
    """Discriminant of Q(sqrt(D))."""
    if D == 0:
        raise UsageError("Q(sqrt(0)) is not a field")
    sign = -1 if D < 0 else 1
    squarefree = sign
    for p, k in sympy.factorint(abs(D)).items():
        if k % 2:
            squarefree *= p
    if squarefree == 1:
        raise TrivialCharacter(f"Q(sqrt({D})) = Q has trivial character")
    return squarefree if squarefree % 4 == 1 else 4 * squarefree


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for any integer n."""
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * int(sympy.jacobi_symbol(D % n, n))


def quadratic_character_of_field(D: int) -> DirichletCharacter:
    disc = field_discriminant(D)
    m = abs(disc)
    group = unit_group(m)
    exps = []
    for g, o in zip(group.generators, group.orders):
        lift = g if g % 2 else g + m
        exps.append(0 if kronecker(disc, lift) == 1 else o // 2)
    chi = DirichletCharacter(m, exps)
    if not chi.is_primitive():
        raise ArithmeticError(f"Kronecker character of {disc} is not primitive")
    return chi


def kronecker_discriminant(chi: DirichletCharacter) -> int:
    if not chi.is_quadratic():
        raise ValueError(f"{chi} is not quadratic")
    prim = chi.primitive()
    return prim.parity * prim.modulus


# parsing

_MAP_ITEM = re.compile(r"^\s*(-?\d+)\s*(?:=|->|↦)\s*(.+?)\s*$")


def _parse_assignments(text: str, order: Optional[int]) -> List[Tuple[int, Fraction]]:
    out = []
    for item in text.split(";"):
        if not item.strip():
            continue
        match = _MAP_ITEM.match(item)
        if not match:
            raise UsageError(f"cannot parse generator assignment {item!r}")
        g, target = int(match.group(1)), match.group(2)
        if re.search(r"z(?!\d)", target):
            if order is None:
                raise UsageError(f"bare z in {target!r} needs an order:d field")
            target = re.sub(r"z(?!\d)", f"z{order}", target)
        try:
            value = parse_cyclo(target)
        except ValueError as e:
            raise UsageError(str(e))
        angle = root_of_unity_angle(value)
        if angle is None:
            raise NotAHomomorphism(f"{target!r} is not a root of unity")
        out.append((g, angle))
    return out


def character_from_map(m: int, assignments: Sequence[Tuple[int, Fraction]]) -> DirichletCharacter:
    matches = []
    for chi in all_characters(m):
        if all(chi.angle(g) is not None and chi.angle(g) == angle for g, angle in assignments):
            matches.append(chi)
    if any(gcd(g, m) != 1 for g, _ in assignments) or not matches:
        raise NotAHomomorphism(f"assignments {[(g, str(a)) for g, a in assignments]} do not define a character mod {m}")
    if len(matches) > 1:
        raise CharacterUnderdetermined(f"{len(matches)} characters mod {m} satisfy the assignments")
    chi = matches[0]
    if chi.is_trivial():
        raise TrivialCharacter("the trivial character is not supported")
    prim = chi.primitive()
    if prim.modulus != m:
        logger.info("character declared mod %d is induced from conductor %d", m, prim.modulus)
    return prim


def character_from_spec(spec: str) -> DirichletCharacter:
    """``kronecker:D`` or ``mod:m[,order:d],map:g1=<root>;g2=<root>``."""
    spec = spec.strip()
    if spec.startswith("kronecker:"):
        try:
            D = int(spec.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad discriminant in {spec!r}")
        return quadratic_character_of_field(D)
    if not spec.startswith("mod:"):
        raise UsageError(f"character spec must start with kronecker: or mod:, got {spec!r}")
    fields: Dict[str, str] = {}
    head, _, mapping = spec.partition(",map:")
    for part in head.split(","):
        key, _, value = part.partition(":")
        fields[key.strip()] = value.strip()
    try:
        m = int(fields["mod"])
        order = int(fields["order"]) if "order" in fields else None
    except (KeyError, ValueError):
        raise UsageError(f"bad modulus in {spec!r}")
    if m < 2:
        raise UsageError(f"modulus must be at least 2, got {m}")
    return character_from_map(m, _parse_assignments(mapping, order))
