"""Manin-symbol presentation of modular symbols for Gamma_0(N).

A Manin symbol (c:d) in P^1(Z/N) stands for g{0, oo} with g = [[a, b], [c, d]]
in SL_2(Z).  The space is the quotient of Q^{P^1} by

    x + x S = 0              (c:d) S = (d:-c)
    x + x T + x T^2 = 0      (c:d) T = (d:-c-d)

and is stored as a list of free symbols plus, for every symbol, its sparse
coordinate vector on them.
"""
import json
import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from src.exact_math.linalg import RationalMatrix, SparseRow, _ext_gcd, rational_kernel, solve, sparse_rref

logger = logging.getLogger(__name__)

Cusp = Tuple[int, int]  # (numerator, denominator) in lowest terms, oo = (1, 0)
INFINITY: Cusp = (1, 0)


# P^1(Z/N)

class P1List:
    def __init__(self, N: int):
        if N < 1:
            raise ValueError(f"level must be positive, got {N}")
        self.N = N
        self._units = [t for t in range(1, N + 1) if gcd(t, N) == 1] if N > 1 else [1]
        self.symbols: List[Tuple[int, int]] = []
        for g in sympy.divisors(N):
            seen = set()
            for d in range(N):
                if gcd(gcd(g, d), N) != 1 or d in seen:
                    continue
                orbit = {(t * d) % N for t in self._stabiliser(g)}
                seen.update(orbit)
                self.symbols.append((g % N, min(orbit)))
        self.index: Dict[Tuple[int, int], int] = {s: i for i, s in enumerate(self.symbols)}

    @lru_cache(maxsize=None)
    def _stabiliser(self, g: int) -> Tuple[int, ...]:
        """Units t with t*g = g mod N."""
        step = self.N // g
        return tuple(t for t in self._units if (t - 1) % step == 0)

    @lru_cache(maxsize=None)
    def normalize(self, c: int, d: int) -> Tuple[int, int]:
        N = self.N
        c, d = c % N, d % N
        if N == 1:
            return (0, 0)
        g = gcd(c, N)
        step = N // g
        s = pow((c // g) % step, -1, step) if step > 1 else 0
        while gcd(s, N) != 1:
            s += step
        d = s * d % N
        return (g % N, min((t * d) % N for t in self._stabiliser(g)))

    def index_of(self, c: int, d: int) -> int:
        return self.index[self.normalize(c, d)]

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)


def p1_size(N: int) -> int:
    size = N
    for p in sympy.primefactors(N):
        size = size // p * (p + 1)
    return size


# lifting and cusps

def lift_to_sl2(c: int, d: int, N: int) -> Tuple[int, int, int, int]:
    """(a, b, c', d') in SL_2(Z) with c' = c, d' = d mod N."""
    c, d = c % N, d % N
    if c == 0:
        c = N
    k = 0
    while gcd(c, d + k * N) != 1:
        k += 1
    d = d + k * N
    g, x, y = _ext_gcd(d, c)
    # x d + y c = 1  ->  a = x, b = -y
    return x, -y, c, d


def make_cusp(num: int, den: int) -> Cusp:
    if den == 0:
        return INFINITY
    if den < 0:
        num, den = -num, -den
    g = gcd(num, den)
    return num // g, den // g


def cusps_equivalent(u: Cusp, v: Cusp, N: int) -> bool:
    """Gamma_0(N)-equivalence: s1 c2 = s2 c1 mod gcd(c1 c2, N) with s_j a_j = 1 mod c_j."""
    (a1, c1), (a2, c2) = u, v

    def s_of(a, c):
        if c in (0, 1):
            return 1 if c == 0 else 0
        return pow(a % c, -1, c)

    s1, s2 = s_of(a1, c1), s_of(a2, c2)
    modulus = gcd(c1 * c2, N)
    return (s1 * c2 - s2 * c1) % modulus == 0


def cusp_count(N: int) -> int:
    return sum(int(sympy.totient(gcd(d, N // d))) for d in sympy.divisors(N))


def _kronecker_at_prime(D: int, p: int) -> int:
    if D % p == 0:
        return 0
    if p == 2:
        return 1 if D % 8 in (1, 7) else -1
    return int(sympy.legendre_symbol(D % p, p))


def _elliptic_points(N: int, D: int, square: int) -> int:
    if N % square == 0:
        return 0
    out = 1
    for p in sympy.primefactors(N):
        out *= 1 + _kronecker_at_prime(D, p)
    return out


def genus_x0(N: int) -> int:
    nu2 = _elliptic_points(N, -4, 4)
    nu3 = _elliptic_points(N, -3, 9)
    g = Fraction(1) + Fraction(p1_size(N), 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(cusp_count(N), 2)
    if g.denominator != 1:
        raise ArithmeticError(f"genus formula gave {g} at N={N}")
    return int(g)


# the space

class ManinSpace:
    """Modular symbols of weight 2 for Gamma_0(N) with the cuspidal subspace."""

    def __init__(self, N: int):
        self.N = N
        self.p1 = P1List(N)
        self.free: List[int] = []
        self.coordinates: List[SparseRow] = []
        self._present()
        self.cusps: List[Cusp] = []
        self.boundary = self._boundary_matrix()
        self.cuspidal_basis = rational_kernel(self.boundary)
        self._cuspidal_matrix: Optional[RationalMatrix] = None
        logger.info(
            "level %d: %d Manin symbols, dimension %d, %d cusps, cuspidal dimension %d",
            N, len(self.p1), self.dimension, len(self.cusps), self.cuspidal_dimension,
        )

    # presentation

    def _relations(self) -> List[SparseRow]:
        rows: List[SparseRow] = []
        p1 = self.p1
        for c, d in p1:
            i = p1.index_of(c, d)
            j = p1.index_of(d, -c)
            row: SparseRow = {}
            row[i] = row.get(i, Fraction(0)) + 1
            row[j] = row.get(j, Fraction(0)) + 1
            rows.append(row)
        for c, d in p1:
            row = {}
            for cc, dd in ((c, d), (d, -c - d), (-c - d, c)):
                k = p1.index_of(cc, dd)
                row[k] = row.get(k, Fraction(0)) + 1
            rows.append(row)
        return rows

    def _present(self) -> None:
        pivots = sparse_rref(self._relations())
        n = len(self.p1)
        self.free = [j for j in range(n) if j not in pivots]
        position = {j: k for k, j in enumerate(self.free)}
        for j in range(n):
            if j in position:
                self.coordinates.append({position[j]: Fraction(1)})
            else:
                row = pivots[j]
                self.coordinates.append({position[k]: -x for k, x in row.items() if k != j})

    @property
    def dimension(self) -> int:
        return len(self.free)

    def symbol_vector(self, c: int, d: int) -> SparseRow:
        return self.coordinates[self.p1.index_of(c, d)]

    # boundary and cuspidal part

    def cusp_class(self, cusp: Cusp) -> int:
        for k, rep in enumerate(self.cusps):
            if cusps_equivalent(rep, cusp, self.N):
                return k
        self.cusps.append(cusp)
        return len(self.cusps) - 1

    def symbol_boundary(self, c: int, d: int) -> Dict[int, int]:
        a, b, c, d = lift_to_sl2(c, d, self.N)
        out: Dict[int, int] = {}
        end, start = self.cusp_class(make_cusp(a, c)), self.cusp_class(make_cusp(b, d))
        out[end] = out.get(end, 0) + 1
        out[start] = out.get(start, 0) - 1
        return out

    def _boundary_matrix(self) -> RationalMatrix:
        columns = [self.symbol_boundary(*self.p1.symbols[j]) for j in self.free]
        rows = [[col.get(k, 0) for col in columns] for k in range(len(self.cusps))]
        return RationalMatrix(rows, len(columns))

    @property
    def cuspidal_dimension(self) -> int:
        return len(self.cuspidal_basis)

    def check_genus(self) -> None:
        expected = genus_x0(self.N)
        if self.cuspidal_dimension != 2 * expected:
            raise ArithmeticError(
                f"cuspidal dimension {self.cuspidal_dimension} at N={self.N} but genus is {expected}"
            )
        if len(self.cusps) != cusp_count(self.N):
            raise ArithmeticError(f"found {len(self.cusps)} cusp classes at N={self.N}, expected {cusp_count(self.N)}")

    def cuspidal_coordinates(self, v: Sequence[Fraction]) -> List[Fraction]:
        """Coordinates of a cuspidal vector on cuspidal_basis."""
        if self._cuspidal_matrix is None:
            self._cuspidal_matrix = RationalMatrix(
                [list(col) for col in zip(*self.cuspidal_basis)], self.cuspidal_dimension
            )
        x = solve(self._cuspidal_matrix, v)
        if x is None:
            raise ValueError("vector is not in the cuspidal subspace")
        return x

    def restrict_to_cuspidal(self, operator: RationalMatrix) -> RationalMatrix:
        """Matrix of an operator preserving the cuspidal subspace, on cuspidal_basis (column convention)."""
        columns = [self.cuspidal_coordinates(operator.apply(b)) for b in self.cuspidal_basis]
        k = self.cuspidal_dimension
        return RationalMatrix([[columns[j][i] for j in range(k)] for i in range(k)], k)

    # involution

    def star_matrix(self) -> RationalMatrix:
        """(c:d) -> (-c:d), corresponding to r -> -r."""
        columns = [self.symbol_vector(-c, d) for c, d in (self.p1.symbols[j] for j in self.free)]
        return _from_sparse_columns(columns, self.dimension)

    # paths

    def path_vector(self, r: Fraction) -> List[Fraction]:
        """Coordinates of the modular symbol {oo, r}."""
        out = [Fraction(0)] * self.dimension
        for c, d in path_symbols(Fraction(r)):
            for k, x in self.symbol_vector(c, d).items():
                out[k] += x
        return out

    def to_json(self) -> Dict[str, object]:
        return {
            "level": self.N,
            "symbols": [list(s) for s in self.p1.symbols],
            "free": self.free,
            "cusps": [f"{a}/{c}" if c else "oo" for a, c in self.cusps],
            "cuspidal_dimension": self.cuspidal_dimension,
            "cuspidal_basis": [[str(x) for x in v] for v in self.cuspidal_basis],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _from_sparse_columns(columns: Sequence[SparseRow], nrows: int) -> RationalMatrix:
    rows = [[Fraction(0)] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, x in col.items():
            rows[i][j] += x
    return RationalMatrix(rows, len(columns))


def path_symbols(r: Fraction) -> List[Tuple[int, int]]:
    """Manin symbols summing to {oo, r}, from the continued-fraction convergents of r."""
    a, b = r.numerator, r.denominator
    quotients = []
    while b:
        quotients.append(a // b)
        a, b = b, a - (a // b) * b
    out = []
    p2, q2 = 0, 1
    p1, q1 = 1, 0
    for k, t in enumerate(quotients):
        p, q = t * p1 + p2, t * q1 + q2
        out.append((-q if k % 2 == 0 else q, q1))
        p2, q2, p1, q1 = p1, q1, p, q
    return out


@lru_cache(maxsize=32)
def build_space(N: int) -> ManinSpace:
    space = ManinSpace(N)
    space.check_genus()
    return space
