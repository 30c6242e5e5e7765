"""Exact linear algebra over Q.

Dense work goes through fraction-free (Bareiss) elimination on integer rows,
sparse relation systems through a dictionary-row reduced echelon form.
"""
import logging
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

Vector = List[Fraction]
SparseRow = Dict[int, Fraction]


class RationalMatrix:
    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: Optional[int] = None):
        self.rows: Tuple[Tuple[Fraction, ...], ...] = tuple(tuple(Fraction(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    def __getitem__(self, ij: Tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([list(col) for col in zip(*self.rows)], self.nrows) if self.nrows else \
            RationalMatrix.zero(self.ncols, 0)

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
            cols = other.transpose().rows
            return RationalMatrix(
                [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols] for r in self.rows],
                other.ncols,
            )
        if isinstance(other, (int, Fraction)):
            return RationalMatrix([[x * other for x in r] for r in self.rows], self.ncols)
        return NotImplemented

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return RationalMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return [sum((a * b for a, b in zip(r, v) if a and b), Fraction(0)) for r in self.rows]

    def left_apply(self, w: Sequence[Fraction]) -> Vector:
        """Row vector times matrix."""
        out = [Fraction(0)] * self.ncols
        for coeff, row in zip(w, self.rows):
            if coeff:
                for j, x in enumerate(row):
                    if x:
                        out[j] += coeff * x
        return out

    def __repr__(self):
        return f"RationalMatrix({self.nrows}x{self.ncols})"


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    out = []
    for r in rows:
        den = 1
        for x in r:
            den = den // gcd(den, x.denominator) * x.denominator
        out.append([int(x * den) for x in r])
    return out


def bareiss_echelon(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[List[List[int]], List[int]]:
    """Fraction-free row echelon form with column skipping.

    Returns the integer echelon rows (nonzero rows only) and the pivot columns.
    """
    A = _integer_rows(rows)
    n = len(A)
    prev = 1
    r = 0
    pivots: List[int] = []
    for c in range(ncols):
        if r == n:
            break
        pivot_row = next((i for i in range(r, n) if A[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            A[r], A[pivot_row] = A[pivot_row], A[r]
        for i in range(r + 1, n):
            for j in range(c + 1, ncols):
                A[i][j] = (A[r][c] * A[i][j] - A[i][c] * A[r][j]) // prev
            A[i][c] = 0
        prev = A[r][c]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rref(M: RationalMatrix) -> Tuple[List[Vector], List[int]]:
    echelon, pivots = bareiss_echelon(M.rows, M.ncols)
    R = [[Fraction(x) for x in row] for row in echelon]
    for i in range(len(R) - 1, -1, -1):
        c = pivots[i]
        lead = R[i][c]
        R[i] = [x / lead for x in R[i]]
        for k in range(i):
            f = R[k][c]
            if f:
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]
    return R, pivots


def rank(M: RationalMatrix) -> int:
    return len(bareiss_echelon(M.rows, M.ncols)[1])


def rational_kernel(M: RationalMatrix) -> List[Vector]:
    """Basis of {v : M v = 0}, one vector per free column in increasing order."""
    R, pivots = rref(M)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * M.ncols
        v[free] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][free]
        basis.append(v)
    return basis


def left_kernel(M: RationalMatrix) -> List[Vector]:
    """Basis of {w : w M = 0}."""
    return rational_kernel(M.transpose())


def solve(M: RationalMatrix, b: Sequence[Fraction]) -> Optional[Vector]:
    """One solution x of M x = b, or None when the system is inconsistent."""
    augmented = RationalMatrix([list(r) + [Fraction(bi)] for r, bi in zip(M.rows, b)], M.ncols + 1)
    R, pivots = rref(augmented)
    if pivots and pivots[-1] == M.ncols:
        return None
    x = [Fraction(0)] * M.ncols
    for i, c in enumerate(pivots):
        x[c] = R[i][M.ncols]
    return x


def matrix_from_columns(columns: Sequence[Sequence[Fraction]], nrows: int) -> RationalMatrix:
    return RationalMatrix([[col[i] for col in columns] for i in range(nrows)], len(columns))


# sparse elimination for relation systems with hundreds of columns

def _axpy(target: SparseRow, coeff: Fraction, row: SparseRow) -> None:
    for j, x in row.items():
        value = target.get(j, Fraction(0)) - coeff * x
        if value:
            target[j] = value
        else:
            target.pop(j, None)


def sparse_rref(rows: Iterable[SparseRow]) -> Dict[int, SparseRow]:
    """Fully reduced echelon form of sparse rows, keyed by pivot column.

    Each returned row has coefficient 1 at its pivot and no entries in other
    pivot columns.
    """
    pivots: Dict[int, SparseRow] = {}
    for raw in rows:
        row = {j: Fraction(x) for j, x in raw.items() if x}
        for c in [c for c in row if c in pivots]:
            coeff = row.get(c)
            if coeff:
                _axpy(row, coeff, pivots[c])
        if not row:
            continue
        c = min(row)
        lead = row[c]
        row = {j: x / lead for j, x in row.items()}
        for other in pivots.values():
            coeff = other.get(c)
            if coeff:
                _axpy(other, coeff, row)
        pivots[c] = row
    return pivots


# rational lattices of rank at most two

def gcd_rationals(values: Iterable[Fraction]) -> Fraction:
    """Generator of the Z-module spanned by the given rationals (0 if all vanish)."""
    num = 0
    den = 1
    for v in values:
        v = Fraction(v)
        if not v:
            continue
        # gcd(a/b, c/d) = gcd(a d, c b) / (b d) reduced
        new_den = den // gcd(den, v.denominator) * v.denominator
        num = gcd(num * (new_den // den), v.numerator * (new_den // v.denominator))
        den = new_den
    return Fraction(num, den)


def lattice_basis_2d(vectors: Iterable[Tuple[Fraction, Fraction]]) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
    """Hermite basis ((a, b), (0, c)) of the rational lattice spanned by 2-vectors."""
    vecs = [(Fraction(x), Fraction(y)) for x, y in vectors]
    den = 1
    for x, y in vecs:
        for v in (x, y):
            den = den // gcd(den, v.denominator) * v.denominator
    ints = [(int(x * den), int(y * den)) for x, y in vecs]
    a, b, c = 0, 0, 0
    for x, y in ints:
        # merge (x, y) into basis rows (a, b), (0, c)
        if x:
            if a == 0:
                a, b = x, y
            else:
                g, s, t = _ext_gcd(a, x)
                new_b = s * b + t * y
                # the combination killing the first coordinate
                kill = (x // g) * b - (a // g) * y
                a, b = g, new_b
                c = gcd(c, kill)
        else:
            c = gcd(c, y)
        if c:
            b %= c
    if a < 0:
        a, b = -a, -b
    return (Fraction(a, den), Fraction(b, den)), (Fraction(0), Fraction(c, den))


# integer lattices

def integer_echelon(vectors: Iterable[Sequence[int]]) -> List[List[int]]:
    """Echelon Z-basis of the lattice spanned by integer vectors.

    Each basis vector has a positive pivot and is zero before it; pivots are
    strictly increasing, so the vectors with pivot at or after k span the
    sublattice of vectors vanishing on the first k coordinates.
    """
    rest = [list(v) for v in vectors if any(v)]
    if not rest:
        return []
    width = len(rest[0])
    basis: List[List[int]] = []
    for p in range(width):
        active = [v for v in rest if v[p]]
        rest = [v for v in rest if not v[p]]
        while len(active) > 1:
            active.sort(key=lambda v: abs(v[p]))
            head = active[0]
            reduced = [head]
            for v in active[1:]:
                q = v[p] // head[p]
                w = [x - q * y for x, y in zip(v, head)]
                if w[p]:
                    reduced.append(w)
                elif any(w):
                    rest.append(w)
            active = reduced
        if active:
            head = active[0]
            basis.append(head if head[p] > 0 else [-x for x in head])
    return basis



def _ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t
