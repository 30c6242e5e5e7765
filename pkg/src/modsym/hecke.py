import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from src.exact_math.linalg import RationalMatrix, SparseRow
from src.modsym.manin import ManinSpace, _from_sparse_columns

logger = logging.getLogger(__name__)

Matrix2 = Tuple[int, int, int, int]


@lru_cache(maxsize=None)
def merel_matrices(p: int) -> Tuple[Matrix2, ...]:
    """[[a, b], [c, d]] with ad - bc = p, a > b >= 0, d > c >= 0."""
    out = []
    for a in range(1, p + 1):
        for d in range(1, p + 2 - a):
            for b in range(a):
                for c in range(d):
                    if a * d - b * c == p:
                        out.append((a, b, c, d))
    return tuple(out)


def hecke_on_symbol(space: ManinSpace, c: int, d: int, p: int) -> SparseRow:
    """T_p(c:d) = sum over Merel matrices M of (c:d) M, for p not dividing N."""
    out: SparseRow = {}
    for a, b, cc, dd in merel_matrices(p):
        for k, x in space.symbol_vector(c * a + d * cc, c * b + d * dd).items():
            value = out.get(k, Fraction(0)) + x
            if value:
                out[k] = value
            else:
                out.pop(k, None)
    return out


def hecke_operator(space: ManinSpace, p: int) -> RationalMatrix:
    """T_p on the whole space, columns indexed by the free symbols."""
    if space.N % p == 0:
        raise ValueError(f"T_{p} is only built for p not dividing N={space.N}")
    columns = [hecke_on_symbol(space, *space.p1.symbols[j], p) for j in space.free]
    return _from_sparse_columns(columns, space.dimension)


def hecke_matrix(space: ManinSpace, p: int) -> RationalMatrix:
    """T_p restricted to the cuspidal subspace, on ManinSpace.cuspidal_basis."""
    return space.restrict_to_cuspidal(hecke_operator(space, p))


def eisenstein_eigenvalue(p: int) -> int:
    return p + 1


def charpoly_roots_rational(M: RationalMatrix) -> List[Fraction]:
    """Rational eigenvalues of a small square matrix, with multiplicity."""
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in M.rows]).charpoly(x)
    roots = []
    for r, mult in sympy.roots(poly, filter="Q").items():
        roots.extend([Fraction(int(sympy.fraction(r)[0]), int(sympy.fraction(r)[1]))] * mult)
    return sorted(roots)
