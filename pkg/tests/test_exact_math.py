from fractions import Fraction

import mpmath
import pytest

from src.errors import AmbiguousReconstruction, NoCandidate
from src.exact_math.cyclo import CycloNumber, parse_cyclo, root_of_unity_angle
from src.exact_math.ideals import congruent_to_one, is_unit_at, primes_above
from src.exact_math.linalg import (
    RationalMatrix,
    gcd_rationals,
    integer_echelon,
    lattice_basis_2d,
    left_kernel,
    rank,
    rational_kernel,
    solve,
    sparse_rref,
)
from src.exact_math.reconstruct import rational_reconstruct

I = CycloNumber.zeta(4)
Z3 = CycloNumber.zeta(3)
Z5 = CycloNumber.zeta(5)


def test_cube_roots_sum_to_minus_one():
    assert Z3 + Z3 ** 2 == -1


def test_gaussian_norms():
    assert (2 + I) * (2 - I) == 5
    assert parse_cyclo("(2+i)/5").norm() == Fraction(1, 5)
    assert parse_cyclo("(3+i)/10").norm() == Fraction(1, 10)


def test_inverse_and_division():
    x = parse_cyclo("(2+4z5+z5^2+3z5^3)/5")
    assert x * x.inverse() == 1
    assert (x / x) == 1
    assert (1 - Z5).norm() == 5
    assert Z5.trace() == -1


def test_parse_accepts_both_notations():
    assert parse_cyclo("(2+4*z5+z5^2+3*z5^3)/5") == parse_cyclo("(2 + 4ζ5 + ζ5^2 + 3ζ5^3)/5")
    assert parse_cyclo("2-i") == 2 - I
    with pytest.raises(ValueError):
        parse_cyclo("2+w")


def test_integrality_is_coefficientwise():
    assert not parse_cyclo("(2+4z5+z5^2+3z5^3)/5").is_integral()
    assert (2 + Z3).is_integral()
    assert parse_cyclo("(1+z3)/3").denominator() == 3


def test_descend_and_minimal_form():
    z6 = CycloNumber.zeta(6)
    assert z6.descend(3) == -(Z3 ** 2)
    assert z6.minimal_order() == 3
    with pytest.raises(ValueError):
        I.descend(3)
    assert (Z3 + 1) == z6


def test_roots_of_unity():
    assert root_of_unity_angle(parse_cyclo("z3+1")) == Fraction(1, 6)
    assert root_of_unity_angle(-I) == Fraction(3, 4)
    assert root_of_unity_angle(2 + Z3) is None
    assert CycloNumber.root_of_unity(Fraction(2, 5)) == Z5 ** 2


def test_galois_action():
    assert Z5.galois(2) == Z5 ** 2
    x = parse_cyclo("(2+4z5+z5^2+3z5^3)/5")
    assert x.galois(2).galois(3) == x
    assert (2 + I).conj() == 2 - I
    with pytest.raises(ValueError):
        Z5.galois(5)


def test_string_form():
    assert str(CycloNumber.zeta(5)) == "z5"
    assert str(CycloNumber.zeta(6)) == "z3+1"
    assert str(2 - I) == "2-i"
    assert str(CycloNumber.rational(Fraction(3, 16))) == "3/16"
    assert parse_cyclo(str(parse_cyclo("(2+4z5+z5^2+3z5^3)/5"))) == parse_cyclo("(2+4z5+z5^2+3z5^3)/5")


def test_numeric_value():
    value = (2 + I).to_complex(128)
    assert abs(value - mpmath.mpc(2, 1)) < mpmath.mpf(10) ** -30


def test_kernel_and_solve():
    M = RationalMatrix([[1, 2], [2, 4]])
    kernel = rational_kernel(M)
    assert len(kernel) == 1
    assert all(x == 0 for x in M.apply(kernel[0]))
    assert rank(M) == 1
    assert solve(RationalMatrix([[1, 1], [1, -1]]), [3, 1]) == [2, 1]
    assert solve(M, [1, 0]) is None
    assert len(left_kernel(RationalMatrix([[1], [1]]))) == 1


def test_sparse_elimination():
    pivots = sparse_rref([{0: Fraction(1), 1: Fraction(1)}, {0: Fraction(1), 1: Fraction(-1)}, {1: Fraction(2)}])
    assert sorted(pivots) == [0, 1]


def test_rational_lattices():
    assert gcd_rationals([Fraction(1, 2), Fraction(1, 3)]) == Fraction(1, 6)
    assert gcd_rationals([Fraction(2, 3), Fraction(4, 9)]) == Fraction(2, 9)
    assert gcd_rationals([0, 0]) == 0
    (a, b), (zero, c) = lattice_basis_2d([(1, 0), (0, 1), (Fraction(1, 2), Fraction(1, 2))])
    assert zero == 0
    assert a * c == Fraction(1, 2)


def test_integer_echelon():
    basis = integer_echelon([[1, 1, 0], [1, -1, 2], [2, 0, 2]])
    assert basis == [[1, 1, 0], [0, 2, -2]]
    assert [v for v in basis if v[0] == 0] == [[0, 2, -2]]
    assert integer_echelon([[0, 0], [6, 4], [4, 6]]) == [[2, -2], [0, 10]]
    assert integer_echelon([]) == []


def test_reconstruction():
    with mpmath.workprec(200):
        x = mpmath.mpf(1) / 3
        assert rational_reconstruct(x, 100, mpmath.mpf(2) ** -150) == Fraction(1, 3)
        with pytest.raises(NoCandidate):
            rational_reconstruct(mpmath.pi, 10, mpmath.mpf(2) ** -150)
    with pytest.raises(AmbiguousReconstruction):
        rational_reconstruct(mpmath.mpf("0.5"), 1000, mpmath.mpf("1e-4"))


def test_prime_ideals_above_five():
    primes = primes_above(4, 5)
    assert len(primes) == 2
    containing = [P for P in primes if P.contains(2 + I)]
    assert len(containing) == 1
    assert is_unit_at(2 - I, containing[0])
    assert congruent_to_one(CycloNumber.rational(6), containing[0])
