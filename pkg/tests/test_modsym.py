import random
from fractions import Fraction
from math import gcd

import pytest

from src.errors import PreconditionViolated
from src.exact_math.linalg import _ext_gcd
from src.modsym.hecke import charpoly_roots_rational, hecke_matrix, hecke_operator
from src.modsym.manin import (
    INFINITY,
    cusp_count,
    cusps_equivalent,
    genus_x0,
    lift_to_sl2,
    make_cusp,
    p1_size,
)
from src.modsym.manin_constant import c0_covolume_estimate, denominator_scan, integral_homology_symbols
from src.modsym.mu import mu_context, mu_symbol


@pytest.mark.parametrize("N, genus", [(11, 1), (37, 2), (43, 3), (64, 3)])
def test_genus(N, genus):
    assert genus_x0(N) == genus


def test_projective_line_and_cusps():
    assert p1_size(11) == 12
    assert p1_size(15) == 24
    assert cusp_count(11) == 2
    assert cusp_count(15) == 4
    assert cusps_equivalent(INFINITY, make_cusp(1, 11), 11)
    assert not cusps_equivalent(make_cusp(0, 1), INFINITY, 11)


@pytest.mark.parametrize("c, d, N", [(3, 5, 11), (0, 1, 11), (1, 0, 37), (6, 4, 15), (5, 7, 99)])
def test_lift_to_sl2(c, d, N):
    a, b, c1, d1 = lift_to_sl2(c, d, N)
    assert a * d1 - b * c1 == 1
    assert (c1 - c) % N == 0 and (d1 - d) % N == 0


def test_cuspidal_dimension(space11, space37):
    assert space11.cuspidal_dimension == 2
    assert space37.cuspidal_dimension == 4


def test_hecke_eigenvalue_at_level_11(space11):
    assert charpoly_roots_rational(hecke_matrix(space11, 2)) == [-2, -2]
    assert charpoly_roots_rational(hecke_matrix(space11, 3)) == [-1, -1]
    with pytest.raises(ValueError):
        hecke_operator(space11, 11)


def test_hecke_operators_commute_with_each_other_and_star(space37):
    star = space37.restrict_to_cuspidal(space37.star_matrix())
    for p in (2, 3, 5, 7, 11, 13):
        Tp = hecke_matrix(space37, p)
        assert Tp * star == star * Tp
        for q in (2, 3, 5):
            Tq = hecke_matrix(space37, q)
            assert Tp * Tq == Tq * Tp


def test_eigen_functionals_of_11a1(eig):
    e = eig("11a1")
    assert e.ap[2] == -2
    assert e.ap[3] == -1
    assert e.functionals.matching_bound >= 23


def test_spot_values(eig):
    assert eig("11a1").symbol_pm(Fraction(1, 3))[0] == Fraction(-3, 10)
    assert eig("11a1").symbol_pm(Fraction(0))[0] == Fraction(1, 5)
    assert eig("11a3").symbol_pm(Fraction(0))[0] == Fraction(1, 25)
    assert eig("11a3").symbol_pm(Fraction(1, 2))[0] == Fraction(-4, 25)
    assert eig("43a1").symbol_pm(Fraction(1, 5)) == (Fraction(1, 2), Fraction(1, 2))


@pytest.mark.parametrize("label", ["11a1", "37a1", "43a1"])
def test_translation_and_negation(eig, label):
    e = eig(label)
    rng = random.Random(label)
    for _ in range(200):
        r = Fraction(rng.randint(-500, 500), rng.randint(1, 60))
        plus, minus = e.symbol_pm(r)
        assert e.symbol_pm(r + 1) == (plus, minus)
        assert e.symbol_pm(-r) == (plus, -minus)


def _gamma0_element(rng: random.Random, N: int):
    while True:
        c = N * rng.randint(-6, 6)
        d = rng.randint(-40, 40)
        if gcd(c, d) == 1:
            break
    g, x, y = _ext_gcd(d, c)
    return x, -y, c, d


@pytest.mark.parametrize("label", ["11a1", "37a1", "43a1"])
def test_gamma0_invariance_and_hecke_relation(eig, label):
    e = eig(label)
    rng = random.Random(label)
    for _ in range(60):
        r = Fraction(rng.randint(-300, 300), rng.randint(1, 40))
        a, b, c, d = _gamma0_element(rng, e.N)
        moved = e.symbol_pm(Fraction(a * r + b, c * r + d)) if c * r + d else None
        if moved is not None:
            base = e.symbol_pm(r)
            shift = e.symbol_pm(Fraction(a, c)) if c else (Fraction(0), Fraction(0))
            assert moved == (base[0] + shift[0], base[1] + shift[1])
        for p in (2, 3, 5):
            total = [x for x in e.symbol_pm(p * r)]
            for j in range(p):
                plus, minus = e.symbol_pm((r + j) / p)
                total[0] += plus
                total[1] += minus
            plus, minus = e.symbol_pm(r)
            assert total == [e.ap[p] * plus, e.ap[p] * minus]


@pytest.mark.parametrize("label, moduli", [("11a1", [3, 5, 7, 11, 22]), ("11a3", [3, 4, 11]), ("37a1", [5, 8, 37]), ("27a3", [3, 9])])
def test_mu_symbols_lie_in_the_scaled_neron_lattice(context, label, moduli):
    ctx = context(label)
    for m in moduli:
        mu = mu_context(m, ctx.eig.N)
        for a in range(1, m):
            if gcd(a, m) != 1:
                continue
            x, y = ctx.eig.periods.lattice_coordinates(*mu_symbol(ctx.eig, mu, a))
            assert (ctx.c0 * x).denominator == 1 and (ctx.c0 * y).denominator == 1, (m, a)


@pytest.mark.parametrize("label, c0", [("11a1", 1), ("11a3", 5), ("14a4", 3), ("15a8", 4), ("27a3", 3), ("37a1", 1)])
def test_manin_constants(context, label, c0):
    assert context(label).c0 == c0


def test_closed_paths_lie_in_integral_homology(eig):
    e = eig("11a3")
    assert c0_covolume_estimate(e, bound=15) == 5
    assert len(integral_homology_symbols(e)) >= 2


@pytest.mark.parametrize("label", ["37a1", "43a1", "53a1", "61a1"])
def test_denominators_without_isogenies(eig, label):
    scan = denominator_scan(eig(label), 30)
    assert 2 % scan["max_denominator"] == 0


def test_mu_context():
    ctx = mu_context(9, 27)
    assert (ctx.D, ctx.delta, ctx.m_tilde) == (9, 3, 1)
    assert ctx.alpha(2) == -1
    assert ctx.alpha(4) == 1
    assert mu_context(5, 11).delta == 1


def test_mu_symbol_preconditions(eig):
    e = eig("11a1")
    with pytest.raises(PreconditionViolated):
        mu_symbol(e, mu_context(5, 11), 5)
    assert mu_symbol(e, mu_context(5, 11), 2) == tuple(
        x - y for x, y in zip(e.symbol_pm(Fraction(2, 5)), e.symbol_pm(Fraction(0)))
    )


@pytest.mark.parametrize("label", ["36a1", "49a1"])
def test_square_level_minus_scalar_from_higher_order_character(eig, label):
    e = eig(label)
    assert e.s_minus != 0
    assert e.anchors["minus"]
    assert all(str(anchor).startswith("mod:") for anchor in e.anchors["minus"])
