from fractions import Fraction

import pytest

from src.dirichlet.character import DirichletCharacter, character_from_spec
from src.errors import PreconditionViolated
from src.exact_math.cyclo import CycloNumber, parse_cyclo
from src.lvalues.audit import integrality_prediction
from src.lvalues.birch import birch_sum_identity_check, galois_conjugate_lla, lla_value
from src.lvalues.corrections import frobenius_candidates, twisting_discriminant
from src.lvalues.report import assemble, ll_value
from src.modsym.mu import mu_context

I = CycloNumber.zeta(4)


def test_eleven_a_three_quintic(context):
    chi = character_from_spec("mod:11,map:2=z5")
    report = ll_value(context("11a3"), chi, orbit=True)
    assert report.ll == parse_cyclo("(2+4z5+z5^2+3z5^3)/5")
    assert report.lla == report.ll
    assert not report.integral
    assert report.corrections == []
    assert report.audit.applies and report.audit.passed
    assert all(entry["equivariant"] for entry in report.orbit)
    assert len(report.orbit) == 4


def test_forty_five_a_one(context):
    report = ll_value(context("45a1"), character_from_spec("kronecker:-3"))
    assert report.lla == Fraction(1, 4)
    assert report.ll == Fraction(3, 16)
    assert [entry.p for entry in report.corrections] == [3]


def test_ninety_nine_b_one(context):
    report = ll_value(context("99b1"), character_from_spec("kronecker:-3"))
    assert report.lla == 2
    assert report.ll == Fraction(3, 2)
    assert report.corrections[0].factor == Fraction(3, 4)
    assert report.corrections[0].change.startswith("I3*->")
    assert report.audit.notes


@pytest.mark.parametrize(
    "label, spec, ll",
    [("36a1", "kronecker:-3", Fraction(1, 2)), ("36a3", "kronecker:-3", Fraction(1, 2)), ("49a1", "kronecker:-7", Fraction(1, 2))],
)
def test_square_levels(context, label, spec, ll):
    assert ll_value(context(label), character_from_spec(spec)).ll == ll


def test_forty_nine_a_one_sextic(context):
    report = ll_value(context("49a1"), character_from_spec("mod:7,map:3=z3+1"))
    assert report.ll == parse_cyclo("(3+2*z3)/7")


def test_integral_values_away_from_the_level(context):
    report = ll_value(context("37a1"), character_from_spec("kronecker:5"))
    assert report.integral
    assert report.audit.integrality_predicted


def test_birch_sum_matches_mu_sum(eig):
    e = eig("11a1")
    chi = character_from_spec("kronecker:5")
    assert birch_sum_identity_check(e, chi, mu_context(5, 11))
    with pytest.raises(PreconditionViolated):
        birch_sum_identity_check(e, chi, mu_context(7, 11))


def test_galois_equivariance(eig):
    e = eig("11a3")
    chi = character_from_spec("mod:11,map:2=z5")
    for sigma in (2, 3, 4):
        conjugate, expected = galois_conjugate_lla(e, chi, sigma)
        assert conjugate == expected
    with pytest.raises(PreconditionViolated):
        lla_value(e, DirichletCharacter(11, [0]))


def test_frobenius_candidates():
    assert set(frobenius_candidates(-4, 5)) == {-2 + I, -2 - I}
    z3 = CycloNumber.zeta(3)
    assert set(frobenius_candidates(-3, 3)) == {z3 - 1, -2 - z3}
    with pytest.raises(ArithmeticError):
        frobenius_candidates(5, 5)


@pytest.mark.parametrize("spec, p, D", [
    ("kronecker:5", 5, 5),
    ("kronecker:-7", 7, -7),
    ("kronecker:-4", 2, -4),
    ("kronecker:8", 2, 8),
    ("kronecker:-8", 2, -8),
])
def test_twisting_discriminant(spec, p, D):
    assert twisting_discriminant(character_from_spec(spec), p) == D


def test_prediction(curve):
    assert integrality_prediction(curve("37a1"), character_from_spec("kronecker:5"), Fraction(1))
    assert integrality_prediction(curve("11a3"), character_from_spec("mod:11,map:2=z5"), Fraction(5)) is None


def test_assemble_descends():
    value = assemble(parse_cyclo("(2+i)/5"), [parse_cyclo("(7-i)/10")], 4)
    assert value == parse_cyclo("(3+i)/10")
    assert value.order == 4


@pytest.mark.slow
def test_one_sixty_two_b_one(context):
    report = ll_value(context("162b1"), character_from_spec("mod:9,map:2=z3"))
    z3 = CycloNumber.zeta(3)
    assert report.lla == (3 + z3) / 7
    assert report.corrections[0].factor == (5 + z3) / 7
    assert report.corrections[0].frobenius_root == z3 - 1
    assert report.ll == (2 + z3) / 7


@pytest.mark.slow
def test_one_fifty_a_one(context):
    report = ll_value(context("150a1"), character_from_spec("mod:5,map:2=i"))
    assert report.lla == (2 + I) / 5
    assert report.lla_norm == Fraction(1, 5)
    assert report.ll == (3 + I) / 10
    assert report.ll_norm == Fraction(1, 10)
    assert report.corrections[0].frobenius_root == -2 - I


@pytest.mark.slow
def test_three_ninety_two_f_one(context):
    report = ll_value(context("392f1"), character_from_spec("mod:7,map:3=z3"))
    assert report.lla == (2 + CycloNumber.zeta(3)) / 2
