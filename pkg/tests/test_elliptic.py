import mpmath
import pytest

from src import errors
from src.dirichlet.character import character_from_spec
from src.elliptic.curve import minimal_model, parse_curve, quadratic_twist
from src.elliptic.diagnostics import disc_is_square, has_two_isogeny, potentially_good
from src.elliptic.local_field import LocalField
from src.elliptic.periods import periods
from src.elliptic.points import a_p, an_table, count_points, count_points_extension, torsion_bound_Kchi, torsion_order_Q, torsion_order_quadratic
from src.elliptic.tate import tate_local, tate_over_tame_extension
from src.errors import SingularCurve, UsageError, WildCase


def test_conductor_and_discriminant_of_11a1(curve):
    E = curve("11a1")
    assert E.conductor == 11
    assert E.disc == -161051
    assert E.local_data(11).kodaira == "I5"
    assert E.local_data(11).reduction == "split"


@pytest.mark.parametrize("label, p, kodaira", [
    ("99b1", 3, "I3*"),
    ("150a1", 5, "III"),
    ("162b1", 3, "II"),
    ("75a1", 5, "IV"),
])
def test_additive_kodaira_types(curve, label, p, kodaira):
    E = curve(label)
    assert E.local_data(p).kodaira == kodaira
    assert E.local_data(p).is_additive
    assert p in E.additive_primes()


def test_minimal_model_undoes_scaling():
    E = minimal_model(0, -4, 8, -160, -1280)
    assert E.ainvs == (0, -1, 1, -10, -20)
    assert E.conductor == 11


def test_singular_input_is_rejected():
    with pytest.raises(SingularCurve):
        minimal_model(0, 0, 0, 0, 0)
    with pytest.raises(SingularCurve):
        parse_curve("0,0,0,-3,2")
    with pytest.raises(UsageError):
        parse_curve("1,x,0,0,0")


def test_fourier_coefficients_of_11a1(curve):
    E = curve("11a1")
    assert [a_p(E, p) for p in (2, 3, 5, 7, 13)] == [-2, -1, 1, -2, 4]
    assert an_table(E, 13)[1:14] == [1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4]
    assert count_points(E, 2) == 5
    assert count_points_extension(E, 2, 2) == 5


@pytest.mark.parametrize("label, order", [("11a1", 5), ("11a3", 5), ("14a4", 6), ("27a3", 3), ("36a1", 6), ("37a1", 1)])
def test_rational_torsion(curve, label, order):
    assert torsion_order_Q(curve(label)) == order


def test_torsion_bound_over_character_field(curve):
    chi = character_from_spec("mod:11,map:2=z5")
    report = torsion_bound_Kchi(curve("11a3"), chi)
    assert report.order_q == 5
    assert report.bound_kchi == 25


@pytest.mark.parametrize(
    "label, D, order",
    [("15a7", 5, 8), ("15a8", 5, 8), ("20a4", 5, 4), ("21a4", -3, 8), ("27a2", -3, 3), ("32a3", -4, 4)],
)
def test_torsion_over_quadratic_field_is_exact(curve, label, D, order):
    chi = character_from_spec(f"kronecker:{D}")
    report = torsion_bound_Kchi(curve(label), chi)
    assert report.bound_is_proven_exact
    assert report.bound_kchi == order
    assert torsion_order_quadratic(curve(label), D) == order
    assert report.bound_kchi % report.order_q == 0


def test_diagnostics(curve):
    assert disc_is_square(curve("32a2"))
    assert not disc_is_square(curve("11a1"))
    assert has_two_isogeny(curve("14a4"))
    assert not has_two_isogeny(curve("11a1"))
    assert not potentially_good(curve("11a1"), 11)


def test_twisting_twice_returns_the_curve(curve):
    E = curve("11a1")
    assert quadratic_twist(quadratic_twist(E, -4), -4).ainvs == E.ainvs
    assert quadratic_twist(E, 5).conductor == 275


def test_periods(curve):
    omega = periods(curve("11a1"), 128)
    assert omega.c_inf == 1
    assert abs(omega.omega_plus - mpmath.mpf("1.26920930427955")) < mpmath.mpf("1e-12")
    omega37 = periods(curve("37a1"), 128)
    assert omega37.rectangular
    assert abs(omega37.omega_plus - mpmath.mpf("5.98691729246392")) < mpmath.mpf("1e-12")
    assert mpmath.im(omega37.omega_minus) > 0
    with pytest.raises(ValueError):
        periods(curve("11a1"), 64)


def test_tame_base_change(curve):
    E = curve("150a1")
    assert tate_local(E, 5).kodaira == "III"
    assert tate_over_tame_extension(E, 5, 4).reduction == "good"
    with pytest.raises(WildCase):
        tate_over_tame_extension(curve("162b1"), 3, 3)


def test_local_field_valuations_are_exact_at_any_depth():
    K = LocalField.tame(5, 4)
    deep = K.pi_power(101)
    assert K.valuation(deep) == 101
    assert K.valuation(K.element(5 ** 60)) == 240
    assert K.valuation(K.sub(K.add(K.element(1), deep), K.element(1))) == 101
    assert not hasattr(errors, "PrecisionExhausted")
