from fractions import Fraction

import mpmath
import pytest

from src.dirichlet.character import (
    canonical_representative,
    character_from_spec,
    conjugacy_classes,
    enumerate_primitive,
    field_discriminant,
    kronecker,
    kronecker_discriminant,
    quadratic_character_of_field,
)
from src.dirichlet.gauss import check_gauss_norm, gauss_sum, gauss_sum_numeric
from src.errors import CharacterUnderdetermined, NotAHomomorphism, TrivialCharacter, UsageError
from src.exact_math.cyclo import CycloNumber


def test_kronecker_characters():
    chi = character_from_spec("kronecker:-1")
    assert kronecker_discriminant(chi) == -4
    assert chi.label() == "kronecker:-4"
    assert chi.parity == -1
    assert character_from_spec("kronecker:5").parity == 1
    assert character_from_spec("kronecker:-3").conductor == 3
    assert quadratic_character_of_field(-8).modulus == 8
    assert quadratic_character_of_field(-8).label() == "kronecker:-8"


def test_field_discriminants():
    assert [field_discriminant(D) for D in (-1, 2, 12, -3, 18)] == [-4, 8, 12, -3, 8]
    assert kronecker(-4, 3) == -1
    assert kronecker(5, 2) == -1
    assert kronecker(-7, 2) == 1
    assert kronecker(-4, 2) == 0
    assert kronecker(-3, -1) == -1
    assert kronecker(5, -1) == 1
    assert kronecker(-3, 12) == 0
    assert kronecker(5, 6) == 1


def test_characters_from_generator_maps():
    chi = character_from_spec("mod:7,map:3=z3")
    assert (chi.order, chi.parity, chi.conductor) == (3, 1, 7)
    assert chi.label() == "mod:7,map:3=z3"
    assert chi.printed() == "3 ↦ ζ3"
    psi = character_from_spec("mod:5,map:2=i")
    assert (psi.order, psi.parity) == (4, -1)
    assert psi.printed() == "2 ↦ i"
    sextic = character_from_spec("mod:7,map:3=z3+1")
    assert (sextic.order, sextic.parity) == (6, -1)
    assert sextic(3) == CycloNumber.zeta(6)


def test_induced_character_is_made_primitive():
    chi = character_from_spec("mod:14,map:3=z3")
    assert chi.modulus == 7
    assert chi.declared_modulus == 14


@pytest.mark.parametrize("spec, error", [
    ("mod:7,map:3=z4", NotAHomomorphism),
    ("mod:7,map:3=2", NotAHomomorphism),
    ("mod:7,map:3=1", TrivialCharacter),
    ("mod:15,map:2=i", CharacterUnderdetermined),
    ("legendre:5", UsageError),
    ("mod:x,map:2=i", UsageError),
])
def test_bad_character_specs(spec, error):
    with pytest.raises(error):
        character_from_spec(spec)


def test_enumeration_and_conjugacy():
    assert len(enumerate_primitive(7)) == 5
    assert len(conjugacy_classes(7)) == 3
    assert len(enumerate_primitive(4)) == 1
    assert enumerate_primitive(6) == []
    chi = character_from_spec("mod:7,map:3=z3")
    assert len(chi.galois_orbit()) == 2
    assert canonical_representative(chi.galois_conjugate(2)) == canonical_representative(chi)


def test_local_data_and_residue_degrees():
    chi = character_from_spec("mod:9,map:2=z3")
    local = chi.local_data(3)
    assert local.e == 3
    assert local.frobenius_value == 1
    assert character_from_spec("kronecker:5").local_data(5).e == 2
    cubic = character_from_spec("mod:7,map:3=z3")
    assert cubic.residue_degree(2) == 3
    assert cubic.residue_degree(13) == 1


def test_gauss_sums_of_quadratic_characters():
    z3 = CycloNumber.zeta(3)
    assert gauss_sum(character_from_spec("kronecker:-3")) == 1 + 2 * z3
    assert gauss_sum(character_from_spec("kronecker:-4")) == 2 * CycloNumber.zeta(4)


@pytest.mark.parametrize("m", [3, 4, 5, 7, 8, 9, 11, 12, 16])
def test_gauss_norm_small_moduli(m):
    for chi in enumerate_primitive(m):
        assert check_gauss_norm(chi), chi


@pytest.mark.slow
def test_gauss_norm_up_to_fifty():
    for m in range(3, 51):
        for chi in enumerate_primitive(m):
            assert check_gauss_norm(chi), chi


def test_gauss_sum_numeric_agrees():
    chi = character_from_spec("mod:11,map:2=z5")
    difference = gauss_sum_numeric(chi, 128) - gauss_sum(chi).to_complex(128)
    assert abs(difference) < mpmath.mpf(10) ** -30
    assert chi.angle(2) == Fraction(1, 5)
