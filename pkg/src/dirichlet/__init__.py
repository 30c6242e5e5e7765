from src.dirichlet.character import (
    DirichletCharacter,
    character_from_spec,
    conjugacy_classes,
    enumerate_primitive,
    field_discriminant,
    kronecker_discriminant,
    quadratic_character_of_field,
)
from src.dirichlet.gauss import gauss_sum

__all__ = [
    "DirichletCharacter",
    "character_from_spec",
    "conjugacy_classes",
    "enumerate_primitive",
    "field_discriminant",
    "gauss_sum",
    "kronecker_discriminant",
    "quadratic_character_of_field",
]
