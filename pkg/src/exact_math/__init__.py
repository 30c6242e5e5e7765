from src.exact_math.cyclo import CycloNumber, cyclo_reduce, format_cyclo, parse_cyclo, root_of_unity_angle
from src.exact_math.linalg import RationalMatrix, left_kernel, rank, rational_kernel, solve, sparse_rref
from src.exact_math.reconstruct import rational_reconstruct


def cyclo_is_integral(x: CycloNumber) -> bool:
    return x.is_integral()


def cyclo_galois(x: CycloNumber, sigma: int) -> CycloNumber:
    return x.galois(sigma)


__all__ = [
    "CycloNumber",
    "RationalMatrix",
    "cyclo_galois",
    "cyclo_is_integral",
    "cyclo_reduce",
    "format_cyclo",
    "left_kernel",
    "parse_cyclo",
    "rank",
    "rational_kernel",
    "rational_reconstruct",
    "root_of_unity_angle",
    "solve",
    "sparse_rref",
]
