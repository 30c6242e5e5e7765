from src.modsym.eigen import EigenSymbol, eigen_functionals, eigen_symbol_for_curve, symbol_pm
from src.modsym.hecke import hecke_matrix, hecke_operator
from src.modsym.manin import ManinSpace, build_space, genus_x0
from src.modsym.manin_constant import c0_covolume_estimate, denominator_scan
from src.modsym.mu import MuContext, mu_context, mu_symbol
from src.modsym.normalize import normalize

__all__ = [
    "EigenSymbol",
    "ManinSpace",
    "MuContext",
    "build_space",
    "c0_covolume_estimate",
    "denominator_scan",
    "eigen_functionals",
    "eigen_symbol_for_curve",
    "genus_x0",
    "hecke_matrix",
    "hecke_operator",
    "mu_context",
    "mu_symbol",
    "normalize",
    "symbol_pm",
]
