from src.elliptic.curve import CurveData, curve_from_label, minimal_model, parse_curve, quadratic_twist
from src.elliptic.diagnostics import KENKU_DEGREES, disc_is_square, has_two_isogeny, potentially_good
from src.elliptic.periods import Periods, periods
from src.elliptic.points import a_p, an_table, count_points, count_points_extension, torsion_bound_Kchi, torsion_order_Q
from src.elliptic.tate import tate_local, tate_over_tame_extension

__all__ = [
    "CurveData",
    "KENKU_DEGREES",
    "Periods",
    "a_p",
    "an_table",
    "count_points",
    "count_points_extension",
    "curve_from_label",
    "disc_is_square",
    "has_two_isogeny",
    "minimal_model",
    "parse_curve",
    "periods",
    "potentially_good",
    "quadratic_twist",
    "tate_local",
    "tate_over_tame_extension",
    "torsion_bound_Kchi",
    "torsion_order_Q",
]
