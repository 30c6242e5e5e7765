"""Necessary conditions for a non-integral algebraic L-value, checked on every report."""
import logging
from fractions import Fraction
from math import gcd
from typing import Optional

from src.dirichlet.character import DirichletCharacter
from src.elliptic.curve import CurveData
from src.elliptic.diagnostics import disc_is_square, has_two_isogeny
from src.elliptic.points import torsion_order_Q
from src.errors import SURROGATE_MISS, TheoremContradiction
from src.types import LValueReport, TheoremAudit

logger = logging.getLogger(__name__)


def integrality_prediction(curve: CurveData, chi: DirichletCharacter, c0: Optional[Fraction]) -> Optional[bool]:
    """True when the integrality theorems force an integral value, None when they are silent."""
    if gcd(chi.modulus, curve.conductor) == 1:
        return True
    if c0 is None:
        return None
    additive_in_m = any(chi.modulus % p == 0 for p in curve.additive_primes())
    if not additive_in_m and c0 == 1:
        return True
    return None


def theorem_conditions_audit(report: LValueReport, curve: CurveData, chi: DirichletCharacter,
                             c0: Optional[Fraction]) -> TheoremAudit:
    N, m = curve.conductor, chi.modulus
    torsion = torsion_order_Q(curve)
    audit = TheoremAudit(
        c0=c0,
        m_divides_n=N % m == 0,
        m_squared_divides_n=N % (m * m) == 0,
        disc_square=disc_is_square(curve),
        two_isogeny=has_two_isogeny(curve),
        torsion_q=torsion,
        integrality_predicted=integrality_prediction(curve, chi, c0),
    )
    if not report.lla_integral:
        audit.applies = True
        if not audit.m_divides_n:
            audit.passed = False
            raise TheoremContradiction(f"{report.curve}, {report.chi}: L^a is not integral but m={m} does not divide N={N}")
        big_c0 = c0 is not None and c0 > 1
        if not (big_c0 or audit.m_squared_divides_n):
            audit.passed = False
            raise TheoremContradiction(
                f"{report.curve}, {report.chi}: L^a is not integral with c0={c0} and m^2={m * m} not dividing N={N}"
            )
        if not (audit.disc_square or audit.two_isogeny or torsion > 1):
            logger.warning("%s, %s: no square discriminant, 2-isogeny or rational torsion found", report.curve, report.chi)
            audit.notes.append("no isogeny witness among the surrogate tests")
            report.warnings.append(SURROGATE_MISS)
    elif not report.integral:
        audit.notes.append("L^a is integral; the denominator of L comes from the correction factors")
    if audit.integrality_predicted and not report.integral:
        audit.notes.append("integral value predicted but not found")
        logger.warning("%s, %s: integrality predicted but L is not integral", report.curve, report.chi)
    return audit
