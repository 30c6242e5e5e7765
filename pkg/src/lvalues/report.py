import logging
import threading
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple

from src.config import Settings, get_settings
from src.dirichlet.character import DirichletCharacter
from src.elliptic.curve import CurveData
from src.elliptic.periods import Periods, periods
from src.errors import LValueError
from src.exact_math.cyclo import CycloNumber
from src.lvalues.audit import theorem_conditions_audit
from src.lvalues.birch import lla_value
from src.lvalues.corrections import corrections
from src.modsym.eigen import EigenSymbol, eigen_symbol_for_curve
from src.modsym.manin import build_space
from src.modsym.manin_constant import c0_covolume_estimate
from src.types import LValueReport

logger = logging.getLogger(__name__)


class CurveContext:
    """Everything computed once per curve: periods, modular symbols and the Manin constant."""

    def __init__(self, curve: CurveData, settings: Optional[Settings] = None):
        self.curve = curve
        self.settings = settings or get_settings()
        self._eig: Optional[EigenSymbol] = None
        self._c0: Optional[Fraction] = None
        self._lock = threading.Lock()

    @property
    def periods(self) -> Periods:
        return self.eig.periods

    @property
    def eig(self) -> EigenSymbol:
        with self._lock:
            if self._eig is None:
                space = build_space(self.curve.conductor)
                omega = periods(self.curve, self.settings.precision_bits)
                self._eig = eigen_symbol_for_curve(space, self.curve, omega,
                                                   disc_bound=self.settings.anchor_disc_bound)
            return self._eig

    @property
    def c0(self) -> Fraction:
        if self._c0 is None:
            bound = self.settings.c0_denominator_bound or None
            self._c0 = c0_covolume_estimate(self.eig, bound)
        return self._c0


_CONTEXTS: Dict[Tuple[Tuple[int, ...], Optional[str], int], CurveContext] = {}
_CONTEXTS_LOCK = threading.Lock()


def curve_context(curve: CurveData, settings: Optional[Settings] = None) -> CurveContext:
    settings = settings or get_settings()
    key = (curve.ainvs, curve.label, settings.precision_bits)
    with _CONTEXTS_LOCK:
        if key not in _CONTEXTS:
            _CONTEXTS[key] = CurveContext(curve, settings)
        return _CONTEXTS[key]


def assemble(lla: CycloNumber, factors: List[CycloNumber], d: int) -> CycloNumber:
    """L^a times the correction factors, re-expressed in Q(zeta_d)."""
    value = lla
    for f in factors:
        value = value * f
    try:
        return value.descend(d)
    except ValueError:
        raise LValueError(f"{value} does not lie in Q(zeta_{d})")


def ll_value(context: CurveContext, chi: DirichletCharacter, orbit: bool = False,
             audit: bool = True) -> LValueReport:
    curve, eig = context.curve, context.eig
    lla = lla_value(eig, chi)
    entries = corrections(curve, chi)
    ll = assemble(lla, [c.factor for c in entries], chi.order)
    warnings = list(eig.warnings) + [c.warning for c in entries if c.warning]
    report = LValueReport(
        curve=curve.name,
        chi=chi.label(),
        lla=lla,
        corrections=entries,
        ll=ll,
        integral=ll.is_integral(),
        lla_integral=lla.is_integral(),
        lla_norm=lla.norm(),
        ll_norm=ll.norm(),
        warnings=warnings,
    )
    if audit:
        report.audit = theorem_conditions_audit(report, curve, chi, context.c0)
    if orbit:
        report.orbit = galois_orbit(context, chi, ll)
    return report


def galois_orbit(context: CurveContext, chi: DirichletCharacter, ll: CycloNumber) -> List[Dict[str, object]]:
    out = []
    for sigma in range(1, max(chi.order, 2)):
        if gcd(sigma, chi.order) != 1:
            continue
        conjugate = ll_value(context, chi.galois_conjugate(sigma), audit=False)
        expected = ll.galois(sigma)
        out.append({
            "sigma": sigma,
            "chi": conjugate.chi,
            "ll": str(conjugate.ll),
            "equivariant": conjugate.ll == expected,
        })
    return out
