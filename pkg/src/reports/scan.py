"""Scanning conductor ranges for non-integral algebraic L-values.

By default only primitive characters whose modulus divides N are tried:
a non-integral value needs either c0 > 1 and m | N, or m^2 | N.  Passing a
modulus bound replaces that with every modulus up to the bound and marks the
output as exploratory.
"""
import logging
import re
import threading
import traceback
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

import sympy

from src.config import Settings, get_settings
from src.dirichlet.character import DirichletCharacter, conjugacy_classes
from src.elliptic.curve import CurveData, curve_from_label, load_curve_labels
from src.errors import LValueError
from src.lvalues.report import CurveContext, curve_context, ll_value
from src.modsym.manin_constant import denominator_scan
from src.reports.golden import curve_columns
from src.types import LValueReport, ScanConfig, ScanRow, label_conductor

logger = logging.getLogger(__name__)

_LABEL = re.compile(r"^(\d+)([a-z]+)(\d*)$")


def label_key(label: str) -> Tuple[int, str, int]:
    match = _LABEL.match(label)
    if not match:
        return (label_conductor(label), label, 0)
    N, iso, number = match.groups()
    return (int(N), iso, int(number or 0))


def scan_curves(config: ScanConfig) -> List[CurveData]:
    labels = load_curve_labels(config.labels_path or get_settings().labels_path)
    chosen = sorted((l for l in labels if label_conductor(l) <= config.max_conductor), key=label_key)
    return [curve_from_label(l, config.labels_path) for l in chosen]


def moduli(N: int, modulus_bound: Optional[int]) -> List[int]:
    if modulus_bound is None:
        return [m for m in sympy.divisors(N) if m >= 3]
    return list(range(3, modulus_bound + 1))


def scan_row(context: CurveContext, chi: DirichletCharacter, report: LValueReport, settings: Settings) -> ScanRow:
    columns = curve_columns(context, chi, settings)
    return ScanRow(
        curve=context.curve.name,
        c0=str(columns["c0"]),
        c_inf=columns["c_inf"],
        disc_square="yes" if columns["disc_square"] else "no",
        tQ=columns["t_q"],
        tK=columns["t_k"],
        tK_exact=columns["t_k_exact"],
        m=chi.modulus,
        chi=chi.label(),
        lla="" if report.lla == report.ll else str(report.lla),
        ll=str(report.ll),
        warnings=list(report.warnings),
    )


def row_key(row: ScanRow) -> Tuple:
    return label_key(row.curve) + (row.m, row.chi)


def run_scan(config: ScanConfig, settings: Optional[Settings] = None) -> Tuple[List[ScanRow], List[str]]:
    """Non-integral rows, one per (curve, conjugacy class of characters), plus the pairs that failed."""
    settings = (settings or get_settings()).model_copy(update={"precision_bits": config.precision_bits})
    curves = scan_curves(config)
    lock = threading.Lock()
    rows: List[ScanRow] = []
    failures: List[str] = []

    def _context(curve: CurveData) -> Optional[CurveContext]:
        context = curve_context(curve, settings)
        try:
            context.eig
        except LValueError as e:
            logger.warning("%s: %s: %s", curve.name, type(e).__name__, e)
            with lock:
                failures.append(f"{curve.name}: {type(e).__name__}")
            return None
        except Exception as e:
            logger.error("%s crashed: %s", curve.name, traceback.format_exc())
            with lock:
                failures.append(f"{curve.name}: {type(e).__name__}")
            return None
        logger.info("modular symbols ready for %s", curve.name)
        return context

    def _evaluate(pair: Tuple[CurveContext, DirichletCharacter]) -> None:
        context, chi = pair
        try:
            report = ll_value(context, chi)
            row = None if report.integral else scan_row(context, chi, report, settings)
        except LValueError as e:
            logger.warning("%s, %s: %s: %s", context.curve.name, chi.label(), type(e).__name__, e)
            with lock:
                failures.append(f"{context.curve.name} {chi.label()}: {type(e).__name__}")
            return
        except Exception as e:
            logger.error("%s, %s crashed: %s", context.curve.name, chi.label(), traceback.format_exc())
            with lock:
                failures.append(f"{context.curve.name} {chi.label()}: {type(e).__name__}")
            return
        if row is None:
            return
        with lock:
            rows.append(row)

    with ThreadPoolExecutor(max_workers=config.jobs) as executor:
        contexts = [c for c in executor.map(_context, curves) if c is not None]
        pairs = [
            (context, orbit[0])
            for context in contexts
            for m in moduli(context.curve.conductor, config.modulus_bound)
            for orbit in conjugacy_classes(m)
        ]
        list(executor.map(_evaluate, pairs))

    rows.sort(key=row_key)
    failures.sort()
    return rows, failures


def run_denominators(config: ScanConfig) -> List[Dict[str, object]]:
    bound = config.modulus_bound or 30
    settings = get_settings().model_copy(update={"precision_bits": config.precision_bits})
    out = []
    for curve in scan_curves(config):
        context = curve_context(curve, settings)
        out.append(denominator_scan(context.eig, bound))
    return out
