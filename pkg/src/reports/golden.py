import json
import logging
import threading
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

from src.config import Settings, get_settings
from src.dirichlet.character import DirichletCharacter, character_from_spec
from src.elliptic.curve import CurveData, load_curve_labels
from src.elliptic.diagnostics import disc_is_square
from src.elliptic.points import torsion_bound_Kchi
from src.errors import LValueError, UsageError
from src.exact_math.cyclo import parse_cyclo
from src.lvalues.report import CurveContext, curve_context, ll_value
from src.types import GoldenRow, LValueReport, VerifyOutcome

logger = logging.getLogger(__name__)


def load_golden(path: Optional[str] = None, labels_path: Optional[str] = None) -> List[GoldenRow]:
    """Golden rows with coefficients filled in from the label file when the row carries none."""
    settings = get_settings()
    path = path or settings.golden_path
    labels = load_curve_labels(labels_path or settings.labels_path)
    with open(path, "r") as f:
        raw = json.load(f)
    rows = []
    for entry in raw:
        entry = dict(entry)
        entry["ll"] = parse_cyclo(entry["ll"])
        if entry.get("lla") is not None:
            entry["lla"] = parse_cyclo(entry["lla"])
        if entry.get("coefficients") is None and entry["label"] in labels:
            entry["coefficients"] = list(labels[entry["label"]])
        rows.append(GoldenRow(**entry))
    return rows


def curve_columns(context: CurveContext, chi: DirichletCharacter, settings: Settings) -> Dict[str, object]:
    """The per-curve columns of the table: c0, c_inf, disc square, t(Q) and t(K_chi)."""
    curve = context.curve
    torsion = torsion_bound_Kchi(curve, chi, settings.torsion_primes)
    return {
        "c0": context.c0,
        "c_inf": 2 if curve.disc > 0 else 1,
        "disc_square": disc_is_square(curve),
        "t_q": torsion.order_q,
        "t_k": torsion.bound_kchi,
        "t_k_exact": torsion.bound_is_proven_exact,
    }


def compare_row(row: GoldenRow, chi: DirichletCharacter, columns: Dict[str, object], report: LValueReport) -> List[str]:
    mismatches = []
    if chi.modulus != row.m:
        mismatches.append(f"m {chi.modulus} != {row.m}")
    for key in ("c0", "c_inf", "disc_square", "t_q", "t_k"):
        if columns[key] != getattr(row, key):
            mismatches.append(f"{key} {columns[key]} != {getattr(row, key)}")
    if report.lla != row.expected_lla:
        mismatches.append(f"lla {report.lla} != {row.expected_lla}")
    if report.ll != row.ll:
        mismatches.append(f"ll {report.ll} != {row.ll}")
    return mismatches


def verify_row(row: GoldenRow, settings: Optional[Settings] = None) -> VerifyOutcome:
    settings = settings or get_settings()
    if row.coefficients is None:
        logger.warning("no coefficients for %s; skipping", row.label)
        return VerifyOutcome(label=row.label, chi=row.chi, status="SKIP", mismatches=["no coefficients"])
    start = time.perf_counter()
    try:
        curve = CurveData.from_coefficients(row.coefficients, label=row.label)
        if curve.conductor != row.conductor:
            raise UsageError(f"coefficients give conductor {curve.conductor}, label says {row.conductor}")
        chi = character_from_spec(row.chi)
        context = curve_context(curve, settings)
        report = ll_value(context, chi)
        mismatches = compare_row(row, chi, curve_columns(context, chi, settings), report)
    except LValueError as e:
        mismatches = [f"{type(e).__name__}: {e}"]
    except Exception as e:
        logger.error("%s %s crashed: %s", row.label, row.chi, traceback.format_exc())
        mismatches = [f"{type(e).__name__}: {e}"]
    seconds = round(time.perf_counter() - start, 3)
    status = "FAIL" if mismatches else "PASS"
    return VerifyOutcome(label=row.label, chi=row.chi, status=status, mismatches=mismatches, seconds=seconds)


def select_rows(rows: List[GoldenRow], labels: Optional[Sequence[str]]) -> List[GoldenRow]:
    if not labels:
        return rows
    wanted = set(labels)
    return [row for row in rows if row.label in wanted]


def verify_golden(rows: List[GoldenRow], settings: Optional[Settings] = None, jobs: int = 1) -> List[VerifyOutcome]:
    """Recompute every row; outcomes come back in table order whatever the completion order."""
    settings = settings or get_settings()
    lock = threading.Lock()
    done: Dict[int, VerifyOutcome] = {}

    def _run(index: int) -> None:
        outcome = verify_row(rows[index], settings)
        with lock:
            done[index] = outcome
            logger.info("%s %s %s (%.3fs)", outcome.status, outcome.label, outcome.chi, outcome.seconds)

    with ThreadPoolExecutor(max_workers=jobs) as executor:
        list(executor.map(_run, range(len(rows))))
    return [done[i] for i in range(len(rows))]
