from src.reports.emit import Emitter, get_emitter
from src.reports.golden import load_golden, verify_golden, verify_row
from src.reports.scan import run_denominators, run_scan

__all__ = [
    "Emitter",
    "get_emitter",
    "load_golden",
    "run_denominators",
    "run_scan",
    "verify_golden",
    "verify_row",
]
