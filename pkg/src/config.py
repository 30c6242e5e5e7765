import os
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv
from pydantic import BaseModel

REPORTS_DIR = Path(__file__).resolve().parent / "reports"


class Settings(BaseModel):
    precision_bits: int = 128
    jobs: int = 1
    log_level: str = "WARNING"
    golden_path: str = str(REPORTS_DIR / "golden_table.json")
    labels_path: str = str(REPORTS_DIR / "curve_labels.json")
    # closed paths {0, b/d} checked against the homology lattice; 0 skips the check
    c0_denominator_bound: int = 0
    torsion_primes: int = 25
    anchor_disc_bound: int = 50


_ENV_FIELDS = {
    "LVALUES_PRECISION_BITS": ("precision_bits", int),
    "LVALUES_JOBS": ("jobs", int),
    "LVALUES_LOG_LEVEL": ("log_level", str),
    "LVALUES_GOLDEN_PATH": ("golden_path", str),
    "LVALUES_LABELS_PATH": ("labels_path", str),
    "LVALUES_C0_DENOMINATOR_BOUND": ("c0_denominator_bound", int),
    "LVALUES_TORSION_PRIMES": ("torsion_primes", int),
    "LVALUES_ANCHOR_DISC_BOUND": ("anchor_disc_bound", int),
}


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    load_dotenv()
    values = {}
    for var, (field, cast) in _ENV_FIELDS.items():
        raw = os.getenv(var)
        if raw is not None and raw != "":
            values[field] = cast(raw)
    settings = Settings(**values)
    if settings.precision_bits < 128:
        raise ValueError(f"precision_bits must be at least 128, got {settings.precision_bits}")
    return settings
