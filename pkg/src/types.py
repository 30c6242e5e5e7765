from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, field_serializer

from src.exact_math.cyclo import CycloNumber


class LocalData(BaseModel):
    p: int
    ramification: int = 1
    valuation: int
    kodaira: str
    reduction: str  # good | split | nonsplit | additive
    conductor_exponent: Optional[int] = None

    @property
    def is_additive(self) -> bool:
        return self.reduction == "additive"

    @property
    def is_semistable(self) -> bool:
        return self.reduction != "additive"

    @property
    def symbol(self) -> str:
        """Kodaira symbol with the split/nonsplit suffix used in reduction-change strings."""
        if self.reduction == "split":
            return f"{self.kodaira}s"
        if self.reduction == "nonsplit":
            return f"{self.kodaira}ns"
        return self.kodaira


class TorsionReport(BaseModel):
    order_q: int
    bound_kchi: int
    primes_used: int
    bound_is_proven_exact: bool = False


class ChiLocalData(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    p: int
    e: int
    f: int
    frobenius_value: CycloNumber

    @field_serializer("frobenius_value")
    def _dump_frobenius(self, value: CycloNumber):
        return value.to_json()


class CorrectionEntry(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    p: int
    factor: CycloNumber
    change: str
    e: int = 1
    frobenius_value: Optional[CycloNumber] = None
    frobenius_root: Optional[CycloNumber] = None
    warning: Optional[str] = None

    @field_serializer("factor", "frobenius_value", "frobenius_root")
    def _dump_cyclo(self, value: Optional[CycloNumber]):
        return value.to_json() if value is not None else None


class TheoremAudit(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    c0: Optional[Fraction] = None
    m_divides_n: bool
    m_squared_divides_n: bool
    disc_square: bool
    two_isogeny: bool
    torsion_q: int
    integrality_predicted: Optional[bool] = None
    applies: bool = False
    passed: bool = True
    notes: List[str] = []

    @field_serializer("c0")
    def _dump_c0(self, value: Optional[Fraction]):
        return str(value) if value is not None else None


class LValueReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    curve: str
    chi: str
    lla: CycloNumber
    corrections: List[CorrectionEntry] = []
    ll: CycloNumber
    integral: bool
    lla_integral: bool
    lla_norm: Fraction
    ll_norm: Fraction
    c1_assumed_one: bool = True
    warnings: List[str] = []
    audit: Optional[TheoremAudit] = None
    orbit: Optional[List[Dict[str, Any]]] = None

    @field_serializer("lla", "ll")
    def _dump_cyclo(self, value: CycloNumber):
        return value.to_json()

    @field_serializer("lla_norm", "ll_norm")
    def _dump_norm(self, value: Fraction):
        return str(value)

    def summary(self) -> Dict[str, Any]:
        return {
            "curve": self.curve,
            "chi": self.chi,
            "lla": str(self.lla),
            "ll": str(self.ll),
            "integral": self.integral,
            "corrections": [f"p={c.p}: {c.factor} ({c.change})" for c in self.corrections],
            "warnings": self.warnings,
        }


class GoldenRow(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    label: str
    coefficients: Optional[List[int]] = None
    c0: int
    c_inf: int
    disc_square: bool
    t_q: int
    t_k: int
    m: int
    chi: str
    lla: Optional[CycloNumber] = None
    ll: CycloNumber

    @property
    def conductor(self) -> int:
        return label_conductor(self.label)

    @property
    def expected_lla(self) -> CycloNumber:
        return self.lla if self.lla is not None else self.ll


def label_conductor(label: str) -> int:
    digits = ""
    for ch in label:
        if not ch.isdigit():
            break
        digits += ch
    return int(digits)


class ScanConfig(BaseModel):
    max_conductor: int
    modulus_bound: Optional[int] = None
    precision_bits: int = 128
    jobs: int = 1
    fmt: str = "csv"
    labels_path: Optional[str] = None
    denominators: bool = False

    @property
    def policy(self) -> str:
        return "m | N" if self.modulus_bound is None else "exploratory"


class ScanRow(BaseModel):
    curve: str
    c0: str
    c_inf: int
    disc_square: str
    tQ: int
    tK: int
    m: int
    chi: str
    lla: str
    ll: str
    warnings: List[str] = []
    tK_exact: bool = False


class VerifyOutcome(BaseModel):
    label: str
    chi: str
    status: str  # PASS | FAIL | SKIP
    mismatches: List[str] = []
    seconds: float = 0.0
