"""Weierstrass models over Q: invariants, global minimal models, conductor and twists."""
import json
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

from src.config import get_settings
from src.errors import SingularCurve, UsageError
from src.elliptic.local_field import vp
from src.elliptic.tate import tate_rational_model
from src.types import LocalData, label_conductor

logger = logging.getLogger(__name__)

WEIGHTS = (1, 2, 3, 4, 6)


def invariants(a: Sequence[Fraction]) -> Dict[str, Fraction]:
    a1, a2, a3, a4, a6 = (Fraction(x) for x in a)
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return {"b2": b2, "b4": b4, "b6": b6, "b8": b8, "c4": c4, "c6": c6, "disc": disc}


class CurveData:
    """A globally minimal Weierstrass model with its local data at every bad prime."""

    __slots__ = ("ainvs", "b2", "b4", "b6", "b8", "c4", "c6", "disc", "j", "conductor", "local", "transform", "label")

    def __init__(self, ainvs: Sequence[int], local: Dict[int, LocalData],
                 transform: Tuple[Fraction, Fraction, Fraction, Fraction], label: Optional[str] = None):
        self.ainvs: Tuple[int, ...] = tuple(int(x) for x in ainvs)
        inv = invariants(self.ainvs)
        self.b2, self.b4, self.b6, self.b8 = (int(inv[k]) for k in ("b2", "b4", "b6", "b8"))
        self.c4, self.c6, self.disc = int(inv["c4"]), int(inv["c6"]), int(inv["disc"])
        self.j = Fraction(self.c4 ** 3, self.disc)
        self.local = dict(local)
        self.conductor = 1
        for p, data in self.local.items():
            self.conductor *= p ** data.conductor_exponent
        self.transform = transform
        self.label = label

    @classmethod
    def from_coefficients(cls, coefficients: Sequence, label: Optional[str] = None) -> "CurveData":
        curve = minimal_model(*coefficients)
        curve.label = label
        return curve

    @property
    def bad_primes(self) -> List[int]:
        return sorted(self.local)

    def local_data(self, p: int) -> LocalData:
        if p in self.local:
            return self.local[p]
        return LocalData(p=p, valuation=0, kodaira="I0", reduction="good", conductor_exponent=0)

    def is_good(self, p: int) -> bool:
        return p not in self.local

    def additive_primes(self) -> List[int]:
        return [p for p, data in sorted(self.local.items()) if data.is_additive]

    @property
    def name(self) -> str:
        return self.label or "[" + ",".join(str(a) for a in self.ainvs) + "]"

    def to_json(self) -> Dict[str, object]:
        return {
            "label": self.label,
            "ainvs": list(self.ainvs),
            "conductor": self.conductor,
            "discriminant": self.disc,
            "j": str(self.j),
            "local": [d.model_dump() for d in self.local.values()],
        }

    def __eq__(self, other):
        return isinstance(other, CurveData) and self.ainvs == other.ainvs

    def __hash__(self):
        return hash(self.ainvs)

    def __repr__(self):
        return f"CurveData({self.name}, N={self.conductor})"


def _integral_scaling(a: Sequence[Fraction]) -> int:
    u = 1
    den = 1
    for x in a:
        den = den * x.denominator // sympy.igcd(den, x.denominator)
    for p in sympy.primefactors(den):
        k = max((-vp(x, p) + w - 1) // w for x, w in zip(a, WEIGHTS) if x) if any(a) else 0
        u *= p ** max(k, 0)
    return u


def _reduced_model(c4: int, c6: int) -> Tuple[int, ...]:
    """The model with a1, a3 in {0, 1} and a2 in {-1, 0, 1} having the given c4, c6."""
    b2 = (-c6) % 12
    if b2 > 5:
        b2 -= 12
    b4, r4 = divmod(b2 * b2 - c4, 24)
    b6, r6 = divmod(-b2 ** 3 + 36 * b2 * b4 - c6, 216)
    if r4 or r6:
        raise ArithmeticError(f"(c4, c6) = ({c4}, {c6}) are not invariants of an integral model")
    a1 = b2 % 2
    a2 = (b2 - a1) // 4
    a3 = b6 % 2
    a4 = (b4 - a1 * a3) // 2
    a6 = (b6 - a3) // 4
    return a1, a2, a3, a4, a6


def minimal_model(*coefficients, label: Optional[str] = None) -> CurveData:
    if len(coefficients) == 1 and isinstance(coefficients[0], (list, tuple)):
        coefficients = tuple(coefficients[0])
    if len(coefficients) != 5:
        raise UsageError(f"expected five coefficients a1,a2,a3,a4,a6, got {len(coefficients)}")
    a = [Fraction(x) for x in coefficients]
    inv = invariants(a)
    if inv["disc"] == 0:
        raise SingularCurve(f"curve {[str(x) for x in a]} is singular")

    u0 = _integral_scaling(a)
    integral = [x * u0 ** w for x, w in zip(a, WEIGHTS)]
    inv_int = invariants(integral)
    disc = int(inv_int["disc"])

    u1 = 1
    for p in sympy.primefactors(abs(disc)):
        if vp(disc, p) >= 12:
            steps = tate_rational_model(integral, p).nonminimal_steps
            if steps:
                logger.debug("model is %d step(s) from minimal at p=%d", steps, p)
                u1 *= p ** steps
    c4 = int(inv_int["c4"]) // u1 ** 4
    c6 = int(inv_int["c6"]) // u1 ** 6
    ainvs = _reduced_model(c4, c6)

    # x = u^2 x' + r, y = u^3 y' + s u^2 x' + t from the input model
    u = Fraction(u1, u0)
    a1, a2, a3 = a[0], a[1], a[2]
    s = (u * ainvs[0] - a1) / 2
    r = (u * u * ainvs[1] - a2 + s * a1 + s * s) / 3
    t = (u ** 3 * ainvs[2] - a3 - r * a1) / 2

    min_disc = int(invariants(ainvs)["disc"])
    local = {}
    for p in sympy.primefactors(abs(min_disc)):
        result = tate_rational_model([Fraction(x) for x in ainvs], p)
        local[p] = LocalData(
            p=p,
            valuation=result.valuation,
            kodaira=result.kodaira,
            reduction=result.reduction,
            conductor_exponent=result.conductor_exponent,
        )
    return CurveData(ainvs, local, (u, r, s, t), label)


def quadratic_twist(curve: CurveData, D: int) -> CurveData:
    """Minimal model of the twist of ``curve`` by Q(sqrt(D))."""
    return minimal_model(0, 0, 0, -27 * D * D * curve.c4, -54 * D ** 3 * curve.c6)


def parse_curve(text: str) -> CurveData:
    try:
        coefficients = [Fraction(part.strip()) for part in text.replace("[", "").replace("]", "").split(",")]
    except ValueError:
        raise UsageError(f"cannot parse curve coefficients {text!r}")
    return minimal_model(*coefficients)


@lru_cache(maxsize=8)
def load_curve_labels(path: Optional[str] = None) -> Dict[str, Tuple[int, ...]]:
    path = path or get_settings().labels_path
    with open(path, "r") as f:
        raw = json.load(f)
    return {label: tuple(int(a) for a in coeffs) for label, coeffs in raw.items()}


def curve_from_label(label: str, path: Optional[str] = None) -> CurveData:
    labels = load_curve_labels(path)
    if label not in labels:
        raise UsageError(f"unknown curve label {label!r}; known labels are listed in {path or get_settings().labels_path}")
    curve = CurveData.from_coefficients(labels[label], label=label)
    expected = label_conductor(label)
    if curve.conductor != expected:
        raise UsageError(f"label {label} has conductor {expected} but its coefficients give {curve.conductor}")
    return curve
