import json
import logging
import sys
from argparse import ArgumentParser, Namespace
from fractions import Fraction
from typing import List, Optional

from dotenv import load_dotenv

from src.config import Settings, get_settings
from src.dirichlet.character import character_from_spec
from src.elliptic.curve import CurveData, curve_from_label, parse_curve
from src.errors import LValueError, UsageError
from src.lvalues.report import curve_context, ll_value
from src.modsym.manin import build_space
from src.reports.emit import get_emitter
from src.reports.golden import load_golden, select_rows, verify_golden
from src.reports.scan import run_denominators, run_scan
from src.types import ScanConfig, VerifyOutcome

load_dotenv()

EXIT_WARNINGS = 2


class UsageParser(ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(UsageError.exit_code, f"{self.prog}: error: {message}\n")


def _add_curve_arguments(parser: ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--curve", type=str, help="Weierstrass coefficients a1,a2,a3,a4,a6")
    group.add_argument("--label", type=str, help="Curve label looked up in the label file")
    parser.add_argument("--labels", type=str, default=None, help="Label file (defaults to the shipped one)")
    parser.add_argument("--precision-bits", type=int, default=None, help="Working precision, at least 128")


def parse_arguments(argv: Optional[List[str]] = None) -> Namespace:
    parser = UsageParser(description="Exact algebraic L-values of elliptic curves twisted by Dirichlet characters")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=UsageParser)

    analyze = commands.add_parser("analyze", help="L^a, correction factors and L for one (E, chi)")
    _add_curve_arguments(analyze)
    analyze.add_argument("--char", type=str, required=True, help="kronecker:D or mod:m,map:g=z<d>^k;...")
    analyze.add_argument("--json", action="store_true", help="Print the full report as JSON")
    analyze.add_argument("--orbit", action="store_true", help="Add the values at the Galois conjugates of chi")

    scan = commands.add_parser("scan", help="Non-integral L-values over a conductor range")
    scan.add_argument("--max-conductor", type=int, required=True, help="Largest conductor to scan")
    scan.add_argument("--modulus-bound", type=int, default=None, help="Try every modulus up to this bound instead of m | N")
    scan.add_argument("--format", type=str, default="csv", choices=["csv", "json"], help="Output format")
    scan.add_argument("--jobs", type=int, default=None, help="Thread pool size")
    scan.add_argument("--labels", type=str, default=None, help="Label file listing the curves to scan")
    scan.add_argument("--precision-bits", type=int, default=None, help="Working precision, at least 128")
    scan.add_argument("--denominators", action="store_true", help="Report the largest modular symbol denominator per curve")
    scan.add_argument("--output", type=str, default=None, help="Write to this file instead of stdout")

    verify = commands.add_parser("verify-golden", help="Recompute the golden table")
    verify.add_argument("--rows", type=str, default=None, help="Comma-separated curve labels to verify")
    verify.add_argument("--golden", type=str, default=None, help="Golden table file (defaults to the shipped one)")
    verify.add_argument("--labels", type=str, default=None, help="Label file used for rows without coefficients")
    verify.add_argument("--jobs", type=int, default=None, help="Thread pool size")
    verify.add_argument("--precision-bits", type=int, default=None, help="Working precision, at least 128")

    symbols = commands.add_parser("symbols", help="Exact modular symbols [r]^+ and [r]^-")
    _add_curve_arguments(symbols)
    symbols.add_argument("--r", type=str, nargs="+", default=["0"], help="Rational cusps such as 1/3")
    symbols.add_argument("--json", action="store_true", help="Dump the space and the eigen-functionals as JSON")

    return parser.parse_args(argv)


def settings_for(config: Namespace) -> Settings:
    update = {}
    if getattr(config, "precision_bits", None) is not None:
        if config.precision_bits < 128:
            raise UsageError(f"--precision-bits must be at least 128, got {config.precision_bits}")
        update["precision_bits"] = config.precision_bits
    if getattr(config, "jobs", None) is not None:
        update["jobs"] = config.jobs
    return get_settings().model_copy(update=update)


def load_curve(config: Namespace) -> CurveData:
    if config.label:
        return curve_from_label(config.label, config.labels)
    return parse_curve(config.curve)


def cmd_analyze(config: Namespace, settings: Settings) -> int:
    curve = load_curve(config)
    chi = character_from_spec(config.char)
    report = ll_value(curve_context(curve, settings), chi, orbit=config.orbit)
    if config.json:
        print(json.dumps(report.model_dump(mode="json"), indent=2))
    else:
        print(json.dumps(report.summary(), indent=2))
    return EXIT_WARNINGS if report.warnings else 0


def cmd_scan(config: Namespace, settings: Settings) -> int:
    scan_config = ScanConfig(
        max_conductor=config.max_conductor,
        modulus_bound=config.modulus_bound,
        precision_bits=settings.precision_bits,
        jobs=settings.jobs,
        fmt=config.format,
        labels_path=config.labels,
        denominators=config.denominators,
    )
    if scan_config.denominators:
        text = json.dumps(run_denominators(scan_config), indent=2) + "\n"
        failures = []
    else:
        rows, failures = run_scan(scan_config, settings)
        header = {"policy": scan_config.policy, "max_conductor": str(scan_config.max_conductor)}
        text = get_emitter(scan_config.fmt).dumps(rows, header)
    if config.output:
        with open(config.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    for failure in failures:
        print(f"⚠️ {failure}", file=sys.stderr)
    return 0


def display_outcomes(outcomes: List[VerifyOutcome]) -> None:
    marks = {"PASS": "✅", "FAIL": "❌", "SKIP": "⏭️"}
    for outcome in outcomes:
        print(marks[outcome.status], outcome.label, outcome.chi, f"{outcome.seconds:.3f}s")
        if outcome.status == "FAIL":
            for mismatch in outcome.mismatches:
                print("   ", mismatch)
    counts = {status: sum(1 for o in outcomes if o.status == status) for status in marks}
    print(f"📈 {counts['PASS']} passed, {counts['FAIL']} failed, {counts['SKIP']} skipped of {len(outcomes)} rows")


def cmd_verify_golden(config: Namespace, settings: Settings) -> int:
    rows = load_golden(config.golden or settings.golden_path, config.labels or settings.labels_path)
    wanted = [label.strip() for label in config.rows.split(",")] if config.rows else None
    rows = select_rows(rows, wanted)
    if not rows:
        raise UsageError(f"no golden rows match {config.rows!r}")
    outcomes = verify_golden(rows, settings, jobs=settings.jobs)
    display_outcomes(outcomes)
    if any(o.status == "FAIL" for o in outcomes):
        return 1
    if any(o.status == "SKIP" for o in outcomes):
        return EXIT_WARNINGS
    return 0


def cmd_symbols(config: Namespace, settings: Settings) -> int:
    curve = load_curve(config)
    eig = curve_context(curve, settings).eig
    for text in config.r:
        try:
            r = Fraction(text)
        except ValueError:
            raise UsageError(f"cannot parse cusp {text!r}")
        plus, minus = eig.symbol_pm(r)
        print(f"[{r}]+ = {plus}    [{r}]- = {minus}")
    if config.json:
        print(build_space(curve.conductor).dumps())
        print(eig.dumps())
    return EXIT_WARNINGS if eig.warnings else 0


COMMANDS = {
    "analyze": cmd_analyze,
    "scan": cmd_scan,
    "verify-golden": cmd_verify_golden,
    "symbols": cmd_symbols,
}


def run(config: Namespace) -> int:
    try:
        settings = settings_for(config)
        logging.basicConfig(
            level=settings.log_level,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
        return COMMANDS[config.command](config, settings)
    except LValueError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    config = parse_arguments()
    sys.exit(run(config))
