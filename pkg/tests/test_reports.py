import json
from fractions import Fraction

import pytest

from src.exact_math.cyclo import parse_cyclo
from src.reports.emit import COLUMNS, CsvEmitter, JsonEmitter, get_emitter
from src.reports.golden import load_golden, select_rows, verify_golden, verify_row
from src.reports.scan import label_key, moduli, run_scan
from src.types import GoldenRow, ScanConfig, ScanRow

ROWS = [
    ScanRow(curve="11a3", c0="5", c_inf=1, disc_square="no", tQ=5, tK=25, m=11, chi="mod:11,map:2=z5",
            lla="", ll="(2+4z5+z5^2+3z5^3)/5"),
    ScanRow(curve="45a1", c0="1", c_inf=1, disc_square="no", tQ=2, tK=8, m=3, chi="kronecker:-3",
            lla="1/4", ll="3/16", warnings=["SurrogateMiss"], tK_exact=True),
]
HEADER = {"policy": "m | N", "max_conductor": "99"}


def test_golden_table_loads(settings):
    rows = load_golden(settings.golden_path, settings.labels_path)
    assert len(rows) == 106
    row = select_rows(rows, ["45a1"])[0]
    assert row.lla == Fraction(1, 4)
    assert row.ll == Fraction(3, 16)
    assert row.coefficients == [1, -1, 0, 0, -5]
    assert all(row.coefficients is not None for row in rows)
    assert select_rows(rows, ["11a3"])[0].ll == parse_cyclo("(2+4z5+z5^2+3z5^3)/5")


def test_golden_rows_without_lla_agree_with_ll(settings):
    for row in load_golden(settings.golden_path, settings.labels_path):
        assert row.expected_lla == (row.lla if row.lla is not None else row.ll)
        assert row.conductor % row.m == 0


def test_missing_coefficients_are_skipped():
    row = GoldenRow(label="48a4", c0=2, c_inf=1, disc_square=False, t_q=2, t_k=8, m=4,
                    chi="kronecker:-1", ll=parse_cyclo("1/4"))
    outcome = verify_row(row)
    assert outcome.status == "SKIP"


def test_verify_passes_and_catches_perturbation(settings):
    rows = select_rows(load_golden(settings.golden_path, settings.labels_path), ["11a3"])
    [outcome] = verify_golden(rows, settings)
    assert outcome.status == "PASS", outcome.mismatches
    perturbed = rows[0].model_copy(update={"coefficients": [0, -1, 1, -1, 0]})
    [outcome] = verify_golden([perturbed], settings)
    assert outcome.status == "FAIL"
    assert outcome.label == "11a3"


def test_verify_records_unexpected_errors_as_failures(monkeypatch, settings):
    def boom(*args, **kwargs):
        raise ArithmeticError("boom")

    monkeypatch.setattr("src.reports.golden.ll_value", boom)
    rows = select_rows(load_golden(settings.golden_path, settings.labels_path), ["11a3"])
    [outcome] = verify_golden(rows, settings)
    assert outcome.status == "FAIL"
    assert outcome.mismatches == ["ArithmeticError: boom"]


def test_csv_round_trip():
    emitter = CsvEmitter()
    text = emitter.dumps(ROWS, HEADER)
    assert text.startswith("# policy: m | N\n")
    assert text.splitlines()[2] == ",".join(COLUMNS)
    assert [r.model_dump(include=set(COLUMNS)) for r in emitter.loads(text)] == \
        [r.model_dump(include=set(COLUMNS)) for r in ROWS]
    assert emitter.loads(emitter.dumps([], HEADER)) == []


def test_json_round_trip():
    emitter = JsonEmitter()
    text = emitter.dumps(ROWS, HEADER)
    assert json.loads(text)["rows"][0]["tK"] == {"value": 25, "qualifier": "upper-bound"}
    assert json.loads(text)["rows"][1]["tK"] == {"value": 8, "qualifier": "exact"}
    assert emitter.loads(text) == ROWS
    assert emitter.dumps(ROWS, HEADER) == text


def test_unknown_format():
    assert isinstance(get_emitter("json"), JsonEmitter)
    with pytest.raises(ValueError):
        get_emitter("xml")


def test_scan_helpers():
    assert moduli(15, None) == [3, 5, 15]
    assert moduli(11, 5) == [3, 4, 5]
    assert sorted(["14a10", "14a6", "11a3", "14b1"], key=label_key) == ["11a3", "14a6", "14a10", "14b1"]
    assert ScanConfig(max_conductor=20).policy == "m | N"
    assert ScanConfig(max_conductor=20, modulus_bound=30).policy == "exploratory"


def test_scan_below_eleven_is_empty(settings):
    rows, failures = run_scan(ScanConfig(max_conductor=10), settings)
    assert rows == [] and failures == []


def test_scan_of_level_eleven(tmp_path, settings):
    labels = tmp_path / "labels.json"
    labels.write_text(json.dumps({"11a1": [0, -1, 1, -10, -20], "11a3": [0, -1, 1, 0, 0]}))
    rows, failures = run_scan(ScanConfig(max_conductor=11, labels_path=str(labels)), settings)
    assert failures == []
    assert [(r.curve, r.m, r.chi) for r in rows] == [("11a3", 11, "mod:11,map:2=z5")]
    assert rows[0].tK == 25


def test_scan_records_unexpected_errors_as_failures(monkeypatch, tmp_path, settings):
    def boom(*args, **kwargs):
        raise ValueError("boom")

    monkeypatch.setattr("src.reports.scan.ll_value", boom)
    labels = tmp_path / "labels.json"
    labels.write_text(json.dumps({"11a3": [0, -1, 1, 0, 0]}))
    rows, failures = run_scan(ScanConfig(max_conductor=11, labels_path=str(labels)), settings)
    assert rows == []
    assert len(failures) == 3
    assert all(f.startswith("11a3 ") and f.endswith(": ValueError") for f in failures)


@pytest.mark.slow
def test_full_golden_table(settings):
    outcomes = verify_golden(load_golden(settings.golden_path, settings.labels_path), settings, jobs=4)
    assert [(o.label, o.chi, o.mismatches) for o in outcomes if o.status != "PASS"] == []
