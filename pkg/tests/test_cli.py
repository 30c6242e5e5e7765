import json

import pytest

from run import parse_arguments, run


def test_usage_errors_exit_64():
    with pytest.raises(SystemExit) as e:
        parse_arguments(["analyze", "--char", "kronecker:-4"])
    assert e.value.code == 64
    with pytest.raises(SystemExit) as e:
        parse_arguments(["scan", "--format", "xml", "--max-conductor", "20"])
    assert e.value.code == 64


def test_singular_curve_exits_65():
    config = parse_arguments(["analyze", "--curve", "0,0,0,0,0", "--char", "kronecker:-4"])
    assert run(config) == 65


def test_bad_character_exits_64():
    config = parse_arguments(["analyze", "--label", "11a1", "--char", "mod:7,map:3=z4"])
    assert run(config) == 64


def test_low_precision_is_a_usage_error():
    config = parse_arguments(["symbols", "--label", "11a1", "--precision-bits", "64"])
    assert run(config) == 64


def test_analyze_prints_report(capsys):
    config = parse_arguments(["analyze", "--label", "11a3", "--char", "mod:11,map:2=z5", "--json"])
    code = run(config)
    report = json.loads(capsys.readouterr().out)
    assert code == (2 if report["warnings"] else 0)
    assert report["curve"] == "11a3"
    assert report["integral"] is False


def test_symbols_prints_exact_values(capsys):
    config = parse_arguments(["symbols", "--label", "11a1", "--r", "1/3", "0"])
    assert run(config) in (0, 2)
    out = capsys.readouterr().out
    assert "[1/3]+ = -3/10" in out
    assert "[0]+ = 1/5" in out


def test_scan_writes_header(tmp_path):
    output = tmp_path / "scan.csv"
    config = parse_arguments(["scan", "--max-conductor", "10", "--output", str(output)])
    assert run(config) == 0
    assert output.read_text().splitlines()[0] == "# policy: m | N"


def test_verify_golden_single_row(capsys):
    config = parse_arguments(["verify-golden", "--rows", "11a3"])
    assert run(config) == 0
    assert "1 passed, 0 failed, 0 skipped" in capsys.readouterr().out


def test_verify_golden_reports_skips(tmp_path, capsys):
    labels = tmp_path / "labels.json"
    labels.write_text(json.dumps({"11a3": [0, -1, 1, 0, 0]}))
    config = parse_arguments(["verify-golden", "--rows", "48a4", "--labels", str(labels)])
    assert run(config) == 2
    assert "0 passed, 0 failed, 2 skipped" in capsys.readouterr().out
