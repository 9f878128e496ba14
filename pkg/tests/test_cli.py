import json
import subprocess
import sys

import pytest

from cantorsum.cli import main, parse_claim, parse_range
from fractions import Fraction


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_helpers():
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("6") == [6]
    assert parse_claim("(8/9)^3..(8/9)") == (Fraction(512, 729), Fraction(8, 9))
    assert parse_claim("0/1..2/1") == (0, 2)
    assert parse_claim("0.5..0.75") == (Fraction(1, 2), Fraction(3, 4))


def test_decompose_then_verify(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, _, err = run(["decompose", "powersum", "--m", "2", "--target", "3", "--precision", "30",
                        "--output", str(path)], capsys)
    assert code == 0
    assert "target=3/1 t=4" in err and "3^-" in err
    code, out, _ = run(["verify", str(path)], capsys)
    assert code == 0 and "certificate OK" in out


def test_decompose_product_immediate(capsys):
    code, out, err = run(["decompose", "product", "--target", "64/81"], capsys)
    assert code == 0
    assert json.loads(out)["iterations"] == 0
    assert "flips=0" in err


def test_decompose_not_triadic(capsys):
    code, _, err = run(["decompose", "average", "--target", "0.5"], capsys)
    assert code == 3
    assert "NotTriadic" in err and "/3^40" in err


def test_decompose_outside_interval(capsys):
    code, _, err = run(["decompose", "product", "--target", "1/3"], capsys)
    assert code == 1


@pytest.mark.parametrize("args", [
    ["decompose", "average", "--target", "abc"],
    ["decompose", "powersum", "--target", "3"],
    ["decompose", "custom", "--target", "3"],
    ["decompose", "bogus"],
    ["thickness", "--m", "0"],
    ["oracle", "--k", "1..2"],
    ["oracle", "--problem", "nope"],
    [],
])
def test_usage_errors(args, capsys):
    assert run(args, capsys)[0] == 3


def test_decompose_custom_config(tmp_path, capsys):
    cfg = {
        "kind": "custom", "m": 2, "objective": "power_sum",
        "claimed_interval": ["53/81", "71/81"],
        "variables": [
            {"start": "1/3", "direction": "down", "window": ["2/9", "1/3"]},
            {"start": "1/3", "direction": "down", "window": ["2/9", "1/3"]},
            {"start": "2/9", "direction": "up", "window": ["2/9", "1/3"]},
            {"start": "2/3", "direction": "up", "window": ["2/3", "1"]},
        ],
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, out, _ = run(["decompose", "custom", "--config", str(path), "--target", "60/81",
                        "--precision", "20"], capsys)
    assert code == 0
    assert json.loads(out)["problem"]["precision"] == 20


def test_verify_tampered_and_truncated(tmp_path, capsys):
    path = tmp_path / "cert.json"
    assert run(["decompose", "average", "--target", "4/9", "-o", str(path)], capsys)[0] == 0
    doc = json.loads(path.read_text())
    doc["residual"] = "1/2"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(["verify", str(bad)], capsys)
    assert code == 1 and "[FAIL] objective + residual = target" in out
    trunc = tmp_path / "trunc.json"
    trunc.write_text(path.read_text()[:200])
    assert run(["verify", str(trunc)], capsys)[0] == 3
    assert run(["verify", str(tmp_path / "missing.json")], capsys)[0] == 3


def test_oracle_runs(capsys):
    code, out, _ = run(["oracle", "--problem", "average", "--k", "1..8", "--claim", "0/1..2/1"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 9 and all(l.split(",")[6] == "true" for l in lines[1:])
    code, out, _ = run(["oracle", "--problem", "product4", "--k", "1..6", "--claim", "(8/9)^3..(8/9)"], capsys)
    assert code == 0
    code, _, _ = run(["oracle", "--problem", "average", "--k", "2", "--claim", "0..3"], capsys)
    assert code == 1


def test_oracle_budget(capsys):
    code, _, err = run(["oracle", "--problem", "powersum_m3", "--k", "6", "--budget", "1"], capsys)
    assert code == 2 and "budget" in err


def test_oracle_family(capsys):
    code, out, err = run(["oracle", "--family", "--k", "2..3"], capsys)
    rows = out.strip().splitlines()[1:]
    assert len(rows) == 2
    not_confirmed = [r for r in rows if "NOT CONFIRMED" in r]
    assert code == (1 if not_confirmed else 0)
    assert err.count("WARNING") == len(not_confirmed)


def test_thickness(capsys):
    code, out, _ = run(["thickness", "--m", "1..6", "--format", "md"], capsys)
    assert code == 0
    col = out.splitlines()[0].split(" | ").index("terms_paper")
    assert [l.split(" | ")[col] for l in out.splitlines()[2:]] == ["2", "4", "6", "8", "12", "16"]
    code, out, _ = run(["thickness", "--m", "2"], capsys)
    assert out.splitlines()[1].split(",")[2] == "1/4"


def test_deterministic_output(capsys):
    args = ["decompose", "powersum", "--m", "3", "--target", "4", "--precision", "25"]
    _, a, _ = run(args, capsys)
    _, b, _ = run(args, capsys)
    assert a == b


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "cantorsum", "thickness", "--m", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "1/3" in proc.stdout
