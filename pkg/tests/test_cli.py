import csv
import io
import json
import math
from pathlib import Path

import jsonschema
import pytest

from young.cli import main

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "cli-schema.json").read_text())


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def check_json_lines(out: str):
    payloads = [json.loads(line) for line in out.strip().splitlines()]
    for payload in payloads:
        if isinstance(payload, dict):
            jsonschema.validate(payload, SCHEMA)
    return payloads


def test_count(capsys):
    code, out, _ = run_cli(capsys, "count", "--n", "100")
    assert code == 0
    assert out.strip() == "190569292"
    code, out, _ = run_cli(capsys, "count", "--n", "100", "--format", "json")
    (payload,) = check_json_lines(out)
    assert payload["value"] == "190569292"


def test_count_restricted(capsys):
    code, out, _ = run_cli(capsys, "count-restricted", "--n", "4", "--r", "2", "--s", "2")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run_cli(capsys, "count-restricted", "--n", "30", "--r", "5", "--s", "7",
                           "--oracle", "--format", "json")
    (payload,) = check_json_lines(out)
    assert payload["oracle"] is True


def test_asymptotic(capsys):
    code, out, _ = run_cli(capsys, "asymptotic", "--kind", "hardy", "--n", "100")
    (payload,) = check_json_lines(out)
    assert math.isclose(payload["value"], 1.99281e8, rel_tol=1e-4)
    code, out, _ = run_cli(capsys, "asymptotic", "--kind", "restricted", "--n", "2500",
                           "--h", "1.0", "--w", "1.0")
    (payload,) = check_json_lines(out)
    assert payload["r"] == 142
    code, out, _ = run_cli(capsys, "asymptotic", "--kind", "rousseau-ali", "--k", "2")
    (payload,) = check_json_lines(out)
    assert payload["value"] == pytest.approx(0.375)


def test_asymptotic_missing_levels_is_validation_error(capsys):
    code, _, err = run_cli(capsys, "asymptotic", "--kind", "restricted", "--n", "100")
    assert code == 2
    assert "error" in err


def test_freiman_sweep_csv(capsys):
    code, out, _ = run_cli(capsys, "freiman-sweep")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4
    ratios = [float(row["remainder_over_u"]) for row in rows]
    assert all(abs(x - 1.0 / 24.0) < 1e-3 for x in ratios)


def test_lemma1_grid(capsys):
    code, out, _ = run_cli(capsys, "lemma1-grid", "--r-count", "5", "--theta-count", "5",
                           "--format", "json")
    (payload,) = check_json_lines(out)
    assert payload["all_hold"] is True
    assert payload["points"] == 25
    code, out, _ = run_cli(capsys, "lemma1-grid", "--r-count", "3", "--theta-count", "3")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 9
    assert all(row["holds"] == "1" for row in rows)


def test_bound(capsys):
    code, out, _ = run_cli(capsys, "bound", "--n", "910", "--constant", "0.11")
    assert code == 0
    assert math.isclose(float(out), 0.67667, rel_tol=1e-4)
    code, _, err = run_cli(capsys, "bound", "--n", "5")
    assert code == 2


def test_sample_deterministic(capsys, tmp_path):
    args = ["sample", "--n", "30", "--count", "5", "--seed", "9", "--stream", "1",
            "--cache-dir", str(tmp_path)]
    code, out1, _ = run_cli(capsys, *args)
    assert code == 0
    code, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
    lines = out1.strip().splitlines()
    header = json.loads(lines[0])
    jsonschema.validate(header, SCHEMA)
    draws = [json.loads(line) for line in lines[1:]]
    assert len(draws) == 5
    assert all(sum(d) == 30 for d in draws)
    assert all(d == sorted(d, reverse=True) for d in draws)


def test_sample_boltzmann(capsys, tmp_path):
    code, out, err = run_cli(capsys, "sample", "--n", "12", "--count", "3",
                             "--method", "boltzmann", "--seed", "4",
                             "--cache-dir", str(tmp_path))
    assert code == 0
    draws = [json.loads(line) for line in out.strip().splitlines()[1:]]
    assert all(sum(d) == 12 for d in draws)
    assert "acceptance" in err


def test_sample_surrogate_deterministic(capsys):
    args = ["sample-surrogate", "--n", "2500", "--k", "3", "--count", "4", "--seed", "11"]
    code, out1, _ = run_cli(capsys, *args)
    code, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
    lines = out1.strip().splitlines()
    jsonschema.validate(json.loads(lines[0]), SCHEMA)
    for line in lines[1:]:
        record = json.loads(line)
        assert len(record["col_heights"]) == 3
        assert record["sums"] == sorted(record["sums"])


def test_wilf_exact_and_mc(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "wilf", "--n", "4", "--exact", "--threads", "1")
    (payload,) = check_json_lines(out)
    assert payload["estimate"]["value"] == pytest.approx(0.4)
    assert payload["graphical"] == "2"
    code, out, _ = run_cli(capsys, "wilf", "--n", "10", "--samples", "2000", "--seed", "3",
                           "--cache-dir", str(tmp_path))
    (payload,) = check_json_lines(out)
    assert payload["mode"] == "monte-carlo"
    assert payload["estimate"]["samples"] == 2000


def test_macdonald(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "macdonald", "--n", "2", "--exact")
    (payload,) = check_json_lines(out)
    assert payload["estimate"]["value"] == pytest.approx(0.75)
    code, out, _ = run_cli(capsys, "macdonald", "--n", "12", "--samples", "2000",
                           "--seed", "5", "--cache-dir", str(tmp_path))
    (payload,) = check_json_lines(out)
    assert "self_dual" in payload


def test_pk(capsys):
    code, out, _ = run_cli(capsys, "pk", "--n", "100", "--k", "1", "--samples", "50000",
                           "--seed", "6")
    (payload,) = check_json_lines(out)
    assert abs(payload["estimate"]["value"] - 2 / 3) < 0.02


def test_chernoff(capsys):
    code, out, _ = run_cli(capsys, "chernoff", "--j", "100", "--d", "0.3",
                           "--samples", "50000", "--seed", "7")
    (payload,) = check_json_lines(out)
    assert payload["dominated"] is True
    code, out, _ = run_cli(capsys, "chernoff", "--j", "1", "--beta", "2.0",
                           "--samples", "50000", "--seed", "8")
    (payload,) = check_json_lines(out)
    assert payload["kind"] == "ratio"
    code, _, _ = run_cli(capsys, "chernoff", "--j", "5", "--samples", "10")
    assert code == 2


def test_tv_exact_and_mc(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "tv", "--n", "64")
    (payload,) = check_json_lines(out)
    assert 0.0 < payload["tv"] < 1.0
    code, out, _ = run_cli(capsys, "tv", "--n", "40", "--k", "2", "--mc",
                           "--samples", "5000", "--seed", "9", "--cache-dir", str(tmp_path))
    (payload,) = check_json_lines(out)
    assert payload["mode"] == "monte-carlo"
    code, _, _ = run_cli(capsys, "tv", "--n", "40", "--k", "2")
    assert code == 2


def test_cache_dir_is_populated(capsys, tmp_path):
    run_cli(capsys, "sample", "--n", "25", "--count", "1", "--cache-dir", str(tmp_path))
    assert (tmp_path / "counts-by-largest-part-25.ypt").exists()
