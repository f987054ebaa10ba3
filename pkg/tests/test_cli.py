"""Tests for the command-line interface."""

import json

import numpy as np
import pytest

from evcop.cli import main

UNIFORM_MODEL = '[{"family":"uniform_half"},{"family":"uniform_half"}]'
GUMBEL_MODEL = '[{"family":"frechet","theta":0.5},{"family":"frechet","theta":0.5}]'


def _read_csv(path):
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        rows = [[float(v) for v in line.split(",")] for line in fh if line.strip()]
    return header, np.array(rows)


def test_sample_writes_csv(tmp_path):
    out = tmp_path / "s.csv"
    code = main([
        "sample", "--model", UNIFORM_MODEL, "--n", "1000", "--seed", "7",
        "--method", "definetti", "--out", str(out),
    ])
    assert code == 0
    header, rows = _read_csv(out)
    assert header == ["u1", "u2"]
    assert rows.shape == (1000, 2)
    assert rows.min() >= 0.0 and rows.max() <= 1.0


def test_sample_byte_identical_for_fixed_seed(tmp_path):
    out1, out2, out3 = (tmp_path / f"s{i}.csv" for i in range(3))
    argv = ["sample", "--model", UNIFORM_MODEL, "--n", "200", "--seed", "9",
            "--out"]
    assert main(argv + [str(out1)]) == 0
    assert main(argv + [str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert main(["sample", "--model", UNIFORM_MODEL, "--n", "200", "--seed",
                 "10", "--out", str(out3)]) == 0
    assert out1.read_bytes() != out3.read_bytes()


def test_sample_threads_do_not_change_output(tmp_path):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    base = ["sample", "--model", UNIFORM_MODEL, "--n", "500", "--seed", "3",
            "--engine", "rows"]
    assert main(base + ["--out", str(out1)]) == 0
    assert main(base + ["--threads", "4", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_sample_auto_method_picks_pickands_for_unbounded(tmp_path):
    out = tmp_path / "g.csv"
    assert main(["sample", "--model", GUMBEL_MODEL, "--n", "100", "--seed",
                 "1", "--out", str(out)]) == 0
    _, rows = _read_csv(out)
    assert rows.shape == (100, 2)


def test_sample_model_from_file(tmp_path):
    model_file = tmp_path / "model.json"
    model_file.write_text(UNIFORM_MODEL, encoding="utf-8")
    out = tmp_path / "s.csv"
    assert main(["sample", "--model", f"@{model_file}", "--n", "50",
                 "--seed", "2", "--out", str(out)]) == 0
    _, rows = _read_csv(out)
    assert rows.shape == (50, 2)


def test_scatter_preset(tmp_path):
    out = tmp_path / "scatter.csv"
    assert main(["scatter", "--seed", "1", "--out", str(out)]) == 0
    header, rows = _read_csv(out)
    assert header == ["u1", "u2"]
    assert rows.shape == (5000, 2)


def test_stdf_eval_closed_form(capsys):
    assert main(["stdf-eval", "--model", GUMBEL_MODEL, "--t", "1,1"]) == 0
    out = capsys.readouterr().out
    value = float(out.split()[1])
    assert value == pytest.approx(2.0**0.5, abs=1e-9)


def test_stdf_eval_copula_and_conventions(capsys):
    assert main(["stdf-eval", "--model", GUMBEL_MODEL, "--u", "0.5,0.5"]) == 0
    out = capsys.readouterr().out
    assert float(out.split()[1]) == pytest.approx(2.0 ** -(2.0**0.5), abs=1e-9)
    assert main(["stdf-eval", "--model", GUMBEL_MODEL, "--u", "0,0.5"]) == 0
    assert capsys.readouterr().out.strip() == "copula 0"


def test_stdf_eval_monte_carlo(capsys):
    assert main(["stdf-eval", "--model", UNIFORM_MODEL, "--t", "1,1",
                 "--method", "monte_carlo", "--n", "50000", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    parts = out.split()
    value, stderr = float(parts[1]), float(parts[3])
    assert abs(value - 4.0 / 3.0) < 4 * stderr


def test_levy_roundtrip_reports_small_errors(capsys):
    assert main(["levy-roundtrip"]) == 0
    out = capsys.readouterr().out
    errors = [float(line.split()[-1]) for line in out.strip().splitlines()]
    assert len(errors) == 5
    assert max(errors) < 1e-9


def test_bench_runs_and_writes_json(tmp_path, capsys):
    out = tmp_path / "bench.json"
    assert main(["bench", "--dims", "2,3", "--n", "100", "--repetitions", "1",
                 "--out", str(out)]) == 0
    table = capsys.readouterr().out
    assert "De Finetti" in table
    payload = json.loads(out.read_text())
    assert payload["dims"] == [2, 3]


def test_env_seed_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("EVCOP_SEED", "77")
    out1, out2, out3 = (tmp_path / f"e{i}.csv" for i in range(3))
    assert main(["sample", "--model", UNIFORM_MODEL, "--n", "100",
                 "--out", str(out1)]) == 0
    assert main(["sample", "--model", UNIFORM_MODEL, "--n", "100",
                 "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    # explicit --seed wins over the environment
    assert main(["sample", "--model", UNIFORM_MODEL, "--n", "100",
                 "--seed", "78", "--out", str(out3)]) == 0
    assert out1.read_bytes() != out3.read_bytes()


def test_errors_name_the_violated_precondition(tmp_path, capsys):
    # unknown family
    assert main(["sample", "--model", '[{"family":"gauss"}]', "--n", "10"]) == 1
    assert "family" in capsys.readouterr().err
    # parameter out of range
    assert main(["sample", "--model", '[{"family":"frechet","theta":2}]',
                 "--n", "10"]) == 1
    assert "theta" in capsys.readouterr().err
    # frailty sampler on unbounded margins
    assert main(["sample", "--model", GUMBEL_MODEL, "--n", "10",
                 "--method", "definetti"]) == 1
    assert "bounded" in capsys.readouterr().err
    # missing evaluation target
    assert main(["stdf-eval", "--model", GUMBEL_MODEL]) == 1
    assert "--t" in capsys.readouterr().err
    # malformed JSON
    assert main(["sample", "--model", "[not json", "--n", "10"]) == 1
    capsys.readouterr()
    # unknown flag exits with argparse code 2
    with pytest.raises(SystemExit) as exc:
        main(["sample", "--model", UNIFORM_MODEL, "--frobnicate"])
    assert exc.value.code == 2
