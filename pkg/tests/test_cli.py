import json

import pytest

from cli import COMMANDS
from core.errors import InvariantViolation
from main import main
from repositories import bitstrings_repo, reports_repo

FAST = ["--deterministic", "--max-len", "10", "--budget", "5000"]


def _records(out: str):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_gen_champernowne_decimal(capsys):
    assert main(FAST + ["gen", "--champernowne", "--base", "10", "--count", "15"]) == 0
    header, record = _records(capsys.readouterr().out)
    assert header["kind"] == "header"
    assert header["command"] == "gen"
    assert record["kind"] == "sequence"
    assert record["sequence_kind"] == "champernowne"
    assert record["digits"] == "123456789101112"
    assert len(record["bits"]) == 60
    assert record["bits"].startswith("000100100011")


def test_gen_writes_artifact(tmp_path, capsys):
    artifact = tmp_path / "zeros.bin"
    argv = FAST + ["--artifact", str(artifact), "--format", "packed", "gen", "--constant", "0", "--count", "20"]
    assert main(argv) == 0
    assert bitstrings_repo.read(artifact) == "0" * 20


def test_battery_from_file(tmp_path, capsys):
    path = bitstrings_repo.write(tmp_path / "x.txt", "0" * 32)
    assert main(FAST + ["test", "--battery", "default", "--in", str(path)]) == 0
    records = _records(capsys.readouterr().out)[1:]
    assert len(records) == 3
    assert all(record["kind"] == "test" for record in records)
    assert {record["name"] for record in records} == {"leading_zeros", "frequency", "odd_positions"}


def test_omega_trace_is_monotone(capsys):
    assert main(FAST + ["omega", "--max-len", "8", "--phases", "300"]) == 0
    records = _records(capsys.readouterr().out)
    trace = [r for r in records if r["kind"] == "omega_trace"]
    values = [int(r["numerator_hex"], 16) / 2 ** r["exponent"] for r in trace]
    assert trace
    assert all(a < b for a, b in zip(values, values[1:]))
    (summary,) = [r for r in records if r["kind"] == "omega"]
    assert 0 < int(summary["numerator_hex"], 16) < 2 ** summary["exponent"]


def test_report_file(tmp_path, capsys):
    out = tmp_path / "report.jsonl"
    assert main(FAST + ["--out", str(out), "gen", "--periodic", "01", "--count", "6"]) == 0
    assert capsys.readouterr().out == ""
    header, record = reports_repo.read(out)
    assert header["timestamp"] is None
    assert record["bits"] == "010101"


def test_deterministic_runs_are_byte_identical(capsys):
    argv = FAST + ["tourney", "--n", "6", "--trials", "30", "--seed", "4"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first


def test_missing_input_exits_2(capsys):
    assert main(FAST + ["complexity"]) == 2


def test_missing_config_exits_2(tmp_path, capsys):
    assert main(["--config", str(tmp_path / "none.env"), "gen", "--constant", "1", "--count", "4"]) == 2


def test_bad_bits_exit_2(capsys):
    assert main(FAST + ["complexity", "--bits", "012"]) == 2


def test_unknown_flag_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["gen", "--wobble"])
    assert info.value.code == 2


def test_invariant_violation_exits_3(monkeypatch, capsys):
    def broken(args, config, writer):
        raise InvariantViolation("Kraft mass exceeds 1")

    monkeypatch.setitem(COMMANDS, "gen", broken)
    assert main(FAST + ["gen", "--constant", "1", "--count", "4"]) == 3


def _kinds(records):
    return [record["kind"] for record in records]


def test_omega_at_twelve_bits(capsys):
    assert main(["--deterministic", "omega", "--max-len", "12", "--phases", "10000", "--halting", "4"]) == 0
    records = _records(capsys.readouterr().out)
    (summary,) = [r for r in records if r["kind"] == "omega"]
    assert summary["max_len"] == 12
    assert 0 < int(summary["numerator_hex"], 16) < 2 ** summary["exponent"]
    (halting,) = [r for r in records if r["kind"] == "halting_set"]
    assert "00" in halting["halting"]


def test_complexity_with_codec(capsys):
    assert main(FAST + ["complexity", "--bits", "0101", "--kind", "K", "--codec", "rle"]) == 0
    records = _records(capsys.readouterr().out)
    assert _kinds(records) == ["header", "complexity", "compressor"]
    estimate = records[1]
    # EMIT 0, EMIT 1, DOUBLE, HALT
    assert (estimate["complexity_kind"], estimate["value"], estimate["fallback"]) == ("K", 10, False)
    assert records[2]["codec"] == "rle"


def test_complexity_oscillation(capsys):
    assert main(FAST + ["complexity", "--bits", "0000", "--oscillation"]) == 0
    points = _records(capsys.readouterr().out)[1:]
    assert [p["n"] for p in points] == [1, 2, 3, 4]
    assert {p["kind"] for p in points} == {"oscillation"}


def test_select_even_positions(capsys):
    assert main(FAST + ["select", "--periodic", "10", "--rule", "even_positions", "--limit", "20"]) == 0
    header, record = _records(capsys.readouterr().out)
    assert record["kind"] == "mwc_selection"
    assert record["rule"] == "even_positions"
    assert record["indices"] == list(range(2, 21, 2))
    assert record["bits"] == "0" * 10


def test_select_reverse_window_and_profile(capsys):
    assert main(FAST + ["select", "--bits", "0011", "--reverse", "4"]) == 0
    _, record = _records(capsys.readouterr().out)
    assert record["kind"] == "kl_selection"
    assert [visit["index"] for visit in record["visits"]] == [4, 3, 2, 1]
    assert record["bits"] == "1100"

    assert main(FAST + ["select", "--periodic", "10", "--profile", "100"]) == 0
    _, report = _records(capsys.readouterr().out)
    assert report["kind"] == "stability"
    assert report["final_ratio"] == 0.5
    assert report["ville"] is True


def test_chaos_predictors(capsys):
    argv = FAST + ["chaos", "--periodic", "01", "--steps", "100", "--predictor", "copy_last", "--predictor", "markov2"]
    assert main(argv) == 0
    records = _records(capsys.readouterr().out)
    assert _kinds(records) == ["header", "orbit", "predictor", "predictor"]
    assert records[1]["ones"] == 50
    assert records[2]["accuracy"] == 0.0
    assert records[3]["predictor"] == "markov(2)"


def test_predict_mixture(capsys):
    argv = FAST + ["predict", "--models", "lambda,bernoulli:3/4", "--prefix", "0", "--horizon", "50", "--trials", "2"]
    assert main(argv) == 0
    records = _records(capsys.readouterr().out)
    assert _kinds(records) == ["header", "mixture", "squared_error", "squared_error"]
    mixture = records[1]
    assert mixture["next_zero"] == "5/12"
    assert mixture["posterior"] == {"lambda": "2/3", "bernoulli(3/4)": "1/3"}
    assert [r["seed"] for r in records[2:]] == [0, 1]
    assert all(r["horizon"] == 50 for r in records[2:])
