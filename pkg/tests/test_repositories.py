import io
import json

import pytest

from core.config import load_run_config
from core.errors import LengthMismatchError
from repositories import ReportWriter, bitstrings_repo, reports_repo


def test_ascii_ignores_whitespace(tmp_path):
    path = tmp_path / "bits.txt"
    path.write_bytes(b"0101\n  11\r\n00\n")
    assert bitstrings_repo.read(path) == "01011100"


def test_ascii_rejects_other_symbols(tmp_path):
    path = tmp_path / "bits.txt"
    path.write_bytes(b"01x1\n")
    with pytest.raises(ValueError):
        bitstrings_repo.read(path)


def test_packed_layout():
    data = bitstrings_repo.encode("101", "packed")
    assert data == b"AITBITS1" + (3).to_bytes(8, "little") + bytes([0b1010_0000])
    assert bitstrings_repo.decode(data) == "101"


def test_packed_files_are_sniffed(tmp_path, random_bits):
    bits = random_bits(2, 1001)
    path = bitstrings_repo.write(tmp_path / "bits.bin", bits, "packed")
    assert bitstrings_repo.read(path) == bits
    assert bitstrings_repo.read(path, "packed") == bits


def test_packed_length_mismatch():
    data = bitstrings_repo.encode("1" * 16, "packed")
    with pytest.raises(LengthMismatchError):
        bitstrings_repo.decode(data[:-1])
    with pytest.raises(LengthMismatchError):
        bitstrings_repo.decode(b"AITBITS1\x01")


def test_unknown_format():
    with pytest.raises(ValueError):
        bitstrings_repo.encode("01", "hex")


def test_report_lines_are_sorted_compact_json():
    stream = io.StringIO()
    writer = ReportWriter(stream)
    writer.write({"b": 1, "a": [1, 2]}, kind="row")
    assert stream.getvalue() == '{"a":[1,2],"b":1,"kind":"row"}\n'
    assert writer.count == 1


def test_report_file_starts_with_header(tmp_path):
    config = load_run_config(deterministic=True)
    path = tmp_path / "report.jsonl"
    with reports_repo.open("gen", config, path) as writer:
        writer.write({"bits": "0101"}, kind="sequence")
    records = reports_repo.read(path)
    assert [record["kind"] for record in records] == ["header", "sequence"]
    header = records[0]
    assert header["command"] == "gen"
    assert header["timestamp"] is None
    assert header["machine_version"] == "RM-1/1"
    assert header["machine"]["version"] == "RM-1/1"
    assert [row[1] for row in header["machine"]["instruction_set"]] == [
        "HALT", "EMIT", "DOUBLE", "LIT", "COND", "FILL", "LOOP", "REST"
    ]
    assert header["machine"]["max_output_bits"] == config.max_output_bits
    assert len(header["config_digest"]) == 16


def test_deterministic_headers_are_identical():
    config = load_run_config(deterministic=True, seed=5)
    first = reports_repo.build_header("omega", config)
    second = reports_repo.build_header("omega", config)
    assert json.dumps(first.model_dump()) == json.dumps(second.model_dump())
    assert reports_repo.build_header("omega", load_run_config(seed=5)).timestamp is not None


def test_record_kind_fields_are_kept_aside():
    stream = io.StringIO()
    ReportWriter(stream).write({"kind": "K", "value": 10}, kind="complexity")
    assert json.loads(stream.getvalue()) == {"kind": "complexity", "complexity_kind": "K", "value": 10}
