"""Command-line interface: JSON envelopes, exit codes, file output."""

import json
import subprocess
import sys

import pytest

from cyleta import circle_spectrum, dump_spectrum, from_records
from cyleta.cli import main


def _run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    doc = json.loads(captured.out) if captured.out else None
    return status, doc


def _write_single(tmp_path, lam, name="spec.json"):
    path = tmp_path / name
    dump_spectrum(from_records([(lam, 1, 1.0, 0.0)]), path)
    return str(path)


# ---------------------------------------------------------------------------
# computations


def test_eta_of_circle(capsys):
    status, doc = _run(capsys, "eta", "--twist", "0.25", "--n-max", "400")
    assert status == 0
    assert doc["errors"] == []
    assert doc["version"] == "0.1.0"
    assert doc["request"]["command"] == "eta"
    assert doc["result"]["value"] == pytest.approx([0.5, 0.0], abs=1e-8)


def test_repeated_requests_are_byte_identical(capsys):
    argv = ("eta", "--twist", "0.25", "--n-max", "200")
    main(list(argv))
    first = capsys.readouterr().out
    main(list(argv))
    second = capsys.readouterr().out
    assert first == second


def test_contribution_with_repeated_collars(capsys):
    status, doc = _run(capsys, "contribution", "--twist", "0.25",
                       "--n-max", "200", "--a-prime", "0.3",
                       "--a-prime", "0.8")
    assert status == 0
    reports = doc["result"]["reports"]
    assert [r["a_prime"] for r in reports] == [0.3, 0.8]
    for report in reports:
        assert report["direct_value"] == pytest.approx([-0.25, 0.0],
                                                       abs=1e-8)


def test_dirichlet_variant_from_file(capsys, tmp_path):
    path = _write_single(tmp_path, 2.0)
    status, doc = _run(capsys, "dirichlet-variant", "--spectrum", path,
                       "--a-prime", "0.5")
    assert status == 0
    values = doc["result"]["values"]
    assert values[0]["a_prime"] == 0.5
    assert values[0]["value"] == pytest.approx([-0.5, 0.0], abs=1e-10)
    assert values[0]["est_error"] > 0.0


def test_index_eta_route(capsys):
    status, doc = _run(capsys, "index", "--twist", "0.25", "--n-max", "200",
                       "--as-term", "0.25")
    assert status == 0
    assert doc["result"]["route"] == "aps"
    entry = doc["result"]["reports"][0]
    assert entry["index_value"] == pytest.approx([0.0, 0.0], abs=1e-8)
    # identity group element auto-detected, so the residual is reported
    assert entry["integrality_residual"] <= 1e-8
    assert entry["est_error"] >= 0.0


def test_index_contribution_route(capsys):
    status, doc = _run(capsys, "index", "--twist", "0.25", "--n-max", "200",
                       "--as-term", "0.25,0", "--a-prime", "0.5",
                       "--g-identity")
    assert status == 0
    assert doc["result"]["route"] == "contribution"
    entry = doc["result"]["reports"][0]
    assert entry["a_prime"] == 0.5
    assert entry["index_value"] == pytest.approx([0.0, 0.0], abs=1e-8)
    assert isinstance(entry["integrality_residual"], float)


def test_relative_between_spectrum_files(capsys, tmp_path):
    spec = circle_spectrum(0.25, 0.0, 200)
    path1 = tmp_path / "one.json"
    path2 = tmp_path / "two.json"
    dump_spectrum(spec, path1)
    dump_spectrum(spec, path2)
    status, doc = _run(capsys, "relative", "--spectrum", str(path1),
                       "--spectrum", str(path2), "--a-prime", "0.5",
                       "--as-term", "1", "--as-term", "0,1")
    assert status == 0
    result = doc["result"]
    assert result["value"] == pytest.approx([0.0, 0.0], abs=1e-10)
    assert result["as_terms"] == [[1.0, 0.0], [0.0, 1.0]]
    assert result["est_error"] > 0.0


# ---------------------------------------------------------------------------
# verification commands and their exit codes


def test_verify_identities_passes(capsys):
    status, doc = _run(capsys, "verify-identities")
    assert status == 0
    assert doc["result"]["passed"] is True
    assert doc["result"]["decomposition"]["max_abs"] <= 1e-11
    assert doc["result"]["boundary_vanish"]["max_abs"] <= 1e-12


def test_verify_vanishing_passes(capsys):
    status, doc = _run(capsys, "verify-vanishing", "--twist", "0.25",
                       "--n-max", "200", "--a-prime", "0.5")
    assert status == 0
    assert doc["result"]["passed"] is True
    assert doc["result"]["certified"] is True
    assert doc["result"]["final_abs"] <= 1e-6


def test_verify_vanishing_reports_certificate_failure(capsys):
    # Sampling the dominated series at rank 100 of a 401-mode spectrum
    # proves nothing; the command must say so and exit 2.
    status, doc = _run(capsys, "verify-vanishing", "--twist", "0.25",
                       "--n-max", "200", "--a-prime", "0.5",
                       "--cutoff-rank", "100")
    assert status == 2
    assert doc["result"]["passed"] is False
    assert doc["result"]["certificate_failures"]


# ---------------------------------------------------------------------------
# file output


def test_output_flag_writes_file_and_keeps_stdout_clean(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    status = main(["eta", "--twist", "0.5", "--n-max", "50",
                   "--output", str(out_path)])
    assert status == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(out_path.read_text())
    assert doc["result"]["value"] == pytest.approx([0.0, 0.0], abs=1e-12)
    leftovers = [p for p in tmp_path.iterdir() if p.suffix == ".tmp"]
    assert leftovers == []


# ---------------------------------------------------------------------------
# error handling


def test_domain_violation_is_reported_not_raised(capsys):
    status, doc = _run(capsys, "eta", "--twist", "1.5", "--n-max", "50")
    assert status == 1
    assert doc["result"] is None
    assert "InvalidSpectrumError" in doc["errors"][0]


@pytest.mark.parametrize("argv", [
    ("eta", "--twist", "0.25", "--n-max", "50", "--spectrum", "x.json"),
    ("eta",),
    ("eta", "--twist", "0.25"),
    ("eta", "--spectrum", "/nonexistent/spectrum.json"),
    ("index", "--twist", "0.25", "--n-max", "50", "--as-term", "a,b"),
    ("contribution", "--twist", "0.25", "--n-max", "50"),
], ids=["both-sources", "no-source", "missing-n-max", "unreadable-file",
        "bad-as-term", "missing-a-prime"])
def test_input_errors_exit_one(capsys, argv):
    status, doc = _run(capsys, *argv)
    assert status == 1
    assert doc["result"] is None
    assert doc["errors"]


def test_bad_t_sequence_exits_one(capsys):
    status, doc = _run(capsys, "verify-vanishing", "--twist", "0.25",
                       "--n-max", "50", "--a-prime", "0.5",
                       "--t", "0.1", "--t", "0.5")
    assert status == 1
    assert "DomainError" in doc["errors"][0]


def test_relative_needs_two_files(capsys, tmp_path):
    path = _write_single(tmp_path, 2.0)
    status, doc = _run(capsys, "relative", "--spectrum", path,
                       "--a-prime", "0.5")
    assert status == 1
    assert "exactly two" in doc["errors"][0]


# ---------------------------------------------------------------------------
# module entry point


def test_module_invocation():
    proc = subprocess.run(
        [sys.executable, "-m", "cyleta.cli", "eta", "--twist", "0.5",
         "--n-max", "50"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["result"]["value"] == pytest.approx([0.0, 0.0], abs=1e-12)
