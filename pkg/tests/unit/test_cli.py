import json

import pytest

from src.cli.main import EXIT_FAILED, EXIT_INPUT, EXIT_OK, run
from src.utils.config import settings
from src.utils.helpers import load_json


def _report(capsys):
    return json.loads(capsys.readouterr().out)


def test_params(capsys):
    assert run(["params", "cc_24_8_3"]) == EXIT_OK
    report = _report(capsys)
    assert report["command"] == "params"
    assert report["passed"]
    assert (report["results"]["N"], report["results"]["k"], report["results"]["W"]) == (24, 8, 8)


def test_seed_lookup_by_label(capsys):
    assert run(["params", "[[24,8,3]]"]) == EXIT_OK
    assert _report(capsys)["results"]["N"] == 24


def test_seeds_are_listed(capsys):
    assert run(["seeds"]) == EXIT_OK
    assert len(_report(capsys)["results"]["seeds"]) == 12


def test_missing_document_is_an_input_error(capsys):
    assert run(["params", "no_such_code"]) == EXIT_INPUT
    report = _report(capsys)
    assert not report["passed"]
    assert "no_such_code" in report["error"]


def test_invalid_seed_reports_validation(tmp_path, capsys):
    doc = tmp_path / "bad.json"
    doc.write_text(json.dumps({
        "label": "bad",
        "p": 3,
        "H_a": [["1+x+x^2", "x+x^2"], ["1+x", "x+x^2"]],
        "H_b": [["1+x^2", "x+x^2"], ["1+x", "1+x"]],
    }))
    assert run(["params", str(doc)]) == EXIT_INPUT
    report = _report(capsys)
    assert report["results"]["validation"]["entries_ok"] is False


def test_build_reports_seed_checks(capsys):
    assert run(["build", "cc_24_8_3"]) == EXIT_OK
    results = _report(capsys)["results"]
    assert results["validation"]["H_a"]["entries_ok"]
    assert len(results["hx"]) == 4


def test_overhead(capsys):
    assert run(["overhead", "cc_136_8_14"]) == EXIT_OK
    overhead = _report(capsys)["results"]["overhead"]
    assert overhead["time_per_merge"] == pytest.approx(3.5)
    assert overhead["space"] == 272


def test_exhaustive_distance(capsys):
    assert run(["distance", "cc_24_8_3", "--weight-cap", "3"]) == EXIT_OK
    report = _report(capsys)
    assert report["results"]["d"] == 3
    assert report["rng_seed"] is None


def test_randomized_distance_is_reproducible(capsys):
    argv = ["distance", "cc_12_4_3", "--trials", "30", "--seed", "4"]
    assert run(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert run(argv) == EXIT_OK
    second = capsys.readouterr().out
    assert first == second
    assert json.loads(first)["rng_seed"] == 4


def test_report_written_to_file(tmp_path, capsys):
    out = tmp_path / "params.json"
    assert run(["params", "cc_12_4_3", "--out", str(out)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert load_json(out)["results"]["k"] == 4


def test_clifford_check_exit_codes(capsys):
    assert run(["clifford-check", "2"]) == EXIT_FAILED
    assert not _report(capsys)["passed"]
    assert run(["clifford-check", "4", "--mode", "constructive"]) == EXIT_OK


def test_unknown_command_is_an_input_error():
    assert run(["bogus"]) == EXIT_INPUT


def test_merges_with_connection_document(tmp_path, capsys):
    doc = tmp_path / "conn.json"
    doc.write_text(json.dumps({"basis": "Z", "H_a_prime": [["1", "0"], ["0", "1"]],
                               "H_b_prime": [["1", "0"], ["0", "1"]]}))
    assert run(["merges", "cc_24_8_3", "--connection", str(doc)]) == EXIT_OK
    counts = _report(capsys)["results"]["counts"]
    assert counts["M"] == 4
    assert counts["k_tilde"] == 4


def test_merges_needs_a_connection(capsys):
    assert run(["merges", "cc_24_8_3"]) == EXIT_INPUT


def test_pair_connection(capsys):
    assert run(["pair-connection", "cc_24_8_3", "5", "7"]) == EXIT_OK
    results = _report(capsys)["results"]
    assert results["H_a_prime"] == [[1, 0], [1, 0]]
    assert results["counts"]["M"] >= 1


def test_incompatible_pair(capsys):
    assert run(["pair-connection", "cc_24_8_3", "1", "4"]) == EXIT_INPUT


def test_gadget_cz_s(capsys):
    assert run(["gadget", "cz-s"]) == EXIT_OK
    assert _report(capsys)["results"]["passed"]


def test_default_seed_is_recorded(mocker, capsys):
    mocker.patch.object(settings, "default_seed", 13)
    assert run(["distance", "cc_12_4_3", "--trials", "10"]) == EXIT_OK
    assert _report(capsys)["rng_seed"] == 13


def test_parallel_schedule_suite_uses_worker_pool(mocker, capsys):
    pool = mocker.patch("src.cli.main.ProcessPoolExecutor")
    pool.return_value.__enter__.return_value.map.side_effect = lambda fn, names: [fn(n) for n in names]
    assert run(["gadget", "cnot", "--schedule", "all", "--jobs", "2"]) == EXIT_OK
    pool.assert_called_once_with(max_workers=2)
    assert len(_report(capsys)["results"]["schedules"]) == 12
