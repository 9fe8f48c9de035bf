"""End-to-end flows across seeds, surgery, distances and gadgets"""

import json

import pytest

from src.cli.main import EXIT_OK, run
from src.codes.logical import clustered_basis, verify_clustered
from src.codes.seeds import load_seed
from src.distance.exhaustive import exhaustive_distance
from src.distance.randomized import randomized_distance
from src.surgery.connection import merge_complex, merged_counts
from src.surgery.pairing import pair_connection
from src.surgery.procedure import surgery_trace
from src.surgery.scan import overhead_report


def test_pair_measurement_pipeline():
    doc = load_seed("cc_24_8_3")
    code = doc.build()
    assert verify_clustered(clustered_basis(code), code).passed

    conn = pair_connection(code, 5, 7)
    report = merged_counts(code, conn, "Z")
    assert [5, 7] in [t.logicals for t in report.targets]

    merged = merge_complex(code, conn, "Z")
    assert exhaustive_distance(merged, doc.d - 1).d is None

    trace = surgery_trace(code, conn, "Z", doc.d)
    assert all(stage.is_abelian() for stage in trace.stages)

    overhead = overhead_report(code, report.M, doc.d)
    assert overhead.space == 2 * code.n_phys


def test_cli_surgery_from_pair_connection(tmp_path, capsys):
    assert run(["pair-connection", "cc_24_8_3", "1", "5"]) == EXIT_OK
    results = json.loads(capsys.readouterr().out)["results"]

    doc = tmp_path / "pair.json"
    doc.write_text(json.dumps({
        "basis": "Z",
        "H_a_prime": [[str(v) for v in row] for row in results["H_a_prime"]],
        "H_b_prime": [[str(v) for v in row] for row in results["H_b_prime"]],
    }))
    assert run(["surgery", "cc_24_8_3", "--connection", str(doc)]) == EXIT_OK
    surgery = json.loads(capsys.readouterr().out)["results"]
    assert surgery["d_rounds"] == 3
    assert all(stage["abelian"] for stage in surgery["stages"])
    assert [1, 5] in [t["logicals"] for t in surgery["counts"]["targets"]]


def test_gadget_toolbox_report(capsys):
    assert run(["gadget", "toolbox"]) == EXIT_OK
    certificate = json.loads(capsys.readouterr().out)["results"]["certificate"]
    assert len(certificate["generators"]) == 8 + 1 + 12 + 12
    assert all(g["verified"] for g in certificate["generators"])


def test_every_schedule_through_the_cli(capsys):
    assert run(["gadget", "cnot", "--schedule", "all"]) == EXIT_OK
    schedules = json.loads(capsys.readouterr().out)["results"]["schedules"]
    assert all(s["passed"] for s in schedules)


@pytest.mark.slow
@pytest.mark.parametrize("ref,d", [("cc_40_8_5", 5), ("cc_56_8_7", 7)])
def test_randomized_search_reaches_known_distance(ref, d):
    code = load_seed(ref).build()
    estimate = randomized_distance(code, trials=20_000, seed=1)
    assert estimate.d == d
