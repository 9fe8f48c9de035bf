import numpy as np
import pytest

from src.algebra.ring import RingMatrix
from src.clifford.symplectic import GateKind, SymplecticOp, gate, gate_matrix
from src.gadgets import fold
from src.gadgets.physical import (
    Orientation,
    PhysOp,
    case_study_code,
    operator_product,
    permutation_summary,
    preserves_by_span,
)
from src.gadgets.schedules import (
    SCHEDULES,
    find_routing,
    initial_status,
    one_round_routing,
    routing_group,
    run_cnot_schedule,
    stage_set,
    starting_statuses,
)
from src.gadgets.toolbox import (
    CNOT_RECIPES,
    clifford_toolbox_certificate,
    sisj_plan,
    verify_SiSj_gadget,
)
from src.utils.errors import InputError, VerificationError


# Physical operations


def test_operator_product_acts_rightmost_first():
    assert operator_product("SWAP(1,2) H(1)") == [gate(GateKind.H, 0), gate(GateKind.SWAP, 0, 1)]


def test_orientation_maps_printed_labels():
    orientation = Orientation()
    assert orientation.column(1, 3) == 0
    assert orientation.column(2, 3) == 2
    assert orientation.column(4, 3) == 3
    with pytest.raises(InputError):
        orientation.column(0, 3)
    assert orientation.candidates(3)[0] == orientation
    assert len(orientation.candidates(3)) == 6


def test_permutation_summary():
    assert permutation_summary(SymplecticOp.identity(3)) == "I"
    assert permutation_summary(gate_matrix(gate(GateKind.HALL), 2)) == "HALL"
    assert permutation_summary(gate_matrix(gate(GateKind.SWAP, 0, 1), 3)) == "(1 2)"
    assert permutation_summary(gate_matrix(gate(GateKind.CNOT, 0, 1), 2)) is None


def test_fold_phases_must_match_diagonal():
    a_s, a_cz = fold.cz_s_matrices()
    with pytest.raises(InputError):
        PhysOp.fold("bad", a_s, a_cz, {1: GateKind.S})
    lopsided = np.zeros((8, 8), dtype=np.uint8)
    lopsided[1, 2] = 1
    with pytest.raises(InputError):
        PhysOp.fold("bad", a_s, RingMatrix.from_bits(lopsided, 3), dict(fold.cz_s_op().logical_phases))


def test_swap_circuits_preserve_the_code():
    spans = fold.row_span_report()
    for name in ("H-SWAP", "Aut(1)", "Aut(2)", "Aut(3)"):
        assert spans[name], name


def test_span_check_is_for_swap_circuits():
    with pytest.raises(InputError):
        preserves_by_span(case_study_code(), fold.cz_s_op(), fold.printed_orientation())


# Fold-transversal gates and automorphisms


def test_cz_s_gate():
    action = fold.verify_cz_s()
    assert action.checks == {"ring_identity": True, "lifted_identity": True}
    assert action.stabilizers_preserved
    assert action.matches_label
    assert action.phases_match
    assert action.passed


def test_h_swap_gate():
    action = fold.verify_h_swap()
    assert action.matches_label
    assert action.passed


def test_automorphisms():
    actions = {a.name: a for a in fold.verify_automorphisms()}
    assert set(actions) == {"Aut(1)", "Aut(2)", "Aut(3)"}
    assert all(a.passed for a in actions.values())
    assert actions["Aut(2)"].checks["involution"]
    assert actions["Aut(1)"].checks["order_4"]


def test_simplified_global_hadamard():
    report = fold.simplified_global_hadamard()
    assert report.composed.passed
    assert report.printed_word_preserves_code
    assert report.printed_word_action == "(2 3)(5 8) HALL"
    assert not report.printed_word_is_global_h
    assert report.passed


def test_printed_global_h_word_is_pinned():
    report = fold.simplified_global_hadamard()
    assert fold.GLOBAL_H_PRINTED_ACTION == "(2 3)(5 8) HALL"
    assert not report.model_copy(update={"printed_word_action": "(2 3) HALL"}).passed
    assert not report.model_copy(update={"printed_word_preserves_code": False}).passed
    assert fold.row_span_report()["global H (printed word)"]


# Schedules


def test_routing_group():
    group = routing_group()
    assert group.order == 32
    assert group.word_to(tuple(range(8))) == []


def test_stage_sets_measure_printed_rows():
    stages = stage_set("62x84")
    assert [s.name for s in stages] == ["ini", "Z1", "X2", "fin"]
    assert [s.basis for s in stages] == ["X", "Z", "X", "Z"]
    assert frozenset({5, 7}) in stages[1].rows
    with pytest.raises(InputError):
        stage_set("unknown")


@pytest.mark.parametrize("name", sorted(SCHEDULES))
def test_cnot_schedule(name):
    report = run_cnot_schedule(name)
    assert report.passed
    assert report.aux_qubits == 48
    assert report.d_rounds == 3
    assert report.branches >= 1
    assert [tuple(c) for c in report.cnots] == list(SCHEDULES[name].cnots)


def test_global_h_schedule_reverses_cnots():
    assert SCHEDULES["68x42"].cnots == ((4, 2), (6, 8))
    assert SCHEDULES["86x24"].label == "CNOT(2,4) CNOT(8,6)"


def test_printed_routes_are_used():
    report = run_cnot_schedule("62x84")
    assert report.rounds[0].routing == "printed"
    assert report.rounds[0].stages[1].route == ["Aut(2)"]


def test_both_cnots_do_not_fit_one_round():
    with pytest.raises(VerificationError):
        find_routing("2to4", [(8, 6), (2, 4)])


def test_starting_statuses_cover_every_auxiliary_state():
    statuses = starting_statuses()
    assert len(statuses) == 16
    assert statuses[0] == initial_status()
    assert statuses[-1] == initial_status(global_h=True)


def test_automorphisms_keep_the_cluster_blocks():
    for block in ({1, 4, 6, 7}, {2, 3, 5, 8}):
        for perm in routing_group().elements:
            assert {perm[i - 1] + 1 for i in block} == block


def test_catalogue_pair_fits_one_round():
    found = one_round_routing(((6, 2), (8, 4)))
    assert found is not None
    assert found.stage_set == "62x84"
    assert dict(found.start) == initial_status()


@pytest.mark.parametrize("name", ["86x24", "68x42"])
def test_crossed_cnot_pair_has_no_single_round(name):
    assert one_round_routing(((2, 4), (8, 6))) is None
    report = run_cnot_schedule(name)
    assert report.passed
    assert [r.stage_set for r in report.rounds] == ["2to4", "2to6"]


def test_unknown_schedule():
    with pytest.raises(InputError):
        run_cnot_schedule("9to9")


# S_i S_j^dagger and the toolbox


@pytest.mark.parametrize(
    "i,j,plan",
    [
        (4, 2, [(4, 2)]),
        (6, 8, [(6, 8)]),
        (2, 4, [(4, 2)] * 3),
        (4, 6, [(4, 2)] + [(6, 2)] * 3),
        (2, 8, [(4, 2)] * 3 + [(4, 8)]),
    ],
)
def test_sisj_plan(i, j, plan):
    assert sisj_plan(i, j) == plan


@pytest.mark.parametrize("i,j", [(2, 2), (1, 2), (4, 9)])
def test_sisj_plan_rejects_bad_pairs(i, j):
    with pytest.raises(InputError):
        sisj_plan(i, j)


@pytest.mark.parametrize("i,j", [(4, 2), (2, 4), (4, 6), (8, 2)])
def test_sisj_gadget(i, j):
    report = verify_SiSj_gadget(i, j)
    assert report.fold_gate_passed
    assert report.passed
    assert len(report.routes) == len(report.applications)


def test_every_data_cnot_has_a_recipe():
    data = (2, 4, 6, 8)
    assert set(CNOT_RECIPES) == {(c, t) for c in data for t in data if c != t}


def test_toolbox_certificate():
    certificate = clifford_toolbox_certificate(exhaustive=False)
    names = {g.name for g in certificate.generators}
    assert {"HALL", "CNOT(4,2)", "SSDG(2,8)", "X(6)"} <= names
    assert all(g.verified for g in certificate.generators)
    assert certificate.constructive.full
    assert certificate.restricted is None
    assert certificate.passed


@pytest.mark.slow
def test_toolbox_certificate_with_closure():
    certificate = clifford_toolbox_certificate(exhaustive=True)
    assert certificate.restricted.generated_order == 1451520
    assert certificate.restricted_without_ssdg_order < 1451520
    assert certificate.passed
