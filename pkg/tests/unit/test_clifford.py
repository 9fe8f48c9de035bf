import numpy as np
import pytest
import stim
from hypothesis import given, settings as hypothesis_settings, strategies as st

from src.clifford.generation import (
    CONSTRUCTIVE,
    bfs_closure,
    generation_check,
    standard_generators,
)
from src.clifford.symplectic import (
    GateKind,
    conjugated_lambda,
    gate,
    gate_matrix,
    invert_word,
    lambda_of,
    parse_gate,
    parse_word,
    sp_order,
    synthesize_Hi,
    synthesize_S1,
    word_to_symplectic,
)
from src.clifford.tableau import PauliVec, SignedPauli, StabTableau, ppm_cnot_check
from src.utils.errors import BudgetExceededError, InputError

STIM_NAMES = {
    GateKind.CNOT: "CNOT",
    GateKind.S: "S",
    GateKind.SDG: "S_DAG",
    GateKind.H: "H",
    GateKind.SWAP: "SWAP",
    GateKind.CZ: "CZ",
    GateKind.X: "X",
    GateKind.Y: "Y",
    GateKind.Z: "Z",
}

M = 3


@st.composite
def gates(draw, m=M):
    kind = draw(st.sampled_from(sorted(STIM_NAMES, key=lambda k: k.value)))
    arity = 2 if kind in (GateKind.CNOT, GateKind.SWAP, GateKind.CZ) else 1
    qubits = draw(st.permutations(range(m)))[:arity]
    return gate(kind, *qubits)


@st.composite
def paulis(draw, m=M):
    letters = draw(st.text(alphabet="IXYZ", min_size=m, max_size=m))
    sign = draw(st.sampled_from(["+", "-"]))
    return PauliVec.from_text(sign + letters)


def stim_circuit(word):
    circuit = stim.Circuit()
    circuit.append("I", list(range(M)))
    for g in word:
        circuit.append(STIM_NAMES[g.kind], list(g.qubits))
    return circuit


def to_stim(p: PauliVec) -> stim.PauliString:
    return stim.PauliString(str(p).replace("I", "_"))


# Symplectic matrices


@pytest.mark.parametrize("kind", [GateKind.CNOT, GateKind.S, GateKind.SDG, GateKind.H, GateKind.SWAP, GateKind.CZ])
def test_gate_matrix_matches_stim_tableau(kind):
    m = 2 if kind in (GateKind.CNOT, GateKind.SWAP, GateKind.CZ) else 1
    ours = gate_matrix(gate(kind, *range(m)), m).to_array()
    tableau = stim.Tableau.from_named_gate(STIM_NAMES[kind])
    for j in range(m):
        xs, zs = tableau.x_output(j).to_numpy()
        assert ours[:, j].tolist() == list(xs.astype(int)) + list(zs.astype(int))
        xs, zs = tableau.z_output(j).to_numpy()
        assert ours[:, m + j].tolist() == list(xs.astype(int)) + list(zs.astype(int))


@given(st.lists(gates(), max_size=12))
def test_words_are_symplectic(word):
    op = word_to_symplectic(word, M)
    assert op.is_symplectic()
    assert (op @ op.inverse()).is_identity()
    assert (word_to_symplectic(invert_word(word), M) @ op).is_identity()


def test_hadamard_on_all_qubits_is_omega():
    op = gate_matrix(gate(GateKind.HALL), 2)
    assert op.to_array().tolist() == [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]


def test_composition_applies_right_operand_first():
    h = gate_matrix(gate(GateKind.H, 0), 1)
    s = gate_matrix(gate(GateKind.S, 0), 1)
    assert word_to_symplectic([gate(GateKind.H, 0), gate(GateKind.S, 0)], 1) == s @ h
    assert s @ h != h @ s


def test_conjugated_lambda_identity():
    a = np.array([[1, 1, 0], [0, 1, 0], [0, 1, 1]], dtype=np.uint8)
    c = np.diag([1, 1, 0]).astype(np.uint8)
    assert conjugated_lambda(a, c).is_symplectic()
    with pytest.raises(InputError):
        lambda_of(np.array([[0, 1], [0, 0]]))


def test_parse_gate_text_is_one_based():
    assert parse_gate("CNOT(1,2)") == gate(GateKind.CNOT, 0, 1)
    assert parse_gate("hall") == gate(GateKind.HALL)
    assert [str(g) for g in parse_word("S(1); CZ(2, 3) HALL")] == ["S(1)", "CZ(2,3)", "HALL"]


@pytest.mark.parametrize("text", ["CNOT(1)", "FOO(1)", "S(0)", "CNOT(2,2)", "S(1"])
def test_parse_gate_rejects_bad_text(text):
    with pytest.raises(InputError):
        parse_gate(text)


def test_sp_orders():
    assert [sp_order(m) for m in (1, 2, 3)] == [6, 720, 1451520]


# Synthesis and generation


def test_s1_synthesis_from_cnots_and_ssdg():
    word = synthesize_S1(3)
    assert {g.kind for g in word} <= {GateKind.CNOT, GateKind.SSDG}
    assert word_to_symplectic(word, 3) == gate_matrix(gate(GateKind.S, 0), 3)


def test_h_synthesis():
    assert word_to_symplectic(synthesize_Hi(1, 4), 4) == gate_matrix(gate(GateKind.H, 1), 4)
    with pytest.raises(InputError):
        synthesize_S1(2)


def test_single_qubit_closure():
    gens = [gate_matrix(gate(GateKind.S, 0), 1), gate_matrix(gate(GateKind.H, 0), 1)]
    assert bfs_closure(1, gens) == 6


def test_two_qubit_standard_set_is_a_proper_subgroup():
    report = generation_check(2, standard_generators(2))
    assert not report.full
    assert report.generated_order < 720


def test_constructive_generation_on_four_qubits():
    report = generation_check(4, standard_generators(4), CONSTRUCTIVE)
    assert report.full
    assert set(report.synthesized) >= {"S(1)", "H(4)"}


def test_constructive_generation_reports_missing_generators():
    gens = standard_generators(3)[:-1]
    report = generation_check(3, gens, CONSTRUCTIVE)
    assert not report.full
    assert report.missing == ["HALL"]


def test_generation_rejects_mismatched_generators():
    with pytest.raises(InputError):
        generation_check(3, standard_generators(2))
    with pytest.raises(InputError):
        generation_check(2, standard_generators(2), "guess")


def test_closure_budget():
    with pytest.raises(BudgetExceededError):
        bfs_closure(2, standard_generators(2), max_elements=10)


@pytest.mark.slow
def test_three_qubit_standard_set_generates_sp6():
    report = generation_check(3, standard_generators(3))
    assert report.full
    assert report.generated_order == 1451520
    assert bfs_closure(3, standard_generators(3, with_ssdg=False)) < 1451520


# Exact-phase Paulis and the tableau


def test_signed_pauli_product_tracks_phase():
    x = SignedPauli.from_bits([1], [0])
    z = SignedPauli.from_bits([0], [1])
    assert (x * z).k == 0
    assert (z * x).k == 2
    assert (x * z).to_pauli().sign == -1


@hypothesis_settings(max_examples=60)
@given(paulis(), st.lists(gates(), max_size=8))
def test_conjugation_matches_stim(p, word):
    ys = sum(a & b for a, b in zip(p.x, p.z))
    signed = SignedPauli.from_bits(p.x, p.z, (0 if p.sign > 0 else 2) + ys)
    ours = signed.conjugate_word(word).to_pauli()
    expected = stim.Tableau.from_circuit(stim_circuit(word))(to_stim(p))
    xs, zs = expected.to_numpy()
    assert list(ours.x) == xs.astype(int).tolist()
    assert list(ours.z) == zs.astype(int).tolist()
    assert ours.sign == int(expected.sign.real)


@hypothesis_settings(max_examples=60)
@given(st.lists(gates(), max_size=12), paulis())
def test_peek_matches_stim_simulator(word, p):
    ours = StabTableau(M)
    ours.apply_word(word)
    sim = stim.TableauSimulator()
    sim.do(stim_circuit(word))
    assert ours.peek(p) == sim.peek_observable_expectation(to_stim(p))


def test_measurement_collapses_state():
    t = StabTableau(1)
    assert t.peek(PauliVec.from_text("Z")) == 1
    assert t.peek(PauliVec.from_text("X")) == 0
    bit, random = t.measure(PauliVec.from_text("X"), forced=1)
    assert (bit, random) == (1, True)
    assert t.peek(PauliVec.from_text("X")) == -1
    bit, random = t.measure(PauliVec.from_text("X"))
    assert (bit, random) == (1, False)


def test_frame_corrections_are_applied():
    t = StabTableau(1)
    t.record(gate(GateKind.X, 0))
    assert t.peek(PauliVec.from_text("Z")) == 1
    t.apply_frame()
    assert t.peek(PauliVec.from_text("Z")) == -1
    assert t.frame == []


def test_copy_is_independent():
    t = StabTableau(2)
    u = t.copy()
    u.apply(gate(GateKind.H, 0))
    assert t.peek(PauliVec.from_text("ZI")) == 1
    assert u.peek(PauliVec.from_text("ZI")) == 0


def test_tableau_rejects_foreign_paulis():
    with pytest.raises(InputError):
        StabTableau(2).peek(PauliVec.from_text("ZZZ"))


def test_measurement_based_cnot():
    report = ppm_cnot_check()
    assert report.passed
    assert report.branches == 8
    assert report.product_inputs == 36
