"""Fold-transversal gates and automorphisms of the [[24,8,3]] code"""

from functools import lru_cache
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel

from src.algebra.ring import RingMatrix
from src.clifford.symplectic import GateKind, SymplecticOp
from src.codes.cc import CcCode
from src.codes.logical import clustered_basis
from src.gadgets.physical import (
    LogicalAction,
    Orientation,
    PhysOp,
    case_study_code,
    images_to_symplectic,
    logical_images,
    permutation_summary,
    preserves_by_span,
    resolve_orientation,
    word_action,
)
from src.utils.errors import VerificationError
from src.utils.logger import app_logger

# Printed physical words, 1-based labels, time order
H_SWAP = PhysOp.permutation(
    "H-SWAP",
    [(18, 21), (17, 20), (16, 19), (15, 22), (14, 24), (13, 23), (12, 19), (11, 21), (10, 20), (3, 16), (2, 18), (1, 17)],
    global_h=True,
)
AUT1 = PhysOp.permutation(
    "Aut(1)",
    [
        (1, 17), (1, 10), (1, 20), (2, 16), (2, 11), (2, 19), (3, 18), (3, 12), (3, 21),
        (4, 22), (4, 7), (4, 15), (5, 24), (5, 8), (5, 14), (6, 23), (6, 9), (6, 13),
    ],
)
AUT2 = PhysOp.permutation(
    "Aut(2)",
    [(2, 3), (4, 7), (5, 9), (6, 8), (11, 12), (13, 14), (16, 21), (17, 20), (18, 19), (23, 24)],
)
AUT3 = PhysOp.permutation("Aut(3)", [(4, 22), (5, 23), (6, 24), (7, 15), (8, 13), (9, 14)])
GLOBAL_H_PRINTED = PhysOp.permutation(
    "global H (printed word)",
    [(2, 3), (4, 7), (5, 9), (6, 8), (11, 12), (13, 24), (14, 23), (15, 22), (16, 18), (19, 21)],
    global_h=True,
)

# Logical operator products, rightmost factor first
LABELS: Dict[str, str] = {
    "H-SWAP": "SWAP(1,6) SWAP(4,7) SWAP(5,8) SWAP(6,7) HALL",
    "Aut(1)": "SWAP(1,6) SWAP(3,5) SWAP(2,8) SWAP(4,7) SWAP(5,8) SWAP(6,7)",
    "Aut(2)": "SWAP(2,3) SWAP(6,7)",
    "Aut(3)": "SWAP(5,3) SWAP(8,2)",
    "CZ-S": "S(1) S(4) SDG(5) SDG(8) CZ(2,3) CZ(6,7)",
}

AUTOMORPHISMS = (AUT1, AUT2, AUT3)
SIMPLIFIED_GLOBAL_H = (AUT1, AUT1, AUT3, AUT1, H_SWAP)

# The printed ten-swap word maps cluster 2 to 3 and 5 to 8, so it also exchanges those logicals
GLOBAL_H_PRINTED_ACTION = "(2 3)(5 8) HALL"


def cz_s_matrices(l: int = 3) -> tuple:
    """A_S = diag(1,0,0,1,1,0,0,1) and A_CZ with ones at (2,3), (3,2), (6,7), (7,6)"""
    a_s = RingMatrix.from_bits(np.diag([1, 0, 0, 1, 1, 0, 0, 1]), l)
    cz = np.zeros((8, 8), dtype=np.uint8)
    for i, j in ((2, 3), (6, 7)):
        cz[i - 1, j - 1] = cz[j - 1, i - 1] = 1
    return a_s, RingMatrix.from_bits(cz, l)


def cz_s_op(l: int = 3) -> PhysOp:
    a_s, a_cz = cz_s_matrices(l)
    phases = {1: GateKind.S, 4: GateKind.S, 5: GateKind.SDG, 8: GateKind.SDG}
    return PhysOp.fold("CZ-S", a_s, a_cz, phases)


@lru_cache(maxsize=1)
def printed_orientation() -> Orientation:
    return resolve_orientation(case_study_code(), (H_SWAP,) + AUTOMORPHISMS)


def _circuit(code: CcCode, ops) -> list:
    orientation = printed_orientation()
    word = []
    for op in ops:
        word += op.word(code, orientation)
    return word


@lru_cache(maxsize=1)
def verify_cz_s() -> LogicalAction:
    """
    CZ-S fold gate: stabilizer identity over the ring and lifted, then the
    logical action with exact phases
    """
    code = case_study_code()
    op = cz_s_op(code.p)
    a = op.a_s + op.a_cz
    ring_ok = (code.hx @ a @ code.hx.conj_transpose()).is_zero()
    lifted_ok = (code.bhx @ a.binary_lift() @ code.bhx.T).is_zero()
    if not (ring_ok and lifted_ok):
        app_logger.warning("CZ-S matrices fail H_X A H_X^T = 0")
    checks = {"ring_identity": ring_ok, "lifted_identity": lifted_ok}
    return word_action(code, "CZ-S", op.word(code, printed_orientation()), LABELS["CZ-S"], checks)


def verify_h_swap() -> LogicalAction:
    code = case_study_code()
    return word_action(code, "H-SWAP", _circuit(code, [H_SWAP]), LABELS["H-SWAP"])


def verify_automorphisms() -> List[LogicalAction]:
    """Aut(1), Aut(2), Aut(3) against their labels; Aut(2) is an involution and Aut(1) has order 4"""
    code = case_study_code()
    out = []
    for op in AUTOMORPHISMS:
        action = word_action(code, op.description, _circuit(code, [op]), LABELS[op.description])
        mat = action.op()
        checks = {}
        if op is AUT2:
            checks["involution"] = (mat @ mat).is_identity()
        if op is AUT1:
            square = mat @ mat
            checks["order_4"] = not square.is_identity() and (square @ square).is_identity()
        out.append(action.model_copy(update={"checks": checks}))
    return out


class GlobalHadamardReport(BaseModel):
    """Simplified transversal H-bar from H-SWAP and automorphisms, next to the printed swap word"""

    composed: LogicalAction
    printed_word_preserves_code: bool
    printed_word_action: Optional[str] = None
    printed_word_is_global_h: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return (
            self.composed.passed
            and self.printed_word_preserves_code
            and self.printed_word_action == GLOBAL_H_PRINTED_ACTION
        )


@lru_cache(maxsize=1)
def simplified_global_hadamard() -> GlobalHadamardReport:
    """
    H-SWAP . Aut(1) . Aut(3) . Aut(1) . Aut(1) realizes H on all eight logicals

    The printed ten-swap word must preserve the code and act as
    GLOBAL_H_PRINTED_ACTION, global H followed by SWAP(2,3) SWAP(5,8).
    """
    code = case_study_code()
    composed = word_action(code, "global H", _circuit(code, SIMPLIFIED_GLOBAL_H), "HALL")

    basis = clustered_basis(code)
    summary, is_global = None, False
    preserves = preserves_by_span(code, GLOBAL_H_PRINTED, printed_orientation())
    try:
        op: SymplecticOp = images_to_symplectic(logical_images(code, basis, _circuit(code, [GLOBAL_H_PRINTED])))
        summary = permutation_summary(op)
        is_global = summary == "HALL"
    except VerificationError as e:
        app_logger.warning(f"Printed global-H word leaves the code space: {e}")

    note = ""
    if not preserves:
        note = "printed swap word does not preserve the stabilizer group; the composed automorphism word is used"
    elif not is_global:
        note = f"printed swap word acts as {summary}; the composed automorphism word is used instead"
    if note:
        app_logger.warning(note)
    return GlobalHadamardReport(
        composed=composed,
        printed_word_preserves_code=preserves,
        printed_word_action=summary,
        printed_word_is_global_h=is_global,
        note=note,
    )


def row_span_report(orientation: Optional[Orientation] = None) -> Dict[str, bool]:
    """Stabilizer preservation of every printed swap word by row spans"""
    code = case_study_code()
    orientation = orientation or printed_orientation()
    ops = (H_SWAP,) + AUTOMORPHISMS + (GLOBAL_H_PRINTED,)
    return {op.description: preserves_by_span(code, op, orientation) for op in ops}
