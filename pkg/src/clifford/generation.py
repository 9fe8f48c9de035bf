"""Does a gate set generate the full Clifford group modulo Paulis and phases"""

from itertools import permutations
from typing import Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel
from tqdm import tqdm

from src.clifford.symplectic import (
    GateKind,
    SymplecticOp,
    gate,
    gate_matrix,
    sp_order,
    synthesize_Hi,
    synthesize_Si,
    word_to_symplectic,
)
from src.utils.config import settings
from src.utils.errors import BudgetExceededError, InputError
from src.utils.logger import app_logger

EXHAUSTIVE = "exhaustive"
CONSTRUCTIVE = "constructive"


class GenerationReport(BaseModel):
    m: int
    mode: str
    generated_order: Optional[int] = None
    target_order: int
    full: bool
    missing: List[str] = []
    synthesized: Dict[str, int] = {}


def _pack(op: SymplecticOp) -> int:
    """Column c of the 2m x 2m matrix sits at bit offset 2m c"""
    width = 2 * op.m
    key = 0
    for c, col in enumerate(op.to_array().T):
        key |= int(sum(int(b) << r for r, b in enumerate(col))) << (width * c)
    return key


def _column_table(op: SymplecticOp) -> np.ndarray:
    """T[v] = op v for every v in F2^(2m), vectors packed as ints"""
    width = 2 * op.m
    cols = [sum(int(b) << r for r, b in enumerate(col)) for col in op.to_array().T]
    table = np.zeros(1 << width, dtype=np.uint64)
    for v in range(1, 1 << width):
        low = v & -v
        table[v] = table[v ^ low] ^ np.uint64(cols[low.bit_length() - 1])
    return table


def bfs_closure(m: int, generators: Sequence[SymplecticOp], max_elements: Optional[int] = None) -> int:
    """
    Order of the group generated by symplectic matrices

    Elements are packed into uint64 keys and the frontier is left-multiplied by
    every generator through per-generator column lookup tables.

    Args:
        m: Qubit count, at most 4
        generators: Generating matrices
        max_elements: Closure budget; settings.bfs_max_elements by default

    Returns:
        Number of distinct group elements
    """
    if not 1 <= m <= 4:
        raise InputError(f"packed closure supports 1 <= m <= 4, got {m}")
    max_elements = max_elements or settings.bfs_max_elements
    width = 2 * m
    mask = np.uint64((1 << width) - 1)
    shifts = [np.uint64(width * c) for c in range(width)]
    tables = [_column_table(g) for g in generators]

    def left_multiply(keys: np.ndarray, table: np.ndarray) -> np.ndarray:
        out = np.zeros_like(keys)
        for shift in shifts:
            out |= table[((keys >> shift) & mask).astype(np.int64)] << shift
        return out

    visited = np.array([_pack(SymplecticOp.identity(m))], dtype=np.uint64)
    frontier = visited
    progress = tqdm(desc=f"closure m={m}", disable=not settings.show_progress, leave=False)
    while frontier.size:
        images = np.unique(np.concatenate([left_multiply(frontier, t) for t in tables]))
        frontier = np.setdiff1d(images, visited, assume_unique=True)
        visited = np.union1d(visited, frontier)
        progress.update(int(frontier.size))
        if visited.size > max_elements:
            progress.close()
            raise BudgetExceededError(f"closure exceeds {max_elements} elements")
    progress.close()
    return int(visited.size)


def standard_generators(m: int, with_ssdg: bool = True) -> List[SymplecticOp]:
    """All CNOT(i, j), every S_i S_j^dagger and H on all qubits"""
    gens = [gate_matrix(gate(GateKind.CNOT, i, j), m) for i, j in permutations(range(m), 2)]
    if with_ssdg:
        gens += [gate_matrix(gate(GateKind.SSDG, i, j), m) for i, j in permutations(range(m), 2)]
    gens.append(gate_matrix(gate(GateKind.HALL), m))
    return gens


def _constructive(m: int, generators: Sequence[SymplecticOp]) -> GenerationReport:
    present = set(generators)
    missing = []
    for i, j in permutations(range(m), 2):
        if gate_matrix(gate(GateKind.CNOT, i, j), m) not in present:
            missing.append(f"CNOT({i + 1},{j + 1})")
    if gate_matrix(gate(GateKind.SSDG, 0, 1), m) not in present:
        missing.append("SSDG(1,2)")
    if gate_matrix(gate(GateKind.HALL), m) not in present:
        missing.append("HALL")

    synthesized: Dict[str, int] = {}
    if not missing:
        for i in range(m):
            s_word = synthesize_Si(i, m)
            h_word = synthesize_Hi(i, m)
            if word_to_symplectic(s_word, m) != gate_matrix(gate(GateKind.S, i), m):
                missing.append(f"S({i + 1})")
            if word_to_symplectic(h_word, m) != gate_matrix(gate(GateKind.H, i), m):
                missing.append(f"H({i + 1})")
            synthesized[f"S({i + 1})"] = len(s_word)
            synthesized[f"H({i + 1})"] = len(h_word)
    return GenerationReport(
        m=m,
        mode=CONSTRUCTIVE,
        target_order=sp_order(m),
        full=not missing,
        missing=missing,
        synthesized=synthesized,
    )


def generation_check(m: int, generators: Sequence[SymplecticOp], mode: str = EXHAUSTIVE) -> GenerationReport:
    """
    Compare the generated group with Sp(2m, 2)

    Exhaustive mode closes the group by BFS. Constructive mode requires every
    CNOT, S_1 S_2^dagger and H on all qubits, then synthesizes each S_i and H_i
    from them; CNOT, S and H generate the Clifford group.
    """
    if any(g.m != m for g in generators):
        raise InputError(f"generators must act on {m} qubits")
    if mode == CONSTRUCTIVE:
        if m < 3:
            raise InputError("constructive mode needs m >= 3")
        report = _constructive(m, generators)
    elif mode == EXHAUSTIVE:
        order = bfs_closure(m, generators)
        report = GenerationReport(m=m, mode=mode, generated_order=order, target_order=sp_order(m),
                                  full=order == sp_order(m))
    else:
        raise InputError(f"unknown mode {mode!r}")
    app_logger.info(f"Generation check m={m} ({mode}): full={report.full}")
    return report
