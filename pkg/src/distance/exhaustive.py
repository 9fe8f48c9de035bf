"""Exact minimum distance by meet-in-the-middle support enumeration"""

from math import comb
from typing import Dict, Iterator, List, Optional, Tuple

from src.algebra import gf2
from src.algebra.gf2 import BitMatrix
from src.codes.css import CssCode
from src.distance.estimate import DistanceEstimate
from src.utils.config import settings
from src.utils.errors import BudgetExceededError, InputError
from src.utils.logger import app_logger


def _column_keys(checks: BitMatrix, stabilizers: BitMatrix) -> Tuple[List[int], int]:
    """Column j packs the check syndrome of e_j low and its stabilizer-space test high"""
    tests = gf2.kernel_basis(stabilizers)
    syndromes = checks.int_cols() if checks.rows else [0] * checks.cols
    tested = tests.int_cols() if tests.rows else [0] * checks.cols
    return [s | (t << checks.rows) for s, t in zip(syndromes, tested)], checks.rows


def _combinations(keys: List[int], size: int) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """XOR of keys over every size-subset, reusing prefix sums"""
    n = len(keys)
    if size == 0:
        yield 0, ()
        return
    stack = [(0, 0, ())]
    while stack:
        start, acc, chosen = stack.pop()
        if len(chosen) == size:
            yield acc, chosen
            continue
        need = size - len(chosen)
        for j in range(n - need, start - 1, -1):
            stack.append((j + 1, acc ^ keys[j], chosen + (j,)))


def min_logical_weight(
    checks: BitMatrix,
    stabilizers: BitMatrix,
    weight_cap: int,
    budget: Optional[int] = None,
) -> Tuple[Optional[int], Optional[List[int]]]:
    """
    Smallest weight of v with checks v = 0 and v outside rowspan(stabilizers)

    Args:
        checks: Opposite-type check matrix
        stabilizers: Same-type stabilizer generators
        weight_cap: Largest weight searched
        budget: Largest half-table size; settings.exhaustive_budget by default

    Returns:
        (weight, support) of a minimum logical, or (None, None) when none has weight <= cap
    """
    budget = budget or settings.exhaustive_budget
    keys, rows = _column_keys(checks, stabilizers)
    mask = (1 << rows) - 1
    n = len(keys)
    for w in range(1, min(weight_cap, n) + 1):
        small, large = w // 2, w - w // 2
        if comb(n, large) > budget:
            raise BudgetExceededError(f"C({n}, {large}) = {comb(n, large)} exceeds the budget {budget}")

        table: Dict[int, List[Tuple[int, Tuple[int, ...]]]] = {}
        for key, chosen in _combinations(keys, large):
            bucket = table.setdefault(key & mask, [])
            if len(bucket) < 2 and all(tag != key >> rows for tag, _ in bucket):
                bucket.append((key >> rows, chosen))

        for key, chosen in _combinations(keys, small):
            for tag, other in table.get(key & mask, ()):
                if tag != key >> rows:
                    support = sorted(set(chosen) ^ set(other))
                    return len(support), support
    return None, None


def exhaustive_distance(code: CssCode, weight_cap: int, budget: Optional[int] = None) -> DistanceEstimate:
    """
    Certified X and Z distances up to a weight cap

    Args:
        code: CSS code
        weight_cap: Largest weight enumerated per type
        budget: Optional override of settings.exhaustive_budget

    Returns:
        DistanceEstimate with exhaustive=True when both distances were found
    """
    if weight_cap < 1:
        raise InputError(f"weight cap must be positive, got {weight_cap}")
    if code.k_log == 0:
        app_logger.info(f"{code.describe()} has no logical operators")
        return DistanceEstimate(exhaustive=True, no_logicals=True)

    d_z, witness_z = min_logical_weight(code.bhx, code.bhz, weight_cap, budget)
    d_x, witness_x = min_logical_weight(code.bhz, code.bhx, weight_cap, budget)
    estimate = DistanceEstimate(
        d_x_est=d_x,
        d_z_est=d_z,
        lower_bound_x=d_x if d_x is not None else weight_cap + 1,
        lower_bound_z=d_z if d_z is not None else weight_cap + 1,
        witness_x=witness_x,
        witness_z=witness_z,
        exhaustive=d_x is not None and d_z is not None,
    )
    app_logger.debug(f"Exhaustive distance of {code.describe()} up to {weight_cap}: d_x={d_x}, d_z={d_z}")
    return estimate
