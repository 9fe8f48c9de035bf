"""Connections that merge one chosen pair of clustered logicals"""

from typing import List, Tuple

import numpy as np

from src.algebra import gf2
from src.algebra.gf2 import BitMatrix
from src.codes.cc import CcCode
from src.codes.logical import LEFT, RIGHT
from src.surgery.connection import ConnectionCode, merge_targets
from src.utils.errors import IncompatiblePairError, InputError
from src.utils.logger import app_logger


def _grid_position(index: int, grid: Tuple[int, int]) -> Tuple[str, int, int]:
    n_a, n_b = grid
    block = n_a * n_b
    if not 1 <= index <= 2 * block:
        raise InputError(f"logical index {index} outside 1..{2 * block}")
    zero_based = index - 1
    sector = LEFT if zero_based < block else RIGHT
    a, b = divmod(zero_based % block, n_b)
    return sector, a, b


def is_compatible(alpha: int, beta: int, grid: Tuple[int, int]) -> bool:
    """
    Whether two 1-based logical indices can share one product connection

    Args:
        alpha: First logical index
        beta: Second logical index
        grid: (n_a, n_b) cluster grid of one sector

    Returns:
        True for different sectors, or the same sector and the same grid row or column
    """
    if alpha == beta:
        return False
    s1, a1, b1 = _grid_position(alpha, grid)
    s2, a2, b2 = _grid_position(beta, grid)
    if s1 != s2:
        return True
    return a1 == a2 or b1 == b2


def pair_connection(code: CcCode, alpha: int, beta: int) -> ConnectionCode:
    """
    Build a 0/1 connection whose merges contain the joint Z measurement of alpha and beta

    The pair is realized by one connection row or by the sum of two rows. Other
    rows of the same connection may measure further logicals; those side merges
    are logged.
    """
    grid = (code.n_a, code.n_b)
    if not is_compatible(alpha, beta, grid):
        raise IncompatiblePairError(
            f"logicals {alpha} and {beta} sit in one sector without sharing a grid row or column"
        )
    (s1, a1, b1), (s2, a2, b2) = _grid_position(alpha, grid), _grid_position(beta, grid)
    if s1 == RIGHT and s2 == LEFT:
        (s1, a1, b1), (s2, a2, b2) = (s2, a2, b2), (s1, a1, b1)

    # A = H_a'^*, B = H_b'^*; row (i_a, i_b) of H_Z' meets left (i_a, j) when B[i_b, j] = 1
    # and right (j, i_b) when A[i_a, j] = 1
    a_star = np.zeros((code.n_a, code.n_a), dtype=np.uint8)
    b_star = np.zeros((code.n_b, code.n_b), dtype=np.uint8)
    if s1 != s2:
        b_star[b2, b1] = 1
        a_star[a1, a2] = 1
    elif s1 == LEFT and a1 == a2:
        b_star[0, b1] = b_star[0, b2] = 1
    elif s1 == LEFT:
        b_star[0, b1] = 1
        a_star[a1, 0] = a_star[a2, 0] = 1
    elif a1 == a2:
        a_star[0, a1] = 1
        b_star[b1, 0] = b_star[b2, 0] = 1
    else:
        a_star[0, a1] = a_star[0, a2] = 1

    conn = ConnectionCode.from_bits(a_star.T, b_star.T, code.l)
    targets = merge_targets(code, conn, "Z")
    indicator = np.zeros(code.n_clusters, dtype=np.uint8)
    indicator[[alpha - 1, beta - 1]] = 1
    rows = BitMatrix.from_array(conn.hz_prime.to_bits())
    if not gf2.row_space_contains(rows, indicator):
        raise IncompatiblePairError(f"no combination of connection rows measures Z{alpha} Z{beta}")

    side: List[List[int]] = [t.logicals for t in targets if set(t.logicals) - {alpha, beta}]
    if side:
        app_logger.info(f"Connection for ({alpha}, {beta}) also merges {side}")
    app_logger.debug(f"Pair ({alpha}, {beta}) -> {conn!r}")
    return conn
