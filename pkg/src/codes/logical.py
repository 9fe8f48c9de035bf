"""Clustered logical operator basis of clustered-cyclic codes"""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel

from src.algebra import gf2
from src.algebra.gf2 import BitMatrix
from src.codes.cc import CcCode
from src.utils.errors import InputError
from src.utils.logger import app_logger

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class LogicalBasis:
    """X and Z representatives; index i (0-based here, 1-based in reports) lives on cluster i"""

    p: int
    x_reps: np.ndarray
    z_reps: np.ndarray
    cluster_of: Dict[int, Tuple[str, int]] = field(default_factory=dict)

    @property
    def k(self) -> int:
        return self.x_reps.shape[0]

    @property
    def n_phys(self) -> int:
        return self.x_reps.shape[1]

    def cluster_columns(self, index: int) -> List[int]:
        return list(range(index * self.p, (index + 1) * self.p))

    def coordinates(self, x: np.ndarray, z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        Logical coordinates of a normalizer element (x|z)

        Args:
            x: X part over the physical qubits
            z: Z part over the physical qubits

        Returns:
            (coefficients of X-bar_i, coefficients of Z-bar_i)
        """
        x = np.asarray(x, dtype=np.int64)
        z = np.asarray(z, dtype=np.int64)
        return (self.z_reps.astype(np.int64) @ x) & 1, (self.x_reps.astype(np.int64) @ z) & 1


class ClusterCheckReport(BaseModel):
    passed: bool
    violations: List[str]


def cluster_grid_position(code: CcCode, index: int) -> Tuple[str, int, int]:
    """Sector and (a, b) grid position of a 0-based logical index"""
    block = code.n_a * code.n_b
    if not 0 <= index < 2 * block:
        raise InputError(f"logical index {index + 1} outside 1..{2 * block}")
    sector = LEFT if index < block else RIGHT
    a, b = divmod(index % block, code.n_b)
    return sector, a, b


def clustered_basis(code: CcCode) -> LogicalBasis:
    """One weight-p representative of each type per cluster, in sector-major, a-major order"""
    k = code.n_clusters
    reps = np.zeros((k, code.n_phys), dtype=np.uint8)
    cluster_of = {}
    for i in range(k):
        reps[i, i * code.p:(i + 1) * code.p] = 1
        sector, _, _ = cluster_grid_position(code, i)
        cluster_of[i] = (sector, i % (k // 2) + 1)
    app_logger.debug(f"Clustered basis of {code.describe()}: {k} pairs of weight {code.p}")
    return LogicalBasis(p=code.p, x_reps=reps, z_reps=reps.copy(), cluster_of=cluster_of)


def verify_clustered(basis: LogicalBasis, code: CcCode) -> ClusterCheckReport:
    """Check cluster supports, pairing, disjointness and logical membership"""
    violations: List[str] = []
    p = code.p
    for kind, reps in (("X", basis.x_reps), ("Z", basis.z_reps)):
        for i, rep in enumerate(reps):
            support = np.flatnonzero(rep)
            if len(support) != p or support[0] % p or np.any(np.diff(support) != 1):
                violations.append(f"{kind}{i + 1} support is not one full cluster")
        overlaps = reps.astype(np.int64) @ reps.astype(np.int64).T
        if np.any(overlaps - np.diag(np.diag(overlaps))):
            violations.append(f"{kind} representatives overlap")

    overlap = basis.x_reps.astype(np.int64) @ basis.z_reps.astype(np.int64).T
    if not np.isin(overlap, (0, p)).all():
        violations.append("X/Z overlaps are not all-or-nothing on clusters")
    if not np.array_equal(overlap & 1, np.eye(basis.k, dtype=np.int64)):
        violations.append("anticommutation matrix is not the identity")

    x_reps = BitMatrix.from_array(basis.x_reps)
    z_reps = BitMatrix.from_array(basis.z_reps)
    if not (code.bhz @ x_reps.T).is_zero():
        violations.append("an X representative anticommutes with a Z check")
    if not (code.bhx @ z_reps.T).is_zero():
        violations.append("a Z representative anticommutes with an X check")
    if gf2.vstack(code.bhx, x_reps).rank() != code.rank_x + basis.k:
        violations.append("X representatives are dependent modulo X stabilizers")
    if gf2.vstack(code.bhz, z_reps).rank() != code.rank_z + basis.k:
        violations.append("Z representatives are dependent modulo Z stabilizers")

    for v in violations:
        app_logger.warning(f"Clustered basis violation: {v}")
    return ClusterCheckReport(passed=not violations, violations=violations)
