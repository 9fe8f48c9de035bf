"""Product connection codes, merged codes and merge accounting"""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from src.algebra import gf2
from src.algebra.gf2 import BitMatrix
from src.algebra.ring import RingMatrix, hstack, kron, vstack
from src.codes.cc import CcCode
from src.codes.css import CssCode
from src.utils.errors import InputError, VerificationError
from src.utils.logger import app_logger

BASES = ("Z", "X")


def check_basis(basis: str) -> str:
    basis = basis.upper()
    if basis not in BASES:
        raise InputError(f"merge basis must be Z or X, got {basis!r}")
    return basis


class ConnectionCode:
    """
    Homomorphisms (H_X', H_Z') gluing a data patch to its auxiliary copy

    Built from seeds (H_a', H_b') through the lifted-product formulas, or from
    printed block matrices. Seeds are kept when known.
    """

    def __init__(
        self,
        hx_prime: RingMatrix,
        hz_prime: RingMatrix,
        h_a_prime: Optional[RingMatrix] = None,
        h_b_prime: Optional[RingMatrix] = None,
        generic: bool = False,
    ):
        if hx_prime.l != hz_prime.l:
            raise InputError("connection matrices use different lift sizes")
        self.hx_prime = hx_prime
        self.hz_prime = hz_prime
        self.h_a_prime = h_a_prime
        self.h_b_prime = h_b_prime
        self.generic = generic
        if not generic and not (hx_prime.is_zero_one() and hz_prime.is_zero_one()):
            raise InputError("clustered-cyclic connections need 0/1 entries; pass generic=True for general products")

    @property
    def l(self) -> int:
        return self.hx_prime.l

    @classmethod
    def from_seeds(cls, h_a_prime: RingMatrix, h_b_prime: RingMatrix, generic: bool = False) -> "ConnectionCode":
        """H_X' = (H_a' x I | I x H_b'), H_Z' = (I x H_b'^* | H_a'^* x I)"""
        if h_a_prime.l != h_b_prime.l:
            raise InputError(f"connection seeds use different lift sizes {h_a_prime.l} and {h_b_prime.l}")
        l = h_a_prime.l
        m_a, n_a = h_a_prime.shape
        m_b, n_b = h_b_prime.shape
        hx = hstack(kron(h_a_prime, RingMatrix.identity(m_b, l)), kron(RingMatrix.identity(m_a, l), h_b_prime))
        hz = hstack(
            kron(RingMatrix.identity(n_a, l), h_b_prime.conj_transpose()),
            kron(h_a_prime.conj_transpose(), RingMatrix.identity(n_b, l)),
        )
        return cls(hx, hz, h_a_prime, h_b_prime, generic=generic)

    @classmethod
    def from_bits(cls, a_bits, b_bits, l: int) -> "ConnectionCode":
        return cls.from_seeds(RingMatrix.from_bits(a_bits, l), RingMatrix.from_bits(b_bits, l))

    @classmethod
    def zero_for(cls, code: CcCode) -> "ConnectionCode":
        return cls.from_seeds(
            RingMatrix.zeros(*code.h_a.shape, code.l),
            RingMatrix.zeros(*code.h_b.shape, code.l),
        )

    @classmethod
    def from_printed(
        cls,
        code: CcCode,
        hx_prime: Optional[np.ndarray] = None,
        hz_prime: Optional[np.ndarray] = None,
    ) -> "ConnectionCode":
        """
        Connection given by printed 0/1 block matrices

        Args:
            code: Data code fixing the block shapes
            hx_prime: Printed X-side matrix (n_a n_b x 2 n_a n_b), or None
            hz_prime: Printed Z-side matrix, or None

        Returns:
            Connection whose seeds reproduce every printed matrix. When both
            sides are printed and do not factor, they are kept verbatim.
        """
        if hx_prime is None and hz_prime is None:
            raise InputError("a printed connection needs at least one matrix")
        m_a, n_a = code.h_a.shape
        m_b, n_b = code.h_b.shape
        l = code.l
        printed = {}
        if hx_prime is not None:
            printed["X"] = np.asarray(hx_prime, dtype=np.uint8) & 1
            if printed["X"].shape != (m_a * m_b, n_a * m_b + m_a * n_b):
                raise InputError(f"printed H_X' has shape {printed['X'].shape}, expected {code.hx.shape}")
        if hz_prime is not None:
            printed["Z"] = np.asarray(hz_prime, dtype=np.uint8) & 1
            if printed["Z"].shape != (n_a * n_b, n_a * m_b + m_a * n_b):
                raise InputError(f"printed H_Z' has shape {printed['Z'].shape}, expected {code.hz.shape}")

        if "X" in printed:
            mat = printed["X"]
            a_bits = mat[::m_b, : n_a * m_b : m_b]
            b_bits = mat[:m_b, n_a * m_b : n_a * m_b + n_b]
        else:
            mat = printed["Z"]
            a_star = mat[::n_b, n_a * m_b :: n_b]
            b_star = mat[:n_b, :m_b]
            a_bits, b_bits = a_star.T, b_star.T

        conn = cls.from_bits(a_bits, b_bits, l)
        factored = all(
            np.array_equal(conn.side(side).to_bits(), mat_side) for side, mat_side in printed.items()
        )
        if factored:
            return conn
        if len(printed) == 2:
            app_logger.info("Printed connection does not factor; keeping both matrices verbatim")
            return cls(RingMatrix.from_bits(printed["X"], l), RingMatrix.from_bits(printed["Z"], l))
        side = next(iter(printed))
        raise InputError(f"printed H_{side}' is not of the form of a product connection")

    def side(self, basis: str) -> RingMatrix:
        return self.hz_prime if check_basis(basis) == "Z" else self.hx_prime

    def flip(self) -> "ConnectionCode":
        """Same connection with the roles of X and Z exchanged"""
        return ConnectionCode(self.hz_prime, self.hx_prime, generic=self.generic)

    def is_zero(self) -> bool:
        return self.hx_prime.is_zero() and self.hz_prime.is_zero()

    def seed_bits(self) -> Tuple[List[List[int]], List[List[int]]]:
        if self.h_a_prime is None or self.h_b_prime is None:
            raise InputError("connection was not built from seeds")
        return self.h_a_prime.to_bits().tolist(), self.h_b_prime.to_bits().tolist()

    def __repr__(self) -> str:
        if self.h_a_prime is not None:
            return f"ConnectionCode(H_a'={self.h_a_prime.to_strings()}, H_b'={self.h_b_prime.to_strings()})"
        return f"ConnectionCode(printed, {self.hz_prime.shape})"


class MergedCode(CssCode):
    """Merged CSS code of a data code glued to its copy by a connection"""

    def __init__(self, parent: CssCode, conn: ConnectionCode, basis: str, hx: RingMatrix, hz: RingMatrix):
        self.parent = parent
        self.conn = conn
        self.basis = basis
        label = f"{parent.describe()} merged ({basis})"
        super().__init__(hx, hz, label=label)


def _ring_zeros_like(m: RingMatrix) -> RingMatrix:
    return RingMatrix.zeros(m.rows, m.cols, m.l)


def _assemble(hx: RingMatrix, hz: RingMatrix, hx_p: RingMatrix, hz_p: RingMatrix) -> Tuple[RingMatrix, RingMatrix]:
    merged_x = vstack(hstack(hx, hx_p), hstack(_ring_zeros_like(hx), hx))
    merged_z = vstack(hstack(hz, _ring_zeros_like(hz)), hstack(hz_p, hz))
    return merged_x, merged_z


def commuting_square_holds(code: CssCode, conn: ConnectionCode) -> bool:
    """H_X H_Z'^* = H_X' H_Z^* after binary lift"""
    return (code.bhx @ conn.hz_prime.binary_lift().T) == (conn.hx_prime.binary_lift() @ code.bhz.T)


def merge_complex(code: CssCode, conn: ConnectionCode, basis: str = "Z") -> MergedCode:
    """
    Assemble the merged code of a product surgery

    Args:
        code: Data code
        conn: Connection code with the data code's block shapes
        basis: "Z" merges Z logicals; "X" uses the dual construction

    Returns:
        MergedCode; for Z, H~_X = [[H_X, H_X'], [0, H_X]] and H~_Z = [[H_Z, 0], [H_Z', H_Z]]
    """
    basis = check_basis(basis)
    if conn.l != code.l:
        raise InputError(f"connection lift size {conn.l} does not match the code's {code.l}")
    if conn.hx_prime.shape != code.hx.shape or conn.hz_prime.shape != code.hz.shape:
        raise InputError(
            f"connection shapes {conn.hx_prime.shape}/{conn.hz_prime.shape} "
            f"do not match the code's {code.hx.shape}/{code.hz.shape}"
        )
    if not commuting_square_holds(code, conn):
        app_logger.error(f"Commuting square fails for {conn!r}")
        raise VerificationError("H_X H_Z'^* = H_X' H_Z^*", f"fails for {conn!r}")

    if basis == "Z":
        hx, hz = _assemble(code.hx, code.hz, conn.hx_prime, conn.hz_prime)
    else:
        # dual construction: merge in the flipped code, then exchange back
        flipped_x, flipped_z = _assemble(code.hz, code.hx, conn.hz_prime, conn.hx_prime)
        hx, hz = flipped_z, flipped_x
    return MergedCode(code, conn, basis, hx, hz)


def count_merges(code: CssCode, conn: ConnectionCode, basis: str = "Z") -> int:
    """
    Number of independent merges M = dim B(H_Z'^*)[ker B(H_Z^*)]

    For clustered-cyclic codes with 0/1 connections the value is cross-checked
    against the F2 rank of the 0/1 matrix H_Z'.
    """
    basis = check_basis(basis)
    checks = code.bhz if basis == "Z" else code.bhx
    prime = conn.side(basis).binary_lift()
    left_kernel = gf2.left_kernel_basis(checks)
    merges = (left_kernel @ prime).rank() if left_kernel.rows else 0

    if isinstance(code, CcCode) and not conn.generic:
        by_rank = BitMatrix.from_array(conn.side(basis).to_bits()).rank()
        if by_rank != merges:
            app_logger.error(f"Merge count {merges} disagrees with rank {by_rank} for {conn!r}")
            raise VerificationError("M = rank H_Z'", f"image formula gives {merges}, rank gives {by_rank}")
    return merges


class MergeTarget(BaseModel):
    """Logical indices (1-based) whose joint operator one connection row measures"""

    row: int
    logicals: List[int]


class MergeReport(BaseModel):
    basis: str
    k: int
    M: int
    k_tilde: int
    r_tilde: int
    targets: List[MergeTarget]
    maximally_parallel: bool


def merge_targets(code: CcCode, conn: ConnectionCode, basis: str = "Z") -> List[MergeTarget]:
    """
    Merged logicals per connection row

    The sum of the p lifted rows of (H_Z' | H_Z) for ring row r equals the joint
    support of the targeted logicals on the data patch and vanishes on the copy.
    """
    basis = check_basis(basis)
    if conn.generic:
        raise InputError("merge targets are defined for 0/1 connections only")
    p = code.p
    prime_ring = conn.side(basis)
    prime_bits = prime_ring.to_bits()
    prime = prime_ring.binary_lift().to_array()
    checks = (code.bhz if basis == "Z" else code.bhx).to_array()

    targets = []
    for r in range(prime_ring.rows):
        clusters = [int(c) for c in np.flatnonzero(prime_bits[r])]
        if not clusters:
            continue
        rows = slice(r * p, (r + 1) * p)
        data_sum = prime[rows].sum(axis=0) & 1
        copy_sum = checks[rows].sum(axis=0) & 1
        expected = np.zeros(code.n_phys, dtype=np.int64)
        for c in clusters:
            expected[c * p:(c + 1) * p] = 1
        if not np.array_equal(data_sum, expected) or copy_sum.any():
            raise VerificationError(
                "chi times a connection row is the joint logical support",
                f"row {r + 1} of H_{basis}' fails",
            )
        targets.append(MergeTarget(row=r + 1, logicals=[c + 1 for c in clusters]))
    return targets


def merged_kernel_dimension(a: BitMatrix, b: BitMatrix) -> int:
    """dim ker [[A, B], [0, A]] = 2 dim ker A + rank A - rank [A | B K], K a kernel basis of A"""
    kernel = gf2.kernel_basis(a)
    rank_a = a.rank()
    nullity = a.cols - rank_a
    if kernel.rows == 0:
        return 2 * nullity
    return 2 * nullity + rank_a - gf2.hstack(a, b @ kernel.T).rank()


def merged_counts(code: CcCode, conn: ConnectionCode, basis: str = "Z") -> MergeReport:
    """
    Merge count, merged logical count and gauge count of a CC surgery

    Args:
        code: Clustered-cyclic data code
        conn: 0/1 connection
        basis: Type of the merged logicals

    Returns:
        MergeReport with k~ = k - M cross-checked through the block-kernel identity
    """
    basis = check_basis(basis)
    other = "X" if basis == "Z" else "Z"
    k = code.k_log
    merges = count_merges(code, conn, basis)
    gauge_merges = count_merges(code, conn, other)
    k_tilde = k - merges
    r_tilde = k - gauge_merges

    checks = code.bhz if basis == "Z" else code.bhx
    prime = conn.side(basis).binary_lift()
    merged_left_kernel = merged_kernel_dimension(checks.T, prime.T)
    data_left_kernel = checks.rows - checks.rank()
    by_kernels = k + merged_left_kernel - 2 * data_left_kernel
    if by_kernels != k_tilde:
        app_logger.error(f"k~ = {k_tilde} but the block-kernel identity gives {by_kernels}")
        raise VerificationError("k~ = k - M", f"block-kernel identity gives {by_kernels}, merge count gives {k_tilde}")

    report = MergeReport(
        basis=basis,
        k=k,
        M=merges,
        k_tilde=k_tilde,
        r_tilde=r_tilde,
        targets=merge_targets(code, conn, basis),
        maximally_parallel=2 * merges == k,
    )
    app_logger.debug(f"{code.describe()} with {conn!r}: M={merges}, k~={k_tilde}, r~={r_tilde}")
    return report


def all_connections(code: CcCode) -> List[ConnectionCode]:
    """Every 0/1 connection for a code with 2x2 seeds, H_a' bits low, H_b' bits high"""
    if code.h_a.shape != (2, 2) or code.h_b.shape != (2, 2):
        raise InputError("the exhaustive connection family is defined for 2x2 seeds")
    out = []
    for index in range(256):
        a_bits = np.array([(index >> i) & 1 for i in range(4)], dtype=np.uint8).reshape(2, 2)
        b_bits = np.array([(index >> (4 + i)) & 1 for i in range(4)], dtype=np.uint8).reshape(2, 2)
        out.append(ConnectionCode.from_bits(a_bits, b_bits, code.l))
    return out

