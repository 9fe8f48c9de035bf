"""Classical seed codes, CSS codes and the lifted / hypergraph product constructions"""

from functools import cached_property
from typing import Optional, Tuple

from src.algebra import gf2
from src.algebra.gf2 import BitMatrix
from src.algebra.ring import RingMatrix, hstack, kron
from src.utils.errors import InputError, VerificationError
from src.utils.logger import app_logger


class ClassicalCode:
    """A classical code given by its parity-check matrix over the ring"""

    def __init__(self, h: RingMatrix):
        self.h = h

    @cached_property
    def binary(self) -> BitMatrix:
        return self.h.binary_lift()

    @property
    def length(self) -> int:
        return self.binary.cols

    def kernel(self) -> BitMatrix:
        return gf2.kernel_basis(self.binary)

    def image(self) -> BitMatrix:
        """Column space of the lifted check matrix, as rows"""
        return self.binary.T.row_basis()

    @property
    def dimension(self) -> int:
        return self.length - self.binary.rank()


class CssCode:
    """CSS code with X checks `hx` and Z checks `hz` over F2[x]/(x^l + 1)"""

    def __init__(self, hx: RingMatrix, hz: RingMatrix, label: Optional[str] = None):
        if hx.l != hz.l:
            raise InputError(f"X and Z checks use different lift sizes {hx.l} and {hz.l}")
        if hx.cols != hz.cols:
            raise InputError(f"X and Z checks act on {hx.cols} and {hz.cols} ring coordinates")
        self.hx = hx
        self.hz = hz
        self.label = label
        if not (self.bhx @ self.bhz.T).is_zero():
            raise VerificationError("CSS condition H_X H_Z^* = 0", f"fails for {self.describe()}")

    @property
    def l(self) -> int:
        return self.hx.l

    @cached_property
    def bhx(self) -> BitMatrix:
        return self.hx.binary_lift()

    @cached_property
    def bhz(self) -> BitMatrix:
        return self.hz.binary_lift()

    @property
    def n_phys(self) -> int:
        return self.bhx.cols

    @cached_property
    def rank_x(self) -> int:
        return self.bhx.rank()

    @cached_property
    def rank_z(self) -> int:
        return self.bhz.rank()

    @property
    def k_log(self) -> int:
        return self.n_phys - self.rank_x - self.rank_z

    def max_check_weight(self) -> int:
        weights = [int(w) for m in (self.bhx, self.bhz) if m.rows for w in m.row_weights()]
        return max(weights, default=0)

    def dual(self) -> "CssCode":
        """Same code with the roles of X and Z exchanged"""
        return CssCode(self.hz, self.hx, label=f"{self.label}^dual" if self.label else None)

    def describe(self) -> str:
        return self.label or f"CSS code on {self.hx.cols * self.l} qubits"

    def __repr__(self) -> str:
        return f"CssCode({self.describe()}, N={self.n_phys}, k={self.k_log})"


def lifted_product(h_a: RingMatrix, h_b: RingMatrix, label: Optional[str] = None) -> CssCode:
    """
    Lifted product of two seed matrices

    Args:
        h_a: m_a x n_a seed over R
        h_b: m_b x n_b seed over the same R
        label: Optional name carried into reports

    Returns:
        CSS code with H_X = (H_a x I | I x H_b) and H_Z = (I x H_b^* | H_a^* x I)
    """
    if h_a.l != h_b.l:
        raise InputError(f"seeds use different lift sizes {h_a.l} and {h_b.l}")
    l = h_a.l
    m_a, n_a = h_a.shape
    m_b, n_b = h_b.shape
    hx = hstack(kron(h_a, RingMatrix.identity(m_b, l)), kron(RingMatrix.identity(m_a, l), h_b))
    hz = hstack(
        kron(RingMatrix.identity(n_a, l), h_b.conj_transpose()),
        kron(h_a.conj_transpose(), RingMatrix.identity(n_b, l)),
    )
    code = CssCode(hx, hz, label=label)
    app_logger.debug(f"Built lifted product {code!r}")
    return code


def hypergraph_product(h_a: BitMatrix, h_b: BitMatrix, label: Optional[str] = None) -> CssCode:
    """
    Hypergraph product of two classical check matrices

    H_X = (H_a x I_{n_b} | I_{m_a} x H_b^T) and H_Z = (I_{n_a} x H_b | H_a^T x I_{m_b}),
    the l=1 lifted product of H_a with H_b^T, so N = n_a n_b + m_a m_b.
    """
    return lifted_product(RingMatrix.from_bits(h_a.to_array(), 1), RingMatrix.from_bits(h_b.T.to_array(), 1), label)


def css_params(code: CssCode) -> Tuple[int, int, int]:
    """(N, k, largest check weight)"""
    return code.n_phys, code.k_log, code.max_check_weight()
