"""Clustered-cyclic codes: seed validation, construction and parameters"""

from typing import List, Optional

from pydantic import BaseModel

from src.algebra import gf2
from src.algebra.ring import EntryClass, RingMatrix, chi, classify_entry, parse_poly
from src.codes.css import ClassicalCode, CssCode, lifted_product
from src.utils.errors import InputError, SeedValidationError, VerificationError
from src.utils.helpers import is_prime
from src.utils.logger import app_logger


class SeedValidationReport(BaseModel):
    """Outcome of the clustered-cyclic seed checks"""

    square: bool
    entries_ok: bool
    uniform_row_weight: bool
    uniform_col_weight: bool
    full_rank: bool
    row_weight: Optional[int] = None
    col_weight: Optional[int] = None
    kernel_dim: int = 0
    cyclic_placement_warning: Optional[str] = None

    @property
    def passed(self) -> bool:
        return all((self.square, self.entries_ok, self.uniform_row_weight, self.uniform_col_weight, self.full_rank))

    def failures(self) -> List[str]:
        names = ("square", "entries_ok", "uniform_row_weight", "uniform_col_weight", "full_rank")
        return [name for name in names if not getattr(self, name)]


class SeedAlgebraReport(BaseModel):
    """Kernel and image of a seed against the lifts of diag(chi) and diag(1+x)"""

    kernel_is_chi_span: bool
    image_is_one_plus_x_span: bool
    conj_kernel_is_chi_span: bool
    conj_image_is_one_plus_x_span: bool

    @property
    def passed(self) -> bool:
        return all(self.model_dump().values())


def _support_pattern(h: RingMatrix) -> List[tuple]:
    return [tuple(int(not e.is_zero()) for e in row) for row in h.entries]


def validate_cc_seed(h: RingMatrix) -> SeedValidationReport:
    """
    Run the hard and soft checks on a clustered-cyclic seed

    Args:
        h: Candidate seed over F2[x]/(x^p + 1)

    Returns:
        Report; hard failures are flags, cyclic placement only warns
    """
    square = h.rows == h.cols
    entries_ok = all(classify_entry(e) in (EntryClass.ZERO, EntryClass.BINOMIAL) for row in h.entries for e in row)
    pattern = _support_pattern(h)
    row_counts = {sum(r) for r in pattern}
    col_counts = {sum(r[j] for r in pattern) for j in range(h.cols)}
    uniform_rows = len(row_counts) == 1 and 0 not in row_counts
    uniform_cols = len(col_counts) == 1 and 0 not in col_counts
    kernel_dim = h.cols * h.l - h.binary_lift().rank()

    warning = None
    if square and pattern:
        shifts = {tuple(pattern[0][(j - s) % h.cols] for j in range(h.cols)) for s in range(h.cols)}
        if not all(r in shifts for r in pattern):
            warning = "nonzero entries are not cyclic shifts of the first row pattern"
            app_logger.warning(f"Seed placement: {warning}")

    return SeedValidationReport(
        square=square,
        entries_ok=entries_ok,
        uniform_row_weight=uniform_rows,
        uniform_col_weight=uniform_cols,
        full_rank=kernel_dim == h.rows,
        row_weight=next(iter(row_counts)) if uniform_rows else None,
        col_weight=next(iter(col_counts)) if uniform_cols else None,
        kernel_dim=kernel_dim,
        cyclic_placement_warning=warning,
    )


def seed_kernel_image_report(h: RingMatrix) -> SeedAlgebraReport:
    """Compare kernel and image of h and h^* with the lifts of diag(chi) and diag(1+x)"""
    n = h.rows
    chi_span = RingMatrix.diagonal(chi(h.l), n).binary_lift()
    step = RingMatrix.diagonal(parse_poly("1+x", h.l), n).binary_lift()

    def check(m: RingMatrix):
        seed = ClassicalCode(m)
        return gf2.same_row_space(seed.kernel(), chi_span), gf2.same_row_space(seed.image(), step)

    kernel_ok, image_ok = check(h)
    conj_kernel_ok, conj_image_ok = check(h.conj_transpose())
    return SeedAlgebraReport(
        kernel_is_chi_span=kernel_ok,
        image_is_one_plus_x_span=image_ok,
        conj_kernel_is_chi_span=conj_kernel_ok,
        conj_image_is_one_plus_x_span=conj_image_ok,
    )


class CcCode(CssCode):
    """Lifted product of two clustered-cyclic seeds"""

    def __init__(self, h_a: RingMatrix, h_b: RingMatrix, label: Optional[str] = None, w_a: int = 0, w_b: int = 0):
        base = lifted_product(h_a, h_b)
        super().__init__(base.hx, base.hz, label=label)
        self.h_a = h_a
        self.h_b = h_b
        self.w_a = w_a
        self.w_b = w_b

    @property
    def p(self) -> int:
        return self.l

    @property
    def n_a(self) -> int:
        return self.h_a.rows

    @property
    def n_b(self) -> int:
        return self.h_b.rows

    @property
    def n_clusters(self) -> int:
        return 2 * self.n_a * self.n_b

    @property
    def check_weight(self) -> int:
        return 2 * (self.w_a + self.w_b)

    def expected_params(self):
        return 2 * self.p * self.n_a * self.n_b, 2 * self.n_a * self.n_b

    def describe(self) -> str:
        return self.label or f"[[{self.n_phys},{2 * self.n_a * self.n_b}]] CC code over p={self.p}"


def cc_code(h_a: RingMatrix, h_b: RingMatrix, label: Optional[str] = None) -> CcCode:
    """
    Build a clustered-cyclic code after validating both seeds

    Args:
        h_a: First seed
        h_b: Second seed
        label: Name such as "[[24,8,3]]"

    Returns:
        CcCode whose N, k and check weight were checked against the closed forms
    """
    if h_a.l != h_b.l:
        raise InputError(f"seeds use different lift sizes {h_a.l} and {h_b.l}")
    if not is_prime(h_a.l):
        raise InputError(f"clustered-cyclic codes need a prime lift, got {h_a.l}")
    reports = {"H_a": validate_cc_seed(h_a), "H_b": validate_cc_seed(h_b)}
    for name, report in reports.items():
        if not report.passed:
            app_logger.error(f"Seed {name} failed: {report.failures()}")
            raise SeedValidationError(f"seed {name} failed {', '.join(report.failures())}", report)

    code = CcCode(h_a, h_b, label=label, w_a=reports["H_a"].row_weight, w_b=reports["H_b"].row_weight)
    n_expected, k_expected = code.expected_params()
    if code.n_phys != n_expected or code.k_log != k_expected:
        raise VerificationError(
            "N = 2 p n_a n_b and k = 2 n_a n_b",
            f"got N={code.n_phys}, k={code.k_log}, expected {n_expected}, {k_expected}",
        )
    if code.max_check_weight() != code.check_weight:
        raise VerificationError("W = 2(w_a + w_b)", f"got {code.max_check_weight()}, expected {code.check_weight}")
    app_logger.info(f"Built {code.describe()}: N={code.n_phys}, k={code.k_log}, W={code.check_weight}")
    return code
