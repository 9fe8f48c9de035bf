"""Stage-by-stage check matrices of one product surgery round"""

from dataclasses import dataclass
from typing import List

from src.algebra import gf2
from src.algebra.gf2 import BitMatrix
from src.codes.css import CssCode
from src.surgery.connection import ConnectionCode, check_basis, merge_complex
from src.utils.errors import VerificationError
from src.utils.logger import app_logger


@dataclass(frozen=True)
class SurgeryStage:
    label: str
    hx: BitMatrix
    hz: BitMatrix

    def is_abelian(self) -> bool:
        return (self.hx @ self.hz.T).is_zero()


@dataclass(frozen=True)
class SurgeryTrace:
    stages: List[SurgeryStage]
    d_rounds: int
    split_basis: str
    basis: str


def _z_stages(code: CssCode, conn: ConnectionCode) -> List[SurgeryStage]:
    bhx, bhz = code.bhx, code.bhz
    n = code.n_phys
    merged = merge_complex(code, conn, "Z")

    prepared_x = gf2.block2x2(bhx, None, None, BitMatrix.identity(n))
    prepared_z = gf2.hstack(bhz, BitMatrix.zeros(bhz.rows, n))

    gauge = gf2.cokernel_matrix(bhz)
    if not gf2.same_row_space(gf2.kernel_basis(gauge), bhz):
        raise VerificationError("ker G = im B(H_Z^*)", "auxiliary X checks do not match the Z check space")
    hx_prime = conn.hx_prime.binary_lift()
    measured_x = gf2.vstack(gf2.hstack(bhx, hx_prime), gf2.hstack(BitMatrix.zeros(gauge.rows, n), gauge))

    return [
        SurgeryStage("prepare auxiliary patch", prepared_x, prepared_z),
        SurgeryStage("measure merged Z checks", measured_x, merged.bhz),
        SurgeryStage("merged code", merged.bhx, merged.bhz),
    ]


def surgery_trace(code: CssCode, conn: ConnectionCode, basis: str = "Z", d_rounds: int = 1) -> SurgeryTrace:
    """
    Check matrices of each stage of a product surgery

    Args:
        code: Data code
        conn: Connection code
        basis: Type of the merged logicals
        d_rounds: Syndrome rounds kept on the merged code

    Returns:
        SurgeryTrace with the prepare, measure and merged stages; the auxiliary
        patch is split off by a transversal measurement in the opposite basis
    """
    basis = check_basis(basis)
    if basis == "Z":
        stages = _z_stages(code, conn)
    else:
        stages = [SurgeryStage(s.label, s.hz, s.hx) for s in _z_stages(code.dual(), conn.flip())]

    for stage in stages:
        if not stage.is_abelian():
            app_logger.error(f"Stage '{stage.label}' is not abelian")
            raise VerificationError("H_X H_Z^T = 0 at every stage", f"fails at '{stage.label}'")
    split = "X" if basis == "Z" else "Z"
    app_logger.debug(f"Surgery trace for {code.describe()}: {len(stages)} stages, split in {split}")
    return SurgeryTrace(stages=stages, d_rounds=d_rounds, split_basis=split, basis=basis)
