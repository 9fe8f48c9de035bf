"""Connection documents read from JSON"""

from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, ValidationError, field_validator, model_validator

from src.algebra.ring import RingMatrix
from src.codes.cc import CcCode
from src.codes.seeds import resolve_document
from src.surgery.connection import ConnectionCode, check_basis
from src.utils.errors import InputError
from src.utils.helpers import load_json


class ConnectionDocument(BaseModel):
    """
    A connection given by seeds (H_a', H_b') or by a printed 0/1 block matrix

    Seeds are polynomial strings; printed matrices are 0/1 rows over ring
    coordinates, one per side.
    """

    basis: str = "Z"
    H_a_prime: Optional[List[List[str]]] = None
    H_b_prime: Optional[List[List[str]]] = None
    hx_prime: Optional[List[List[int]]] = None
    hz_prime: Optional[List[List[int]]] = None

    @field_validator("basis")
    @classmethod
    def _known_basis(cls, value: str) -> str:
        return check_basis(value)

    @model_validator(mode="after")
    def _one_form(self) -> "ConnectionDocument":
        seeds = self.H_a_prime is not None or self.H_b_prime is not None
        printed = self.hx_prime is not None or self.hz_prime is not None
        if seeds == printed:
            raise ValueError("give either H_a_prime and H_b_prime, or hx_prime / hz_prime")
        if seeds and (self.H_a_prime is None or self.H_b_prime is None):
            raise ValueError("both H_a_prime and H_b_prime are required")
        return self

    def build(self, code: CcCode) -> ConnectionCode:
        if self.H_a_prime is not None:
            return ConnectionCode.from_seeds(
                RingMatrix.from_strings(self.H_a_prime, code.l),
                RingMatrix.from_strings(self.H_b_prime, code.l),
            )
        return ConnectionCode.from_printed(code, hx_prime=self.hx_prime, hz_prime=self.hz_prime)


def load_connection(ref: Union[str, Path]) -> ConnectionDocument:
    path = resolve_document(ref, directory=Path.cwd())
    try:
        return ConnectionDocument.model_validate(load_json(path))
    except (ValidationError, ValueError) as e:
        raise InputError(f"malformed connection document {path}: {e}") from e
