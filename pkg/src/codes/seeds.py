"""Seed documents: the polynomial seed matrices of one CC code, read from JSON"""

from pathlib import Path
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ValidationError, field_validator

from src.algebra.ring import RingMatrix
from src.codes.cc import CcCode, cc_code
from src.utils.config import settings
from src.utils.errors import InputError
from src.utils.helpers import is_prime, load_json
from src.utils.logger import app_logger


class SeedDocument(BaseModel):
    """Seed matrices of one clustered-cyclic code as polynomial strings"""

    label: str
    p: int
    d: Optional[int] = None
    H_a: List[List[str]]
    H_b: List[List[str]]

    @field_validator("p")
    @classmethod
    def _prime_lift(cls, value: int) -> int:
        if not is_prime(value):
            raise ValueError(f"lift size must be prime, got {value}")
        return value

    def ring_matrices(self) -> Tuple[RingMatrix, RingMatrix]:
        return RingMatrix.from_strings(self.H_a, self.p), RingMatrix.from_strings(self.H_b, self.p)

    def build(self) -> CcCode:
        h_a, h_b = self.ring_matrices()
        return cc_code(h_a, h_b, label=self.label)


def resolve_document(ref: Union[str, Path], directory: Optional[Path] = None) -> Path:
    """
    Find a document by path, by path without ".json", or by name in a directory

    Args:
        ref: "data/seeds/cc_24_8_3", "cc_24_8_3.json" or "[[24,8,3]]"
        directory: Where bare names are looked up; the shipped seeds by default

    Returns:
        Existing file path
    """
    directory = directory or settings.seeds_dir
    text = str(ref)
    candidates = [Path(text), Path(f"{text}.json"), directory / text, directory / f"{text}.json"]
    for candidate in candidates:
        if candidate.is_file():
            return candidate
    for path in sorted(directory.glob("*.json")):
        try:
            if load_json(path).get("label") == text:
                return path
        except (OSError, ValueError, AttributeError):
            continue
    raise InputError(f"no document found for {text!r}")


def load_seed(ref: Union[str, Path]) -> SeedDocument:
    path = resolve_document(ref)
    try:
        return SeedDocument.model_validate(load_json(path))
    except (ValidationError, ValueError) as e:
        raise InputError(f"malformed seed document {path}: {e}") from e


def list_seeds() -> List[Tuple[str, SeedDocument]]:
    """Every shipped seed document with its file stem"""
    out = []
    for path in sorted(settings.seeds_dir.glob("*.json")):
        out.append((path.stem, SeedDocument.model_validate(load_json(path))))
    app_logger.debug(f"Found {len(out)} seed documents under {settings.seeds_dir}")
    return out
