"""Structured, schema-versioned command reports"""

import sys
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, Field

from src import __version__
from src.utils.config import settings
from src.utils.helpers import canonical_json, digest_of, save_json


class Report(BaseModel):
    """
    One command's output

    Reruns with the same inputs and seed serialize byte-identically: no
    timestamps, sorted keys, and every randomized command records its seed.
    """

    schema_version: str = Field(default_factory=lambda: settings.report_schema_version)
    command: str
    inputs: Dict[str, Any]
    inputs_digest: str
    rng_seed: Optional[int] = None
    version: str = __version__
    passed: bool = True
    error: Optional[str] = None
    results: Dict[str, Any] = Field(default_factory=dict)


def _plain(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Path):
        return str(value)
    return value


def build_report(
    command: str,
    inputs: Dict[str, Any],
    results: Optional[Dict[str, Any]] = None,
    rng_seed: Optional[int] = None,
    passed: bool = True,
    error: Optional[str] = None,
) -> Report:
    inputs = _plain(inputs)
    return Report(
        command=command,
        inputs=inputs,
        inputs_digest=digest_of(inputs),
        rng_seed=rng_seed,
        passed=passed,
        error=error,
        results=_plain(results or {}),
    )


def emit(report: Report, out: Optional[Union[str, Path]] = None) -> str:
    """Write the report to a file, or to stdout when no path is given"""
    data = report.model_dump(mode="json")
    if out is not None:
        save_json(data, out)
    else:
        sys.stdout.write(canonical_json(data) + "\n")
    return canonical_json(data)
