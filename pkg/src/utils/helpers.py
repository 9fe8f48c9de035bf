"""Helper utility functions"""

import hashlib
import json
from pathlib import Path
from typing import Any, List, Union


def generate_id(text: str) -> str:
    """Generate a short digest from text using SHA256"""
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def canonical_json(data: Any) -> str:
    """Serialize with sorted keys and fixed separators so equal data gives equal text"""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)


def digest_of(data: Any) -> str:
    """Digest of the canonical JSON form of data"""
    return generate_id(json.dumps(data, sort_keys=True, separators=(",", ":")))


def save_json(data: Any, filepath: Union[str, Path]):
    """Save data to JSON file"""
    with open(filepath, "w", encoding="utf-8") as f:
        f.write(canonical_json(data))
        f.write("\n")


def load_json(filepath: Union[str, Path]) -> Any:
    """Load data from JSON file"""
    with open(filepath, "r", encoding="utf-8") as f:
        return json.load(f)


def chunk_list(items: List[Any], chunk_size: int) -> List[List[Any]]:
    """Split a list into chunks of specified size"""
    return [items[i:i + chunk_size] for i in range(0, len(items), chunk_size)]


def is_prime(n: int) -> bool:
    """Trial-division primality test for lift sizes"""
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True
