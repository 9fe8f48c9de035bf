import pytest

from src.utils.config import Settings
from src.utils.errors import InputError, SeedValidationError, VerificationError
from src.utils.helpers import canonical_json, chunk_list, digest_of, is_prime, load_json, save_json


def test_canonical_json_sorts_keys():
    assert canonical_json({"b": 1, "a": 2}) == canonical_json({"a": 2, "b": 1})
    assert canonical_json({"b": 1, "a": 2}).index('"a"') < canonical_json({"b": 1, "a": 2}).index('"b"')


def test_digest_ignores_key_order():
    assert digest_of({"x": [1, 2], "y": "z"}) == digest_of({"y": "z", "x": [1, 2]})
    assert digest_of({"x": 1}) != digest_of({"x": 2})
    assert len(digest_of({})) == 16


def test_json_round_trip(tmp_path):
    path = tmp_path / "report.json"
    save_json({"k": 8, "labels": ["[[24,8,3]]"]}, path)
    assert load_json(path) == {"k": 8, "labels": ["[[24,8,3]]"]}
    assert path.read_text().endswith("\n")


def test_chunk_list():
    assert chunk_list(list(range(5)), 2) == [[0, 1], [2, 3], [4]]


@pytest.mark.parametrize("n,expected", [(0, False), (1, False), (2, True), (3, True), (4, False), (17, True), (91, False)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_error_hierarchy():
    assert issubclass(SeedValidationError, InputError)
    assert issubclass(InputError, ValueError)
    err = VerificationError("H_X H_Z^T = 0", "row 3")
    assert str(err) == "H_X H_Z^T = 0: row 3"
    assert str(VerificationError("square")) == "square"


def test_settings_read_environment(monkeypatch):
    monkeypatch.setenv("CCSURGERY_DEFAULT_SEED", "7")
    monkeypatch.setenv("CCSURGERY_SHOW_PROGRESS", "false")
    fresh = Settings()
    assert fresh.default_seed == 7
    assert fresh.show_progress is False
    assert fresh.seeds_dir.name == "seeds"
