import importlib
import inspect
import re

import numpy as np
import pytest

from src.algebra import gf2
from src.algebra.gf2 import BitMatrix
from src.algebra.ring import RingMatrix
from src.codes.cc import cc_code, seed_kernel_image_report, validate_cc_seed
from src.codes.css import CssCode, css_params, hypergraph_product, lifted_product
from src.codes.logical import LEFT, RIGHT, cluster_grid_position, clustered_basis, verify_clustered
from src.codes.seeds import SeedDocument, list_seeds, load_seed
from src.utils.errors import InputError, SeedValidationError, VerificationError

SEEDS = list_seeds()


def _label_params(label):
    n, k = re.match(r"\[\[(\d+),(\d+)", label).groups()
    return int(n), int(k)


@pytest.mark.parametrize("name,doc", SEEDS, ids=[name for name, _ in SEEDS])
def test_seed_documents_build_with_labeled_parameters(name, doc):
    code = doc.build()
    n, k = _label_params(doc.label)
    assert (code.n_phys, code.k_log) == (n, k)
    assert code.expected_params() == (n, k)
    assert code.max_check_weight() == code.check_weight


def test_small_example_parameters(code_12):
    assert css_params(code_12) == (12, 4, 6)
    assert code_12.n_clusters == 4


@pytest.mark.parametrize("ref,expected", [("cc_24_8_3", (24, 8, 8)), ("cc_136_8_14", (136, 8, 8))])
def test_params_of_case_study_codes(ref, expected):
    assert css_params(load_seed(ref).build()) == expected


def test_seed_validation_passes_for_case_study(code_24):
    report = validate_cc_seed(code_24.h_a)
    assert report.passed
    assert report.row_weight == report.col_weight == 2
    assert report.kernel_dim == 2


def test_seed_with_zero_entries_passes():
    h_a, _ = load_seed("cc_54_18_3").ring_matrices()
    report = validate_cc_seed(h_a)
    assert report.passed
    assert report.row_weight == 2


def test_trinomial_seed_is_rejected():
    h = RingMatrix.from_strings([["1+x+x^2", "x+x^2"], ["1+x", "x+x^2"]], 3)
    report = validate_cc_seed(h)
    assert not report.entries_ok
    assert "entries_ok" in report.failures()
    with pytest.raises(SeedValidationError) as info:
        cc_code(h, h)
    assert info.value.report is not None
    assert not info.value.report.passed


def test_non_square_and_composite_lift_are_rejected():
    h = RingMatrix.from_strings([["1+x", "1+x^2"]], 3)
    assert not validate_cc_seed(h).square
    good = RingMatrix.from_strings([["1+x"]], 4)
    with pytest.raises(InputError):
        cc_code(good, good)


def test_seed_document_rejects_composite_lift():
    with pytest.raises(ValueError):
        SeedDocument(label="bad", p=4, H_a=[["1+x"]], H_b=[["1+x"]])


def test_seed_loader_lives_with_the_codes():
    doc = load_seed("[[24,8,3]]")
    assert doc.build().n_phys == 24
    assert load_seed.__module__ == "src.codes.seeds"


@pytest.mark.parametrize(
    "module", ["src.codes.seeds", "src.gadgets.physical", "src.gadgets.schedules", "src.gadgets.fold"]
)
def test_library_modules_do_not_import_the_cli(module):
    assert not re.search(r"\bsrc\.cli\b", inspect.getsource(importlib.import_module(module)))


def test_seed_kernel_and_image(code_24):
    for h in (code_24.h_a, code_24.h_b):
        assert seed_kernel_image_report(h).passed


def test_css_condition_is_enforced(code_24):
    broken = RingMatrix.from_bits(np.eye(8, dtype=np.uint8)[:1], code_24.l)
    with pytest.raises(VerificationError):
        CssCode(broken, broken)


def test_dual_exchanges_checks(code_24):
    dual = code_24.dual()
    assert dual.bhx == code_24.bhz
    assert dual.k_log == code_24.k_log


def test_hypergraph_product_of_repetition_codes():
    rep = BitMatrix.from_array([[1, 1, 0], [0, 1, 1]])
    surface = hypergraph_product(rep, rep, label="surface")
    assert (surface.n_phys, surface.k_log) == (13, 1)
    assert surface.bhx.shape == (6, 13)
    assert surface.bhz.shape == (6, 13)


def test_rectangular_hypergraph_product():
    h_a = BitMatrix.from_array([[1, 1, 0], [0, 1, 1]])
    h_b = BitMatrix.from_array([[1, 1]])
    code = hypergraph_product(h_a, h_b)
    assert code.n_phys == 3 * 2 + 2 * 1
    assert code.bhx.rows == 2 * 2
    assert code.bhz.rows == 3 * 1


def test_lifted_product_shapes(code_24):
    code = lifted_product(code_24.h_a, code_24.h_b)
    assert code.hx.shape == (4, 8)
    assert code.hz.shape == (4, 8)


# Clustered basis


@pytest.mark.parametrize("ref", ["cc_12_4_3", "cc_24_8_3", "cc_136_8_14"])
def test_clustered_basis_is_valid(ref):
    code = load_seed(ref).build()
    basis = clustered_basis(code)
    assert basis.k == code.k_log
    assert set(basis.x_reps.sum(axis=1)) == {code.p}
    report = verify_clustered(basis, code)
    assert report.passed, report.violations


def test_cluster_supports_are_consecutive(code_12):
    basis = clustered_basis(code_12)
    assert basis.x_reps[0].tolist() == [1, 1, 1] + [0] * 9
    assert basis.cluster_columns(2) == [6, 7, 8]


def test_logical_representative_is_not_a_stabilizer(code_12):
    basis = clustered_basis(code_12)
    assert not gf2.row_space_contains(code_12.bhz, basis.z_reps[0])


def test_coordinates_of_a_cluster_operator(code_24):
    basis = clustered_basis(code_24)
    x_coords, z_coords = basis.coordinates(basis.x_reps[2], np.zeros(24, dtype=np.uint8))
    assert x_coords.tolist() == [0, 0, 1, 0, 0, 0, 0, 0]
    assert not z_coords.any()


def test_grid_positions(code_24):
    assert cluster_grid_position(code_24, 0) == (LEFT, 0, 0)
    assert cluster_grid_position(code_24, 3) == (LEFT, 1, 1)
    assert cluster_grid_position(code_24, 6) == (RIGHT, 1, 0)
    with pytest.raises(InputError):
        cluster_grid_position(code_24, 8)


def test_overlapping_representatives_are_reported(code_24):
    basis = clustered_basis(code_24)
    basis.x_reps[1] = basis.x_reps[0]
    report = verify_clustered(basis, code_24)
    assert not report.passed
    assert any("overlap" in v for v in report.violations)
