import math

import numpy as np
import pytest

from src.algebra import gf2
from src.algebra.gf2 import BitMatrix
from src.codes.css import hypergraph_product
from src.codes.seeds import load_seed
from src.distance.exhaustive import exhaustive_distance, min_logical_weight
from src.distance.randomized import SearchTally, _summary, randomized_distance, trial_rng
from src.utils.errors import BudgetExceededError, InputError


def test_small_example_distance_is_certified(code_12):
    estimate = exhaustive_distance(code_12, 3)
    assert estimate.exhaustive
    assert estimate.d_x_est == estimate.d_z_est == 3
    assert estimate.d == 3


def test_case_study_distance_is_certified(code_24):
    estimate = exhaustive_distance(code_24, 3)
    assert estimate.exhaustive
    assert estimate.d == 3


def test_witness_is_a_logical_of_the_found_weight(code_24):
    estimate = exhaustive_distance(code_24, 3)
    word = [0] * code_24.n_phys
    for q in estimate.witness_z:
        word[q] = 1
    assert len(estimate.witness_z) == 3
    assert (code_24.bhx @ BitMatrix.from_array(word).T).is_zero()
    assert not gf2.row_space_contains(code_24.bhz, word)


def test_cap_below_distance_gives_lower_bound(code_24):
    estimate = exhaustive_distance(code_24, 2)
    assert estimate.d is None
    assert not estimate.exhaustive
    assert estimate.lower_bound_x == estimate.lower_bound_z == 3


def test_surface_code_distance():
    rep = BitMatrix.from_array([[1, 1, 0], [0, 1, 1]])
    surface = hypergraph_product(rep, rep)
    assert exhaustive_distance(surface, 4).d == 3


def test_budget_is_enforced(code_24):
    with pytest.raises(BudgetExceededError):
        min_logical_weight(code_24.bhx, code_24.bhz, 3, budget=10)


def test_weight_cap_must_be_positive(code_24):
    with pytest.raises(InputError):
        exhaustive_distance(code_24, 0)


def test_randomized_estimate_finds_case_study_distance(code_24):
    estimate = randomized_distance(code_24, trials=2000, seed=11)
    assert estimate.d == 3
    assert estimate.d_x_est == estimate.d_z_est == 3
    assert estimate.n_bar_z >= 1
    assert 0 < estimate.fail_bound_z <= 1
    assert min(estimate.weight_histogram_z) == 3
    assert estimate.rng_seed == 11


def test_randomized_estimate_is_an_upper_bound(code_12):
    estimate = randomized_distance(code_12, trials=50, seed=3)
    assert estimate.d >= 3


def test_randomized_estimate_is_reproducible(code_12):
    first = randomized_distance(code_12, trials=40, seed=5)
    second = randomized_distance(code_12, trials=40, seed=5)
    assert first.model_dump() == second.model_dump()


def test_randomized_estimate_does_not_depend_on_jobs(code_12):
    serial = randomized_distance(code_12, trials=24, seed=9, jobs=1)
    parallel = randomized_distance(code_12, trials=24, seed=9, jobs=2)
    assert serial.model_dump() == parallel.model_dump()


def test_trial_streams_are_independent_of_order():
    a = trial_rng(1, 7).permutation(10)
    b = trial_rng(1, 7).permutation(10)
    c = trial_rng(1, 8).permutation(10)
    assert a.tolist() == b.tolist()
    assert a.tolist() != c.tolist()


def test_trials_must_be_positive(code_12):
    with pytest.raises(InputError):
        randomized_distance(code_12, trials=0)


@pytest.mark.slow
@pytest.mark.parametrize("ref,d", [("cc_40_8_5", 5), ("cc_56_8_7", 7), ("cc_54_18_3", 3), ("cc_90_18_5", 5)])
def test_table_distances_are_certified(ref, d):
    code = load_seed(ref).build()
    estimate = exhaustive_distance(code, d, budget=50_000_000)
    assert estimate.exhaustive
    assert estimate.d == d


def test_n_bar_is_the_raw_hit_count(code_24):
    estimate = randomized_distance(code_24, trials=500, seed=2)
    assert estimate.n_bar_z == estimate.hits_z
    assert estimate.n_bar_x == estimate.hits_x
    assert estimate.fail_bound_z == pytest.approx(math.exp(-estimate.hits_z))


def test_n_bar_counts_repeated_words():
    first = np.array([1, 1, 1, 0, 0, 0], dtype=np.uint8)
    second = np.array([0, 0, 0, 1, 1, 1], dtype=np.uint8)
    tally = SearchTally()
    for _ in range(5):
        tally.record(3, first)
    for _ in range(3):
        tally.record(3, second)
    tally.record(4, np.array([1, 1, 1, 1, 0, 0], dtype=np.uint8))
    n_bar, fail_bound, histogram = _summary(tally)
    assert n_bar == 8
    assert fail_bound == pytest.approx(math.exp(-8))
    assert histogram == {3: 8, 4: 1}
