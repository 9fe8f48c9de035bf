"""Randomized information-set distance estimation"""

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

import numpy as np
from tqdm import tqdm

from src.algebra import gf2
from src.algebra.gf2 import BitMatrix
from src.codes.css import CssCode
from src.distance.estimate import DistanceEstimate
from src.utils.config import settings
from src.utils.errors import InputError
from src.utils.helpers import chunk_list
from src.utils.logger import app_logger

HISTOGRAM_DEPTH = 3


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Counter-based generator for one trial, independent of how trials are split"""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


@dataclass
class SearchTally:
    """Running minimum over a block of trials"""

    weight: Optional[int] = None
    hits: int = 0
    words: Set[bytes] = field(default_factory=set)
    histogram: Counter = field(default_factory=Counter)

    def record(self, weight: int, word: np.ndarray):
        self.histogram[weight] += 1
        if self.weight is None or weight < self.weight:
            self.weight, self.hits, self.words = weight, 0, set()
        if weight == self.weight:
            self.hits += 1
            self.words.add(np.packbits(word).tobytes())

    def merge(self, other: "SearchTally") -> "SearchTally":
        out = SearchTally(histogram=self.histogram + other.histogram)
        found = [t for t in (self, other) if t.weight is not None]
        if not found:
            return out
        out.weight = min(t.weight for t in found)
        for t in found:
            if t.weight == out.weight:
                out.hits += t.hits
                out.words |= t.words
        return out


def _search_block(generator: np.ndarray, tests: np.ndarray, seed: int, trials: List[int]) -> SearchTally:
    n = generator.shape[1]
    tally = SearchTally()
    for trial in trials:
        perm = trial_rng(seed, trial).permutation(n)
        reduced, pivots = BitMatrix.from_array(generator[:, perm]).rref()
        rows = np.zeros((len(pivots), n), dtype=np.uint8)
        rows[:, perm] = reduced.to_array()[: len(pivots)]
        logical = ((rows.astype(np.int64) @ tests.T.astype(np.int64)) & 1).any(axis=1)
        for row in rows[logical]:
            tally.record(int(row.sum()), row)
    return tally


def _search_type(
    checks: BitMatrix, stabilizers: BitMatrix, trials: int, seed: int, jobs: int, label: str
) -> SearchTally:
    generator = gf2.kernel_basis(checks).to_array()
    tests = gf2.kernel_basis(stabilizers).to_array()
    blocks = chunk_list(list(range(trials)), max(1, math.ceil(trials / (4 * jobs))))
    progress = tqdm(total=trials, desc=f"distance {label}", disable=not settings.show_progress, leave=False)
    tally = SearchTally()
    if jobs <= 1:
        for block in blocks:
            tally = tally.merge(_search_block(generator, tests, seed, block))
            progress.update(len(block))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_search_block, generator, tests, seed, block): len(block) for block in blocks}
            for future in as_completed(futures):
                tally = tally.merge(future.result())
                progress.update(futures[future])
    progress.close()
    return tally


def _summary(tally: SearchTally) -> Tuple[Optional[float], Optional[float], Dict[int, int]]:
    if tally.weight is None:
        return None, None, {}
    n_bar = float(tally.hits)
    lowest = sorted(tally.histogram)[:HISTOGRAM_DEPTH]
    return n_bar, math.exp(-n_bar), {w: tally.histogram[w] for w in lowest}


def randomized_distance(code: CssCode, trials: int, seed: Optional[int] = None, jobs: int = 1) -> DistanceEstimate:
    """
    Upper bounds on d_x and d_z from random information sets

    Each trial permutes the columns of a generator of the kernel of the
    opposite-type checks, row reduces it, and keeps the reduced rows that are
    logical. The result depends only on (seed, trials).

    Args:
        code: CSS code
        trials: Number of information sets per Pauli type
        seed: RNG seed; settings.default_seed when None
        jobs: Worker processes

    Returns:
        DistanceEstimate with n_bar the raw number of times a word of the
        lowest weight was found, over all such words, and fail bound exp(-n_bar)
    """
    if trials < 1:
        raise InputError(f"trials must be at least 1, got {trials}")
    seed = settings.default_seed if seed is None else seed
    if code.k_log == 0:
        app_logger.info(f"{code.describe()} has no logical operators")
        return DistanceEstimate(trials=trials, rng_seed=seed, no_logicals=True)

    app_logger.info(f"Randomized distance of {code.describe()}: {trials} trials, seed {seed}, {jobs} job(s)")
    z_tally = _search_type(code.bhx, code.bhz, trials, seed, jobs, "Z")
    x_tally = _search_type(code.bhz, code.bhx, trials, seed, jobs, "X")
    n_bar_z, fail_z, hist_z = _summary(z_tally)
    n_bar_x, fail_x, hist_x = _summary(x_tally)
    return DistanceEstimate(
        d_x_est=x_tally.weight,
        d_z_est=z_tally.weight,
        n_bar_x=n_bar_x,
        n_bar_z=n_bar_z,
        fail_bound_x=fail_x,
        fail_bound_z=fail_z,
        hits_x=x_tally.hits,
        hits_z=z_tally.hits,
        distinct_x=len(x_tally.words),
        distinct_z=len(z_tally.words),
        weight_histogram_x=hist_x,
        weight_histogram_z=hist_z,
        witness_x=_witness(x_tally),
        witness_z=_witness(z_tally),
        trials=trials,
        rng_seed=seed,
    )


def _witness(tally: SearchTally) -> Optional[List[int]]:
    if not tally.words:
        return None
    word = min(tally.words)
    return [int(i) for i in np.flatnonzero(np.unpackbits(np.frombuffer(word, dtype=np.uint8)))]
