"""Fault-tolerance scans, boostability census and overhead accounting"""

from concurrent.futures import ProcessPoolExecutor
from typing import FrozenSet, Iterator, List, Optional, Set

from pydantic import BaseModel
from tqdm import tqdm

from src.codes.cc import CcCode
from src.distance.exhaustive import min_logical_weight
from src.distance.randomized import randomized_distance
from src.surgery.connection import ConnectionCode, all_connections, count_merges, merge_complex, merge_targets
from src.utils.config import settings
from src.utils.errors import BudgetExceededError, InputError
from src.utils.logger import app_logger

REFERENCE_BOOSTABLE = 867

Block = FrozenSet[int]


class ScanEntry(BaseModel):
    index: int
    h_a_prime: List[List[int]]
    h_b_prime: List[List[int]]
    merges: int
    d_x: Optional[int] = None
    d_z: Optional[int] = None
    method: str
    passed: bool

    @property
    def d_tilde(self) -> Optional[int]:
        found = [d for d in (self.d_x, self.d_z) if d is not None]
        return min(found) if found else None


class ScanReport(BaseModel):
    code: str
    weight_bound: int
    basis: str
    total: int
    passed: int
    min_d_tilde: Optional[int] = None
    failures: List[int]
    entries: List[ScanEntry]


class BoostCensus(BaseModel):
    total_configs: int
    boostable_configs: int
    reference_boostable: int = REFERENCE_BOOSTABLE
    agrees_with_reference: bool
    predicate: str


class OverheadReport(BaseModel):
    code: str
    merges: int
    space: int
    data_aux: int
    check_aux: int
    time_per_merge: float
    spacetime: float
    extrapolated: bool


def _scan_one(code: CcCode, index: int, conn: ConnectionCode, bound: int, basis: str, trials: int, seed: int):
    merged = merge_complex(code, conn, basis)
    method = "exhaustive"
    try:
        d_z, _ = min_logical_weight(merged.bhx, merged.bhz, bound)
        d_x, _ = min_logical_weight(merged.bhz, merged.bhx, bound)
    except BudgetExceededError:
        method = "randomized"
        estimate = randomized_distance(merged, trials, seed + index)
        d_x = estimate.d_x_est if estimate.d_x_est is not None and estimate.d_x_est <= bound else None
        d_z = estimate.d_z_est if estimate.d_z_est is not None and estimate.d_z_est <= bound else None
    passed = all(d is None or d >= bound for d in (d_x, d_z))
    a_bits, b_bits = conn.seed_bits()
    return ScanEntry(
        index=index,
        h_a_prime=a_bits,
        h_b_prime=b_bits,
        merges=count_merges(code, conn, basis),
        d_x=d_x,
        d_z=d_z,
        method=method,
        passed=passed,
    )


def ft_scan(
    code: CcCode,
    weight_bound: int,
    connections: Optional[List[ConnectionCode]] = None,
    basis: str = "Z",
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    jobs: int = 1,
) -> ScanReport:
    """
    Merged-code distance for every connection of a family

    Args:
        code: Data code
        weight_bound: Distance every merged code must reach, usually the data distance
        connections: Connection list; all 256 0/1 connections of a 2x2-seed code by default
        basis: Merge basis
        trials: Randomized trials used when exhaustive search exceeds its budget
        seed: Base RNG seed; entry i uses seed + i
        jobs: Worker processes

    Returns:
        ScanReport; an entry passes when no merged logical lighter than weight_bound exists
    """
    connections = connections if connections is not None else all_connections(code)
    for conn in connections:
        if conn.h_a_prime is None:
            raise InputError("scanned connections must be given by seeds")
    trials = trials or settings.default_trials
    seed = settings.default_seed if seed is None else seed
    app_logger.info(f"Scanning {len(connections)} connections of {code.describe()} against d={weight_bound}")

    progress = tqdm(total=len(connections), desc="ft-scan", disable=not settings.show_progress, leave=False)
    args = [(code, i, conn, weight_bound, basis, trials, seed) for i, conn in enumerate(connections)]
    entries: List[ScanEntry] = []
    if jobs <= 1:
        for a in args:
            entries.append(_scan_one(*a))
            progress.update()
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for entry in pool.map(_scan_one, *zip(*args)):
                entries.append(entry)
                progress.update()
    progress.close()

    found = [e.d_tilde for e in entries if e.d_tilde is not None]
    failures = [e.index for e in entries if not e.passed]
    if failures:
        app_logger.warning(f"{len(failures)} merged codes fall below d={weight_bound}: {failures}")
    return ScanReport(
        code=code.describe(),
        weight_bound=weight_bound,
        basis=basis,
        total=len(entries),
        passed=len(entries) - len(failures),
        min_d_tilde=min(found) if found else None,
        failures=failures,
        entries=entries,
    )


def measurement_configurations(k: int) -> Iterator[Set[Block]]:
    """Nonempty sets of disjoint single and pair measurements over logicals 1..k"""

    def extend(free: List[int]) -> Iterator[List[Block]]:
        if not free:
            yield []
            return
        first, rest = free[0], free[1:]
        for tail in extend(rest):
            yield tail
            yield [frozenset([first])] + tail
        for partner in rest:
            remaining = [q for q in rest if q != partner]
            for tail in extend(remaining):
                yield [frozenset([first, partner])] + tail

    for blocks in extend(list(range(1, k + 1))):
        if blocks:
            yield set(blocks)


def connection_target_sets(code: CcCode, basis: str = "Z") -> List[FrozenSet[Block]]:
    """Distinct merged-logical sets of each nonzero 0/1 connection"""
    out = []
    for conn in all_connections(code):
        targets = frozenset(frozenset(t.logicals) for t in merge_targets(code, conn, basis))
        if targets:
            out.append(targets)
    return out


def fully_realizing(code: CcCode, blocks: Set[Block], basis: str = "Z") -> List[int]:
    """Indices of connections whose merges are exactly the given blocks"""
    wanted = frozenset(blocks)
    return [
        i
        for i, conn in enumerate(all_connections(code))
        if frozenset(frozenset(t.logicals) for t in merge_targets(code, conn, basis)) == wanted
    ]


def boost_census(code: CcCode) -> BoostCensus:
    """
    Count measurement configurations that one product surgery round can advance

    A configuration is boostable when some connection measures a nonempty set of
    its blocks and nothing outside it.
    """
    if code.k_log != 8:
        raise InputError(f"the census is defined for k=8 codes, got k={code.k_log}")
    realizable = set(connection_target_sets(code))
    total = boostable = 0
    for config in measurement_configurations(code.k_log):
        total += 1
        if any(targets <= config for targets in realizable):
            boostable += 1
    agrees = boostable == REFERENCE_BOOSTABLE
    if not agrees:
        app_logger.warning(f"Boostable census gives {boostable}, reference count is {REFERENCE_BOOSTABLE}")
    app_logger.info(f"Boost census for {code.describe()}: {boostable}/{total}")
    return BoostCensus(
        total_configs=total,
        boostable_configs=boostable,
        agrees_with_reference=agrees,
        predicate="some 0/1 connection's nonempty merge set is a subset of the configuration's blocks",
    )


def overhead_report(code: CcCode, merges: int, distance: int) -> OverheadReport:
    """
    Auxiliary space and time of one surgery round

    Args:
        code: Data code
        merges: Merges performed in the round, 1 <= M <= k/2
        distance: Code distance, the number of merged syndrome rounds

    Returns:
        Space 2N, time per merge d/M, spacetime their product; M < k/2 is flagged as extrapolated
    """
    k = code.k_log
    if not 1 <= merges <= k // 2:
        raise InputError(f"merge count must lie in 1..{k // 2}, got {merges}")
    n = code.n_phys
    time = distance / merges
    return OverheadReport(
        code=code.describe(),
        merges=merges,
        space=2 * n,
        data_aux=n,
        check_aux=n,
        time_per_merge=time,
        spacetime=2 * n * time,
        extrapolated=2 * merges < k,
    )
