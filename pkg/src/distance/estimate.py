"""Distance report shared by the exhaustive and randomized searches"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class DistanceEstimate(BaseModel):
    """
    Per-type distance results

    d_*_est is an upper bound; `exhaustive` certifies it as exact. A type with
    no logical found up to the weight cap has d_*_est None and lower_bound_* set.
    """

    d_x_est: Optional[int] = None
    d_z_est: Optional[int] = None
    lower_bound_x: Optional[int] = None
    lower_bound_z: Optional[int] = None
    n_bar_x: Optional[float] = None
    n_bar_z: Optional[float] = None
    fail_bound_x: Optional[float] = None
    fail_bound_z: Optional[float] = None
    hits_x: int = 0
    hits_z: int = 0
    distinct_x: int = 0
    distinct_z: int = 0
    weight_histogram_x: Dict[int, int] = Field(default_factory=dict)
    weight_histogram_z: Dict[int, int] = Field(default_factory=dict)
    witness_x: Optional[List[int]] = None
    witness_z: Optional[List[int]] = None
    trials: int = 0
    rng_seed: Optional[int] = None
    exhaustive: bool = False
    no_logicals: bool = False

    @property
    def d(self) -> Optional[int]:
        found = [d for d in (self.d_x_est, self.d_z_est) if d is not None]
        return min(found) if found else None
