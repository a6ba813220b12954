"""Constants frozen from small-scale oracle runs, asserted at larger scale.

``scripts/freeze_constants.py`` recomputes everything here and rewrites
``data/frozen.json``; tests and the CLI only read the file.
"""

from __future__ import annotations

import json
import math
from functools import lru_cache
from importlib import resources

import numpy as np

ALPHA_GRID = 10_000
RANDOM_ALPHAS = 1_000
DEFAULT_SEED = 42
GOLDBACH_CHECKPOINTS = (1001, 10001, 100001)
GOLDBACH_LIMIT = 100_003
# u = X**0.1 first reaches 2 and 3 at 2**10 and 3**10, where the ratio peaks.
VAUGHAN_CALIBRATION_X = (100, 200, 500, 1024, 59049)
VAUGHAN_CALIBRATION_SEED = 7


def alpha_sample(grid: int = ALPHA_GRID, n_random: int = RANDOM_ALPHAS, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Midpoint grid of ``grid`` points followed by ``n_random`` SplitMix64 draws."""
    from ggl.bounds import midpoint_grid
    from ggl.rng import SplitMix64

    return np.concatenate([midpoint_grid(grid), SplitMix64(seed).uniforms(n_random)])


def vaughan_alphas() -> list[float]:
    from ggl.rng import SplitMix64

    return [0.0, 0.5, 1 / 3] + SplitMix64(VAUGHAN_CALIBRATION_SEED).uniforms(5).tolist()


def vaughan_ratio(alpha: float, X: int, tables) -> float:
    from ggl.expsum import vaughan_split

    split = vaughan_split(alpha, X, tables)
    return abs(split.residual) / (split.u * math.log(X))


def compute_frozen() -> dict:
    from ggl import bounds
    from ggl.arith import ArithTables, sieve
    from ggl.goldbach import rep_counts

    grid = bounds.midpoint_grid(ALPHA_GRID)
    tables = ArithTables.build(max(VAUGHAN_CALIBRATION_X))
    table = sieve(GOLDBACH_LIMIT)
    checkpoints = {}
    for N in GOLDBACH_CHECKPOINTS:
        rc = rep_counts(N, table)
        checkpoints[str(N)] = {"J": rc.J, "J0": rc.J0, "deviation": abs(rc.ratio - 1)}
    return {
        "corollary1_C": max(bounds.corollary1_ratio(1 << j, grid) for j in range(1, 9)),
        "corollary3_C": max(bounds.corollary3_ratio(k) for k in range(1, 9)),
        "corollary4_C": max(bounds.corollary4_ratio(k) for k in range(1, 9)),
        "vaughan_C": max(
            vaughan_ratio(a, X, tables) for X in VAUGHAN_CALIBRATION_X for a in vaughan_alphas()
        ),
        "goldbach_checkpoints": checkpoints,
    }


@lru_cache(maxsize=1)
def load_frozen() -> dict:
    text = resources.files("ggl").joinpath("data/frozen.json").read_text()
    return json.loads(text)
