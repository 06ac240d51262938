"""Objective and candidate handling for the multi-sector plate search.

A candidate is kept as an "unwrapped" sorted vector x of 2N angles with
x[-1] < x[0] + 2π; consecutive boundaries (cyclically) stay at least
MIN_GAP apart. Evaluation wraps and sorts, which may swap which sectors carry
π; that turns the plate into its complement, whose D is the same.
"""

from typing import Sequence

import numpy as np

from plates import TWO_PI, SectorPlate, alternating_plate, wrap_angle
from spectra import SEARCH_L_MAX_CAP, SEARCH_RESIDUAL, mode_spectrum, shannon_dimension

# Smallest sector width a candidate may have; doubles as the perturbation
# applied to coincident draws
MIN_GAP = 1e-9


def canonical_boundaries(x: Sequence[float]) -> np.ndarray:
    """Wrapped, sorted boundary angles of a candidate."""
    return np.sort(np.asarray(wrap_angle(np.asarray(x, dtype=float)), dtype=float).reshape(-1))


def candidate_plate(x: Sequence[float]) -> SectorPlate:
    return alternating_plate(canonical_boundaries(x))


def evaluate_candidate(
    boundaries: Sequence[float],
    residual: float = SEARCH_RESIDUAL,
    cap: int = SEARCH_L_MAX_CAP,
) -> float:
    """Shannon dimensionality of the alternating plate with these boundaries."""
    spectrum = mode_spectrum(candidate_plate(boundaries), residual=residual, cap=cap)
    return shannon_dimension(spectrum)


def separate(x: np.ndarray, gap: float = MIN_GAP) -> np.ndarray:
    """Push coincident (or too close) sorted angles apart by ``gap``."""
    x = np.array(x, dtype=float)
    for k in range(1, x.size):
        if x[k] - x[k - 1] < gap:
            x[k] = x[k - 1] + gap
    overshoot = x[-1] - (x[0] + TWO_PI - gap)
    if x.size > 1 and overshoot > 0:
        x[-1] -= overshoot
        for k in range(x.size - 2, 0, -1):
            if x[k + 1] - x[k] < gap:
                x[k] = x[k + 1] - gap
    return x


def sample_candidate(rng: np.random.Generator, n_mesas: int) -> np.ndarray:
    """2N independent uniform angles on the circle, sorted and separated."""
    return separate(np.sort(rng.uniform(0.0, TWO_PI, 2 * n_mesas)))


def move_boundary(x: np.ndarray, k: int, step: float, gap: float = MIN_GAP) -> np.ndarray:
    """Shift boundary k by ``step`` without crossing its cyclic neighbours."""
    n = x.size
    lower = x[k - 1] if k > 0 else x[-1] - TWO_PI
    upper = x[k + 1] if k < n - 1 else x[0] + TWO_PI
    moved = x.copy()
    moved[k] = min(max(x[k] + step, lower + gap), upper - gap)
    return moved


def nest_candidate(x: Sequence[float], gap: float = MIN_GAP) -> np.ndarray:
    """Embed an N-mesa candidate in the (N+1)-mesa space via a zero-width mesa.

    Two boundaries ``gap`` apart go into the middle of the widest sector, so
    the plate, and hence D, is unchanged up to O(gap).
    """
    x = np.asarray(canonical_boundaries(x))
    upper = np.append(x[1:], x[0] + TWO_PI)
    k = int(np.argmax(upper - x))
    middle = 0.5 * (x[k] + upper[k])
    return np.concatenate([x[:k + 1], [middle, middle + gap], x[k + 1:]])
