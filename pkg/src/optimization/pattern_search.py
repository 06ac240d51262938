"""Deterministic coordinate-wise pattern refinement (maximisation)."""

from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from .objective import MIN_GAP, move_boundary


@dataclass
class PatternResult:
    x: np.ndarray
    value: float
    evaluations: int
    sweeps: int
    trajectory: List[float] = field(default_factory=list)


def pattern_refine(
    objective: Callable[[np.ndarray], float],
    x0: np.ndarray,
    value0: float,
    initial_step: float,
    min_step: float = 1e-6,
    max_sweeps: int = 10000,
    gap: float = MIN_GAP,
    max_evaluations: Optional[int] = None,
) -> PatternResult:
    """Try ±step on every boundary in turn, keep strict improvements, halve the step
    after a sweep without one, stop once the step falls below ``min_step``.

    ``max_evaluations`` caps the objective calls; the search stops as soon as
    it is spent.
    """
    x = np.array(x0, dtype=float)
    value = value0
    step = initial_step
    evaluations = 0
    sweeps = 0
    trajectory = [value]

    def spent() -> bool:
        return max_evaluations is not None and evaluations >= max_evaluations

    while step >= min_step and sweeps < max_sweeps and not spent():
        improved = False
        for k in range(x.size):
            for direction in (1.0, -1.0):
                if spent():
                    break
                candidate = move_boundary(x, k, direction * step, gap)
                if candidate[k] == x[k]:
                    continue
                trial = objective(candidate)
                evaluations += 1
                if trial > value:
                    x, value = candidate, trial
                    trajectory.append(value)
                    improved = True
                    break
        sweeps += 1
        if not improved:
            step /= 2.0

    return PatternResult(x, value, evaluations, sweeps, trajectory)
