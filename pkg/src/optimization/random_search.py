"""Monte-Carlo random search over multi-sector plates, optionally refined."""

from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .base import BaseOptimizer, OptimizationReport, RestartResult, RestartTask
from .objective import (
    evaluate_candidate,
    move_boundary,
    sample_candidate,
    separate,
)
from .pattern_search import pattern_refine


class MonteCarloOptimizer(BaseOptimizer):
    """Global uniform draws followed by local single-boundary random moves."""

    def __init__(self, config: Dict[str, Any], name: str = "monte_carlo"):
        super().__init__(config, name=name)
        self.global_fraction = float(config.get("global_fraction", 0.5))
        self.min_step = float(config.get("min_step", 1e-6))
        if not 0.0 < self.global_fraction <= 1.0:
            raise ValueError(f"global_fraction must lie in (0, 1] (got {self.global_fraction})")

    def objective(self, x: np.ndarray) -> float:
        return evaluate_candidate(x, residual=self.search_residual, cap=self.search_cap)

    def run_restart(self, task: RestartTask) -> RestartResult:
        rng = self.rng_for(task)
        n_boundaries = 2 * task.n_mesas
        evaluations = 0
        best_x, best_value = None, -np.inf
        trajectory: List[float] = []

        def consider(x: np.ndarray):
            nonlocal evaluations, best_x, best_value
            value = self.objective(x)
            evaluations += 1
            # strict improvement only, so ties keep the earlier candidate
            if value > best_value:
                best_x, best_value = x, value
                trajectory.append(value)
                return True
            return False

        if task.warm_start is not None:
            consider(separate(np.asarray(task.warm_start, dtype=float)))

        draws = max(1, int(round(task.budget * self.global_fraction)))
        for _ in range(min(draws, task.budget - evaluations)):
            consider(sample_candidate(rng, task.n_mesas))

        radius = np.pi / (4 * task.n_mesas)
        failures = 0
        while evaluations < task.budget:
            k = int(rng.integers(n_boundaries))
            step = float(rng.uniform(-radius, radius))
            if not consider(move_boundary(best_x, k, step)):
                failures += 1
                if failures >= 2 * n_boundaries:
                    radius = max(radius / 2.0, self.min_step)
                    failures = 0
            else:
                failures = 0

        self.logger.debug(
            f"restart {task.index}: D = {best_value:.6f} after {evaluations} evaluations"
        )
        return RestartResult(
            index=task.index,
            x=best_x,
            value=best_value,
            pre_refinement_value=best_value,
            evaluations=evaluations,
            trajectory=trajectory,
        )


class RefinedOptimizer(MonteCarloOptimizer):
    """Monte-Carlo search followed by deterministic pattern refinement of the best incumbent."""

    def __init__(self, config: Dict[str, Any]):
        super().__init__(config, name="refined")
        self.max_sweeps = int(config.get("max_sweeps", 10000))
        refine_budget = config.get("refine_budget")
        self.refine_budget = None if refine_budget is None else int(refine_budget)
        if self.refine_budget is not None and self.refine_budget < 0:
            raise ValueError(f"refine_budget must be nonnegative (got {self.refine_budget})")

    def refine(self, best: RestartResult, n_mesas: int, budget: int) -> RestartResult:
        # at most as many evaluations as the Monte-Carlo stage unless configured
        cap = budget if self.refine_budget is None else self.refine_budget
        refined = pattern_refine(
            self.objective,
            best.x,
            best.value,
            initial_step=np.pi / (8 * n_mesas),
            min_step=self.min_step,
            max_sweeps=self.max_sweeps,
            max_evaluations=cap,
        )
        self.logger.debug(
            f"restart {best.index}: refined {best.value:.6f} -> {refined.value:.6f} "
            f"in {refined.sweeps} sweeps, {refined.evaluations} evaluations"
        )
        return RestartResult(
            index=best.index,
            x=refined.x,
            value=refined.value,
            pre_refinement_value=best.value,
            evaluations=best.evaluations,
            sweeps=refined.sweeps,
            refinement_evaluations=refined.evaluations,
            trajectory=best.trajectory + refined.trajectory[1:],
        )


def build_optimizer(
    refine: bool = True,
    restarts: Optional[int] = None,
    workers: Optional[int] = None,
    config: Optional[Dict[str, Any]] = None,
) -> MonteCarloOptimizer:
    """Optimizer for a flat option dict; explicit arguments override it."""
    options = dict(config or {})
    if restarts is not None:
        options["restarts"] = restarts
    if workers is not None:
        options["workers"] = workers
    if int(options.get("restarts", 8)) < 1:
        raise ValueError(f"restarts must be at least 1 (got {options['restarts']})")
    if int(options.get("workers", 1)) < 1:
        raise ValueError(f"workers must be at least 1 (got {options['workers']})")
    return RefinedOptimizer(options) if refine else MonteCarloOptimizer(options)


def optimize_plate(
    n_mesas: int,
    budget: int,
    seed: int,
    *,
    refine: bool = True,
    restarts: Optional[int] = None,
    workers: Optional[int] = None,
    warm_start: Optional[Sequence[float]] = None,
    config: Optional[Dict[str, Any]] = None,
) -> OptimizationReport:
    """Best 2N-boundary alternating plate found within ``budget`` Monte-Carlo evaluations."""
    optimizer = build_optimizer(refine, restarts, workers, config)
    return optimizer.optimize(n_mesas, budget, seed, warm_start=warm_start)


def dimension_vs_sectors(
    n_max: int,
    budget_per_n: int,
    seed: int,
    *,
    refine: bool = True,
    restarts: Optional[int] = None,
    workers: Optional[int] = None,
    warm_start: bool = True,
    config: Optional[Dict[str, Any]] = None,
) -> List[OptimizationReport]:
    """Maximum D for every N in 1..n_max."""
    optimizer = build_optimizer(refine, restarts, workers, config)
    return optimizer.optimize_batch(n_max, budget_per_n, seed, warm_start=warm_start)

