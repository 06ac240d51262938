"""Base class for multi-sector plate optimizers."""

from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from plates import SectorPlate, make_sector_plate
from spectra import (
    DEFAULT_RESIDUAL,
    L_MAX_CAP,
    SEARCH_L_MAX_CAP,
    SEARCH_RESIDUAL,
    mode_spectrum,
    shannon_dimension,
)

from .objective import candidate_plate, nest_candidate


@dataclass
class OptimizationReport:
    """Best plate found for N mesas plus search diagnostics."""

    n_mesas: int
    best_plate: SectorPlate
    best_dimension: float
    evaluations: int
    seed: int
    refinement_iterations: int
    l_max_used: int
    restarts: int = 1
    search_dimension: float = float("nan")
    pre_refinement_dimension: float = float("nan")
    refinement_evaluations: int = 0
    trajectory: Tuple[float, ...] = ()
    candidate: Tuple[float, ...] = ()

    @property
    def boundaries(self) -> np.ndarray:
        return self.best_plate.boundaries

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_mesas": self.n_mesas,
            "boundaries_rad": [float(b) for b in self.best_plate.boundaries],
            "phases_rad": [float(p) for p in self.best_plate.phases],
            "dimension": self.best_dimension,
            "evaluations": self.evaluations,
            "seed": self.seed,
            "refinement_iterations": self.refinement_iterations,
            "refinement_evaluations": self.refinement_evaluations,
            "l_max_used": self.l_max_used,
            "restarts": self.restarts,
            "search_dimension": self.search_dimension,
            "pre_refinement_dimension": self.pre_refinement_dimension,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "OptimizationReport":
        try:
            plate = make_sector_plate(data["boundaries_rad"], data["phases_rad"])
            return cls(
                n_mesas=int(data["n_mesas"]),
                best_plate=plate,
                best_dimension=float(data["dimension"]),
                evaluations=int(data["evaluations"]),
                seed=int(data["seed"]),
                refinement_iterations=int(data.get("refinement_iterations", 0)),
                refinement_evaluations=int(data.get("refinement_evaluations", 0)),
                l_max_used=int(data.get("l_max_used", 0)),
                restarts=int(data.get("restarts", 1)),
                search_dimension=float(data.get("search_dimension", float("nan"))),
                pre_refinement_dimension=float(data.get("pre_refinement_dimension", float("nan"))),
            )
        except KeyError as e:
            raise ValueError(f"optimization report is missing field {e}")


@dataclass(frozen=True)
class RestartTask:
    """Everything one independent restart needs; picklable for worker processes."""

    n_mesas: int
    budget: int
    seed: int
    index: int
    warm_start: Optional[Tuple[float, ...]] = None


@dataclass
class RestartResult:
    index: int
    x: np.ndarray
    value: float
    pre_refinement_value: float
    evaluations: int
    sweeps: int = 0
    refinement_evaluations: int = 0
    trajectory: List[float] = field(default_factory=list)


def _run_restart(payload) -> RestartResult:
    optimizer_cls, config, task = payload
    return optimizer_cls(config).run_restart(task)


class BaseOptimizer(ABC):
    """Abstract base class for plate optimizers.

    Subclasses implement a single restart; this class splits the budget over
    restarts, runs them serially or in worker processes, reduces them
    deterministically and hands the best one to ``refine``.
    """

    def __init__(self, config: Dict[str, Any], name: str = "base"):
        """Initialize optimizer with configuration."""
        self.config = config
        self.name = name
        self.logger = logger.bind(name=f"optimizer.{name}")
        self.search_residual = config.get("search_residual", SEARCH_RESIDUAL)
        self.final_residual = config.get("residual", DEFAULT_RESIDUAL)
        self.l_max_cap = config.get("l_max_cap", L_MAX_CAP)
        self.search_cap = config.get("search_l_max_cap", SEARCH_L_MAX_CAP)
        self.restarts = int(config.get("restarts", 8))
        self.workers = int(config.get("workers", 1))

    @abstractmethod
    def run_restart(self, task: RestartTask) -> RestartResult:
        """Run one independent restart."""
        pass

    def rng_for(self, task: RestartTask) -> np.random.Generator:
        """Random stream derived from (seed, N, restart index) only."""
        return np.random.default_rng([task.seed, task.n_mesas, task.index])

    def optimize(
        self,
        n_mesas: int,
        budget: int,
        seed: int,
        warm_start: Optional[Sequence[float]] = None,
    ) -> OptimizationReport:
        """Maximise D over 2N-boundary alternating plates."""
        if int(n_mesas) != n_mesas or n_mesas < 1:
            raise ValueError(f"number of mesas must be a positive integer (got {n_mesas!r})")
        if int(budget) != budget or budget < 1:
            raise ValueError(f"evaluation budget must be a positive integer (got {budget!r})")
        if int(seed) != seed or seed < 0:
            raise ValueError(f"seed must be a nonnegative integer (got {seed!r})")
        if warm_start is not None and len(warm_start) != 2 * n_mesas:
            raise ValueError(f"warm start needs {2 * n_mesas} boundaries, got {len(warm_start)}")

        restarts = max(1, min(self.restarts, int(budget)))
        shares = [budget // restarts + (1 if i < budget % restarts else 0) for i in range(restarts)]
        tasks = [
            RestartTask(
                n_mesas=int(n_mesas),
                budget=share,
                seed=int(seed),
                index=i,
                warm_start=tuple(float(v) for v in warm_start) if (warm_start is not None and i == 0) else None,
            )
            for i, share in enumerate(shares)
        ]

        self.logger.info(f"Optimizing N={n_mesas}: budget {budget} over {restarts} restarts")
        results = self._dispatch(tasks)
        # ties go to the earlier restart
        best = max(results, key=lambda r: (r.value, -r.index))
        best = self.refine(best, int(n_mesas), int(budget))

        plate = candidate_plate(best.x)
        spectrum = mode_spectrum(plate, residual=self.final_residual, cap=self.l_max_cap)
        dimension = shannon_dimension(spectrum)
        self.logger.info(f"✓ N={n_mesas}: D = {dimension:.6f} (restart {best.index})")

        return OptimizationReport(
            n_mesas=int(n_mesas),
            best_plate=plate,
            best_dimension=dimension,
            evaluations=sum(r.evaluations for r in results) + best.refinement_evaluations,
            seed=int(seed),
            refinement_iterations=best.sweeps,
            l_max_used=spectrum.l_max,
            restarts=restarts,
            search_dimension=best.value,
            pre_refinement_dimension=best.pre_refinement_value,
            refinement_evaluations=best.refinement_evaluations,
            trajectory=tuple(best.trajectory),
            candidate=tuple(float(v) for v in best.x),
        )

    def refine(self, best: RestartResult, n_mesas: int, budget: int) -> RestartResult:
        """Hook applied once to the best restart; identity unless overridden."""
        return best

    def optimize_batch(
        self,
        n_max: int,
        budget_per_n: int,
        seed: int,
        warm_start: bool = True,
    ) -> List[OptimizationReport]:
        """One report per N in 1..n_max; each N may start from the nested N−1 optimum."""
        if int(n_max) != n_max or n_max < 1:
            raise ValueError(f"n_max must be a positive integer (got {n_max!r})")
        reports = []
        previous = None
        for n in range(1, int(n_max) + 1):
            start = nest_candidate(previous) if (warm_start and previous is not None) else None
            report = self.optimize(n, budget_per_n, seed, warm_start=start)
            reports.append(report)
            previous = report.candidate
        return reports

    def _dispatch(self, tasks: List[RestartTask]) -> List[RestartResult]:
        if self.workers > 1 and len(tasks) > 1:
            payloads = [(type(self), self.config, task) for task in tasks]
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                return list(pool.map(_run_restart, payloads))
        return [self.run_restart(task) for task in tasks]

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name={self.name}, restarts={self.restarts})"

