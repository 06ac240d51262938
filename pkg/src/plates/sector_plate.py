"""Piecewise-constant azimuthal phase plates (sector plates)."""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

TWO_PI = 2.0 * np.pi

# Absolute tolerance for angle and phase comparisons (radians)
ANGLE_TOL = 1e-12

ArrayLike = Union[float, Sequence[float], np.ndarray]


def wrap_angle(angle: ArrayLike) -> Union[float, np.ndarray]:
    """Reduce angles to the canonical range [0, 2π).

    Values within ANGLE_TOL below 2π snap to 0 so the reduction stays
    idempotent under floating point rounding.
    """
    wrapped = np.mod(np.asarray(angle, dtype=float), TWO_PI)
    wrapped = np.where(TWO_PI - wrapped <= ANGLE_TOL, 0.0, wrapped)
    if wrapped.ndim == 0:
        return float(wrapped)
    return wrapped


def _phase_distance(a: float, b: float) -> float:
    d = float(np.mod(a - b, TWO_PI))
    return min(d, TWO_PI - d)


@dataclass(frozen=True, eq=False)
class SectorPlate:
    """Pure phase plate; sector k spans [boundaries[k], boundaries[k+1]) with wraparound.

    Instances are canonical: use ``make_sector_plate`` or one of the
    constructors below rather than calling the class directly.
    """

    boundaries: np.ndarray
    phases: np.ndarray

    def __post_init__(self):
        boundaries = np.array(self.boundaries, dtype=float).reshape(-1)
        phases = np.array(self.phases, dtype=float).reshape(-1)
        _validate_layout(boundaries, phases)
        boundaries.setflags(write=False)
        phases.setflags(write=False)
        object.__setattr__(self, "boundaries", boundaries)
        object.__setattr__(self, "phases", phases)

    @property
    def n_sectors(self) -> int:
        return len(self.boundaries)

    @property
    def widths(self) -> np.ndarray:
        """Angular width of every sector."""
        upper = np.append(self.boundaries[1:], self.boundaries[0] + TWO_PI)
        return upper - self.boundaries

    @property
    def is_binary(self) -> bool:
        """True when every phase is 0 or π, i.e. the transmission is real."""
        return all(
            _phase_distance(p, 0.0) <= ANGLE_TOL or _phase_distance(p, np.pi) <= ANGLE_TOL
            for p in self.phases
        )

    def to_dict(self):
        return {
            "boundaries_rad": [float(b) for b in self.boundaries],
            "phases_rad": [float(p) for p in self.phases],
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, SectorPlate):
            return NotImplemented
        if self.n_sectors != other.n_sectors:
            return False
        if np.max(np.abs(self.boundaries - other.boundaries)) > ANGLE_TOL:
            return False
        return all(
            _phase_distance(a, b) <= ANGLE_TOL for a, b in zip(self.phases, other.phases)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"SectorPlate(boundaries={list(np.round(self.boundaries, 6))}, phases={list(np.round(self.phases, 6))})"


def _validate_layout(boundaries: np.ndarray, phases: np.ndarray):
    if boundaries.size == 0 or phases.size == 0:
        raise ValueError("A sector plate needs at least one sector")
    if boundaries.size != phases.size:
        raise ValueError(
            f"boundaries and phases differ in length ({boundaries.size} vs {phases.size})"
        )
    if not np.all(np.isfinite(boundaries)) or not np.all(np.isfinite(phases)):
        raise ValueError("boundaries and phases must be finite numbers")
    for k, b in enumerate(boundaries):
        if b < 0.0 or b >= TWO_PI:
            raise ValueError(f"boundaries[{k}] = {b!r} lies outside [0, 2π)")
    steps = np.diff(boundaries)
    bad = np.nonzero(steps <= ANGLE_TOL)[0]
    if bad.size:
        k = int(bad[0]) + 1
        raise ValueError(
            f"boundaries must be strictly increasing: boundaries[{k}] = {boundaries[k]!r} "
            f"follows {boundaries[k - 1]!r}"
        )
    if boundaries.size > 1 and boundaries[0] + TWO_PI - boundaries[-1] <= ANGLE_TOL:
        raise ValueError("last sector has zero width (wraparound gap below tolerance)")


def make_sector_plate(boundaries: Sequence[float], phases: Sequence[float]) -> SectorPlate:
    """Build a canonical plate from boundary angles and per-sector phases.

    Phases are reduced mod 2π and adjacent sectors carrying the same phase are
    merged. A plate whose phases are all equal becomes the single-sector form
    with its boundary at 0.
    """
    boundaries = np.array(boundaries, dtype=float).reshape(-1)
    phases = np.array(phases, dtype=float).reshape(-1)
    _validate_layout(boundaries, phases)

    phases = np.asarray(wrap_angle(phases), dtype=float).reshape(-1)
    n = len(boundaries)
    keep = [
        k for k in range(n)
        if _phase_distance(phases[k], phases[k - 1]) > ANGLE_TOL
    ]
    if not keep:
        return SectorPlate(np.array([0.0]), np.array([phases[0]]))
    return SectorPlate(boundaries[keep], phases[keep])


def uniform_plate(phase: float = 0.0) -> SectorPlate:
    """Plate with constant phase; identity transmission up to a global phase."""
    return make_sector_plate([0.0], [phase])


def imperfect_step_plate(delta: float, step_phase: float) -> SectorPlate:
    """Single arc sector [0, δ) carrying ``step_phase``; the rest carries phase 0."""
    if not 0.0 <= delta < TWO_PI:
        raise ValueError(f"sector angle {delta!r} outside [0, 2π)")
    if delta <= ANGLE_TOL:
        return uniform_plate()
    return make_sector_plate([0.0, delta], [step_phase, 0.0])


def single_sector_plate(delta: float) -> SectorPlate:
    """Phase π on [0, δ), phase 0 on [δ, 2π); δ = 0 gives the uniform plate."""
    return imperfect_step_plate(delta, np.pi)


def alternating_plate(boundaries: Sequence[float]) -> SectorPlate:
    """2N sectors alternately shifted by π, starting with π at boundaries[0]."""
    boundaries = np.array(boundaries, dtype=float).reshape(-1)
    if boundaries.size == 0 or boundaries.size % 2:
        raise ValueError(
            f"an alternating plate needs an even, nonzero number of boundaries (got {boundaries.size})"
        )
    phases = np.tile([np.pi, 0.0], boundaries.size // 2)
    return make_sector_plate(boundaries, phases)


def rotate_plate(plate: SectorPlate, alpha: float) -> SectorPlate:
    """Rotate the plate by α so that t'(θ) = t(θ − α)."""
    shifted = np.asarray(wrap_angle(plate.boundaries + alpha), dtype=float).reshape(-1)
    order = np.argsort(shifted, kind="stable")
    return make_sector_plate(shifted[order], plate.phases[order])


def reflect_plate(plate: SectorPlate) -> SectorPlate:
    """Mirror the plate, θ → 2π − θ."""
    if plate.n_sectors == 1:
        return plate
    # sector [a, b) maps to [2π − b, 2π − a): new boundaries are the mirrored upper edges
    upper = np.append(plate.boundaries[1:], plate.boundaries[0] + TWO_PI)
    mirrored = np.asarray(wrap_angle(TWO_PI - upper), dtype=float).reshape(-1)
    order = np.argsort(mirrored, kind="stable")
    return make_sector_plate(mirrored[order], plate.phases[order])


def sector_index(plate: SectorPlate, theta: ArrayLike) -> np.ndarray:
    """Index of the sector containing each θ; a boundary belongs to the sector it starts."""
    theta = np.asarray(wrap_angle(theta), dtype=float)
    idx = np.searchsorted(plate.boundaries, theta + ANGLE_TOL, side="right") - 1
    # θ before the first boundary sits in the last sector (wraparound)
    return np.where(idx < 0, plate.n_sectors - 1, idx)


def transmission_at(plate: SectorPlate, theta: ArrayLike) -> Union[complex, np.ndarray]:
    """Unit-modulus transmission e^{i·phase} of the sector containing θ."""
    phase = plate.phases[sector_index(plate, theta)]
    value = np.cos(phase) + 1j * np.sin(phase)
    if np.ndim(value) == 0:
        return complex(value)
    return value
