"""Shannon dimensionality D, Schmidt number K and the single-sector closed form."""

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Sequence

import numpy as np

from plates import ANGLE_TOL, TWO_PI

from .mode_decomposition import ModeSpectrum

if TYPE_CHECKING:
    from .fringe import Fringe

# Source weights must sum to one within this tolerance
UNIT_SUM_TOL = 1e-12

# Relative tolerance when checking that a fringe grid is uniform
GRID_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SourceSpectrum:
    """Schmidt weights λ_l of the two-photon state over l in [-l_max, l_max]."""

    weights: np.ndarray

    def __post_init__(self):
        weights = np.array(self.weights, dtype=float).reshape(-1)
        if weights.size % 2 == 0:
            raise ValueError(f"source window must be symmetric (odd length), got {weights.size}")
        if np.any(weights < 0):
            raise ValueError("Schmidt weights must be nonnegative")
        total = float(np.sum(weights))
        if abs(total - 1.0) > UNIT_SUM_TOL:
            raise ValueError(f"Schmidt weights must sum to one (sum = {total!r})")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_weights(cls, weights: Sequence[float]) -> "SourceSpectrum":
        """Normalise arbitrary nonnegative weights, centred on l = 0.

        An even count is padded with one zero weight at the high-l end.
        """
        weights = np.asarray(weights, dtype=float).reshape(-1)
        if weights.size == 0:
            raise ValueError("no Schmidt weights given")
        if np.any(weights < 0):
            raise ValueError("Schmidt weights must be nonnegative")
        total = float(np.sum(weights))
        if total <= 0:
            raise ValueError("Schmidt weights are all zero")
        if weights.size % 2 == 0:
            weights = np.append(weights, 0.0)
        return cls(weights / total)

    @classmethod
    def flat(cls, l_max: int) -> "SourceSpectrum":
        """Uniform weights over |l| <= l_max (the K >> D regime)."""
        if l_max < 0:
            raise ValueError(f"l_max must be nonnegative (got {l_max!r})")
        return cls.from_weights(np.ones(2 * l_max + 1))

    @classmethod
    def gaussian(cls, schmidt_number: float, l_max: Optional[int] = None) -> "SourceSpectrum":
        """λ_l ∝ exp(−l²/2σ²) with σ = K/(2√π), so that K(λ) ≈ schmidt_number."""
        if schmidt_number < 1:
            raise ValueError(f"Schmidt number must be at least 1 (got {schmidt_number!r})")
        sigma = schmidt_number / (2.0 * np.sqrt(np.pi))
        if l_max is None:
            l_max = int(np.ceil(8.0 * sigma))
        ls = np.arange(-l_max, l_max + 1)
        return cls.from_weights(np.exp(-0.5 * (ls / sigma) ** 2))

    @property
    def l_max(self) -> int:
        return self.weights.size // 2

    @property
    def ls(self) -> np.ndarray:
        return np.arange(-self.l_max, self.l_max + 1)

    def weight(self, l: int) -> float:
        """λ_l, zero outside the window."""
        if abs(l) > self.l_max:
            return 0.0
        return float(self.weights[l + self.l_max])


def shannon_dimension(spectrum: ModeSpectrum) -> float:
    """D = 1/Σγ_l² for γ normalised to unit total power.

    The total includes the spectrum's Parseval tail, so a finite window does
    not deflate D; for tail-free spectra this is (Σγ)²/Σγ².
    """
    gamma = spectrum.gamma
    squares = float(np.sum(gamma ** 2))
    if squares == 0.0:
        raise ValueError("shannon_dimension of an all-zero spectrum is undefined")
    total = float(np.sum(gamma)) + spectrum.tail_power
    return total ** 2 / squares


def schmidt_number(source: SourceSpectrum) -> float:
    """K = 1/Σλ_l²."""
    return 1.0 / float(np.sum(source.weights ** 2))


def single_sector_dimension(delta: float) -> float:
    """Closed-form D(δ) for a plate with a single π-shifted arc sector of angle δ."""
    if delta < -ANGLE_TOL or delta > TWO_PI + ANGLE_TOL:
        raise ValueError(f"sector angle {delta!r} outside [0, 2π]")
    delta = min(max(delta, 0.0), TWO_PI)
    if delta > np.pi:
        delta = TWO_PI - delta
    x = delta / np.pi
    return 1.0 / (1.0 - 4.0 * x + 6.0 * x ** 2 - (8.0 / 3.0) * x ** 3)


def fringe_dimension(fringe: "Fringe", peak: Optional[float] = None) -> float:
    """Inverse area under the peak-normalised fringe, per unit angle.

    The mean over a uniform grid is exact for trigonometric polynomials of
    degree below half the sample count. ``peak`` replaces the sampled maximum
    as the normalisation when given.
    """
    deltas = np.asarray(fringe.deltas, dtype=float)
    rates = np.asarray(fringe.rates, dtype=float)
    check_uniform_grid(deltas)
    peak = float(np.max(rates)) if peak is None else float(peak)
    if peak <= 0.0:
        raise ValueError("fringe has zero peak; dimensionality undefined")
    return 1.0 / float(np.mean(rates / peak))


def check_uniform_grid(deltas: np.ndarray):
    """Raise unless ``deltas`` is the uniform grid 2πj/M, j = 0..M−1."""
    if deltas.size < 2:
        raise ValueError("a fringe needs at least two samples")
    expected = TWO_PI * np.arange(deltas.size) / deltas.size
    if np.max(np.abs(deltas - expected)) > GRID_TOL * TWO_PI:
        raise ValueError("fringe samples are not on a uniform grid covering [0, 2π)")
