"""Two-photon coincidence fringes for a pair of sector-plate analyzers."""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from plates import TWO_PI, SectorPlate, transmission_at, wrap_angle

from .dimensionality import SourceSpectrum, check_uniform_grid, fringe_dimension
from .mode_decomposition import ModeSpectrum

# Samples beyond the 4·l_max exactness threshold; keeps the count odd
SAMPLE_MARGIN = 9


@dataclass(frozen=True, eq=False)
class Fringe:
    """Coincidence rate sampled on the uniform grid Δ_j = 2πj/M."""

    deltas: np.ndarray
    rates: np.ndarray

    def __post_init__(self):
        deltas = np.array(self.deltas, dtype=float).reshape(-1)
        rates = np.array(self.rates, dtype=float).reshape(-1)
        if deltas.size != rates.size:
            raise ValueError(f"{deltas.size} angles but {rates.size} rates")
        check_uniform_grid(deltas)
        if np.any(rates < 0):
            raise ValueError("coincidence rates must be nonnegative")
        deltas.setflags(write=False)
        rates.setflags(write=False)
        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "rates", rates)

    @classmethod
    def from_rates(cls, rates: Sequence[float]) -> "Fringe":
        rates = np.asarray(rates, dtype=float)
        return cls(TWO_PI * np.arange(rates.size) / rates.size, rates)

    @property
    def samples(self) -> int:
        return self.deltas.size

    def normalized(self) -> np.ndarray:
        """Rates divided by their sampled maximum."""
        peak = float(np.max(self.rates))
        if peak <= 0:
            raise ValueError("fringe has zero peak")
        return self.rates / peak


def default_samples(l_max: int) -> int:
    return 4 * l_max + SAMPLE_MARGIN


def check_samples(samples: int, l_max: int):
    """A fringe of band limit 2·l_max needs more than 4·l_max samples."""
    if samples < 4 * l_max + 1:
        raise ValueError(
            f"{samples} fringe samples undersample l_max={l_max}; need at least {4 * l_max + 1}"
        )


def _fringe_terms(
    spec_a: ModeSpectrum,
    spec_b: ModeSpectrum,
    source: Optional[SourceSpectrum],
):
    """Mode orders l and the terms h_l with C(Δ) = |Σ_l h_l e^{−ilΔ}|²."""
    l_max = max(spec_a.l_max, spec_b.l_max)
    if source is None:
        source = SourceSpectrum.flat(l_max)

    a = spec_a.padded(l_max)
    b = spec_b.padded(l_max)
    ls = np.arange(-l_max, l_max + 1)
    amplitude = np.zeros(ls.size)
    inside = np.abs(ls) <= source.l_max
    amplitude[inside] = np.sqrt(source.weights[ls[inside] + source.l_max] / np.max(source.weights))
    return ls, amplitude * np.conj(a) * np.conj(b[::-1])


def coincidence_fringe(
    spec_a: ModeSpectrum,
    spec_b: ModeSpectrum,
    source: Optional[SourceSpectrum] = None,
    samples: Optional[int] = None,
) -> Fringe:
    """C(Δ) = |Σ_l √λ_l · conj(c^A_l) · conj(c^B_{−l}) · e^{−ilΔ}|², plate B rotated by Δ.

    Source weights enter relative to their maximum, so a flat source (the
    default, spanning both analyzer windows) gives every mode unit amplitude.
    Modes outside a window contribute nothing.
    """
    l_max = max(spec_a.l_max, spec_b.l_max)
    if samples is None:
        samples = default_samples(l_max)
    check_samples(samples, l_max)

    ls, terms = _fringe_terms(spec_a, spec_b, source)
    # the FFT evaluates Σ_l h_l e^{−2πi l j/M} once l is folded mod M
    folded = np.zeros(samples, dtype=complex)
    np.add.at(folded, np.mod(ls, samples), terms)
    rates = np.abs(np.fft.fft(folded)) ** 2
    return Fringe.from_rates(rates)


def fringe_rate_at(
    spec_a: ModeSpectrum,
    spec_b: ModeSpectrum,
    deltas,
    source: Optional[SourceSpectrum] = None,
) -> np.ndarray:
    """The same coincidence rate evaluated directly at arbitrary angles."""
    ls, terms = _fringe_terms(spec_a, spec_b, source)
    deltas = np.atleast_1d(np.asarray(deltas, dtype=float))
    return np.abs(np.exp(-1j * np.outer(deltas, ls)) @ terms) ** 2


def fringe_extrema(
    spec_a: ModeSpectrum,
    spec_b: ModeSpectrum,
    source: Optional[SourceSpectrum] = None,
    oversample: int = 8,
    xatol: float = 1e-12,
):
    """(max, min) of the continuous fringe, not just of a sample grid.

    An oversampled FFT grid brackets both extrema; a bounded scalar search
    polishes each inside its bracket.
    """
    if oversample < 1:
        raise ValueError(f"oversample must be at least 1 (got {oversample})")
    l_max = max(spec_a.l_max, spec_b.l_max)
    grid = coincidence_fringe(spec_a, spec_b, source, oversample * default_samples(l_max))
    step = TWO_PI / grid.samples

    def polish(j: int, sign: float) -> float:
        result = minimize_scalar(
            lambda delta: sign * float(fringe_rate_at(spec_a, spec_b, delta, source)[0]),
            bounds=(grid.deltas[j] - step, grid.deltas[j] + step),
            method="bounded",
            options={"xatol": xatol},
        )
        return sign * float(result.fun)

    j_high = int(np.argmax(grid.rates))
    j_low = int(np.argmin(grid.rates))
    high = max(float(grid.rates[j_high]), polish(j_high, -1.0))
    low = min(float(grid.rates[j_low]), polish(j_low, 1.0))
    return high, max(low, 0.0)


def sharpened_visibility(
    spec_a: ModeSpectrum,
    spec_b: ModeSpectrum,
    source: Optional[SourceSpectrum] = None,
) -> float:
    """Visibility of the continuous fringe from its located extrema."""
    high, low = fringe_extrema(spec_a, spec_b, source)
    if high <= 0:
        raise ValueError("visibility of a zero fringe is undefined")
    return (high - low) / (high + low)


def tail_corrected_peak(fringe: Fringe, spec_a: ModeSpectrum, spec_b: ModeSpectrum) -> float:
    """Sampled peak with the Parseval tails restored, (√max C + √(tail_A·tail_B))².

    For identical plates this is (Σγ + tail)², the peak of the untruncated
    fringe, so the fringe area gives the same D as the spectrum.
    """
    return (np.sqrt(float(np.max(fringe.rates))) + np.sqrt(spec_a.tail_power * spec_b.tail_power)) ** 2


def truncation_bound(spec_a: ModeSpectrum, spec_b: ModeSpectrum) -> float:
    """Pointwise bound on |C_window − C_exact| from the two Parseval tails (flat source)."""
    return 2.0 * float(np.sqrt(spec_a.tail_power * spec_b.tail_power))


def analyzer_overlap(spectrum: ModeSpectrum, xi: float, xi_prime: float) -> complex:
    """Gram entry <X(ξ)|X(ξ')> = Σ_l γ_l e^{il(ξ'−ξ)} for one analyzer at two orientations."""
    return complex(np.sum(spectrum.gamma * np.exp(1j * spectrum.ls * (xi_prime - xi))))


def gram_matrix(spectrum: ModeSpectrum, settings: Sequence[float]) -> np.ndarray:
    """Matrix of analyzer overlaps over a set of orientations."""
    settings = np.asarray(settings, dtype=float)
    differences = settings[np.newaxis, :] - settings[:, np.newaxis]
    phases = np.exp(1j * differences[..., np.newaxis] * spectrum.ls)
    return phases @ spectrum.gamma


def overlap_fringe_oracle(
    plate_a: SectorPlate,
    plate_b: SectorPlate,
    samples: int,
    quad_points: Optional[int] = None,
) -> Fringe:
    """Real-space fringe |(1/2π)∫ conj(t_A(θ))·conj(t_B(θ−Δ)) dθ|².

    Midpoint quadrature on a uniform grid of ``quad_points`` nodes, split at
    the boundaries of both plates; the integrand is constant on every panel,
    so the result is exact up to rounding.
    """
    minimum = 4 * (plate_a.n_sectors + plate_b.n_sectors)
    if quad_points is None:
        quad_points = minimum
    if quad_points < minimum:
        raise ValueError(f"{quad_points} quadrature points are too few; need at least {minimum}")
    if samples < 2:
        raise ValueError("a fringe needs at least two samples")

    deltas = TWO_PI * np.arange(samples) / samples
    grid = TWO_PI * np.arange(quad_points) / quad_points
    shifted = wrap_angle(plate_b.boundaries[np.newaxis, :] + deltas[:, np.newaxis])
    nodes = np.concatenate(
        [
            np.broadcast_to(grid, (samples, quad_points)),
            np.broadcast_to(plate_a.boundaries, (samples, plate_a.n_sectors)),
            shifted,
        ],
        axis=1,
    )
    nodes.sort(axis=1)
    widths = np.diff(np.concatenate([nodes, np.full((samples, 1), TWO_PI)], axis=1), axis=1)
    midpoints = nodes + 0.5 * widths
    integrand = np.conj(transmission_at(plate_a, midpoints)) * np.conj(
        transmission_at(plate_b, midpoints - deltas[:, np.newaxis])
    )
    amplitude = np.sum(widths * integrand, axis=1) / TWO_PI
    return Fringe(deltas, np.abs(amplitude) ** 2)


def visibility(fringe: Fringe) -> float:
    """(max − min)/(max + min)."""
    high = float(np.max(fringe.rates))
    low = float(np.min(fringe.rates))
    if high <= 0:
        raise ValueError("visibility of a zero fringe is undefined")
    return (high - low) / (high + low)


def measured_dimension(
    spec_a: ModeSpectrum,
    spec_b: ModeSpectrum,
    source: Optional[SourceSpectrum] = None,
    samples: Optional[int] = None,
) -> float:
    """Dimensionality read off the simulated fringe; saturates at D when K >> D."""
    return fringe_dimension(coincidence_fringe(spec_a, spec_b, source, samples))
