"""OAM mode spectrum of the detection state of a sector-plate analyzer.

The analyzer (plate lens-coupled to a single-mode fiber) projects onto the
state sum_l c_l |l>, with

    c_l = (1/2π) ∫ t(θ) e^{-ilθ} dθ.

For a piecewise-constant plate the integral is a finite sum over the phase
jumps at the sector boundaries, so the exact spectrum is cheap; an
independent midpoint-quadrature evaluation serves as an oracle.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from loguru import logger

from plates import TWO_PI, SectorPlate, transmission_at

# Default l_max rule: smallest L whose Parseval residual drops below RESIDUAL,
# never above L_MAX_CAP
DEFAULT_RESIDUAL = 1e-6
SEARCH_RESIDUAL = 1e-4
L_MAX_CAP = 4096

# Window cap of the search tier; D converges like l_max⁻³ there
SEARCH_L_MAX_CAP = 1024

# First window tried by the l_max rule
INITIAL_WINDOW = 64

# Captured power may exceed unity only by rounding
POWER_SLACK = 1e-9

# Retained power below this cannot be renormalised
NEGLIGIBLE_POWER = 1e-18


@dataclass(frozen=True, eq=False)
class ModeSpectrum:
    """Expansion coefficients c_l over l in [-l_max, l_max].

    ``tail_power`` is the power known to lie outside the window (the Parseval
    residual of a plate spectrum); ``error_bound`` is the quadrature error
    bound when the coefficients come from numerical integration.
    """

    l_max: int
    coefficients: np.ndarray
    tail_power: float = 0.0
    error_bound: float = 0.0

    def __post_init__(self):
        if int(self.l_max) != self.l_max or self.l_max < 0:
            raise ValueError(f"l_max must be a nonnegative integer (got {self.l_max!r})")
        coefficients = np.array(self.coefficients, dtype=complex).reshape(-1)
        if coefficients.size != 2 * int(self.l_max) + 1:
            raise ValueError(
                f"expected {2 * int(self.l_max) + 1} coefficients for l_max={self.l_max}, "
                f"got {coefficients.size}"
            )
        if self.tail_power < 0.0:
            raise ValueError(f"tail_power must be nonnegative (got {self.tail_power!r})")
        if self.error_bound < 0.0:
            raise ValueError(f"error_bound must be nonnegative (got {self.error_bound!r})")
        total = float(np.sum(np.abs(coefficients) ** 2)) + self.tail_power
        # each quadrature coefficient may be off by at most error_bound
        allowed = (1.0 + np.sqrt(coefficients.size) * self.error_bound) ** 2 + POWER_SLACK
        if total > allowed:
            raise ValueError(f"total power {total!r} exceeds unity")
        coefficients.setflags(write=False)
        object.__setattr__(self, "l_max", int(self.l_max))
        object.__setattr__(self, "coefficients", coefficients)

    @classmethod
    def from_gammas(cls, gammas, l_max: Optional[int] = None) -> "ModeSpectrum":
        """Spectrum with real coefficients √γ_l, centred on l = 0."""
        gammas = np.asarray(gammas, dtype=float)
        if np.any(gammas < 0):
            raise ValueError("mode weights must be nonnegative")
        if l_max is None:
            if gammas.size % 2 == 0:
                raise ValueError("a centred window needs an odd number of weights")
            l_max = gammas.size // 2
        return cls(l_max, np.sqrt(gammas))

    @property
    def ls(self) -> np.ndarray:
        return np.arange(-self.l_max, self.l_max + 1)

    @property
    def gamma(self) -> np.ndarray:
        """Mode weights γ_l = |c_l|²."""
        return np.abs(self.coefficients) ** 2

    def coefficient(self, l: int) -> complex:
        """c_l, zero outside the window."""
        if abs(l) > self.l_max:
            return 0j
        return complex(self.coefficients[l + self.l_max])

    def padded(self, l_max: int) -> np.ndarray:
        """Coefficients on the wider window [-l_max, l_max], zero-filled."""
        if l_max < self.l_max:
            raise ValueError(f"cannot pad window {self.l_max} down to {l_max}")
        out = np.zeros(2 * l_max + 1, dtype=complex)
        offset = l_max - self.l_max
        out[offset:offset + self.coefficients.size] = self.coefficients
        return out

    def to_records(self):
        return [
            {"l": int(l), "re_c": float(c.real), "im_c": float(c.imag), "gamma": float(g)}
            for l, c, g in zip(self.ls, self.coefficients, self.gamma)
        ]


def _phase_jumps(plate: SectorPlate) -> np.ndarray:
    """e^{iφ_k} − e^{iφ_{k−1}} at every boundary (cyclic)."""
    values = np.cos(plate.phases) + 1j * np.sin(plate.phases)
    return values - np.roll(values, 1)


def _jump_sums(plate: SectorPlate, ls: np.ndarray, jumps: np.ndarray):
    """(c_l, c_{-l}) for positive orders ``ls``."""
    kernel = np.exp(-1j * np.outer(ls, plate.boundaries))
    # summation by parts over sectors: c_l = sum_k J_k e^{-il b_k} / (2πil)
    positive = (kernel @ jumps) / (2j * np.pi * ls)
    negative = (np.conj(kernel) @ jumps) / (-2j * np.pi * ls)
    return positive, negative


def _exact_coefficients(plate: SectorPlate, l_max: int) -> np.ndarray:
    values = np.cos(plate.phases) + 1j * np.sin(plate.phases)
    c0 = np.sum(values * plate.widths) / TWO_PI
    positive, negative = _jump_sums(plate, np.arange(1, l_max + 1, dtype=float), _phase_jumps(plate))
    return np.concatenate([negative[::-1], [c0], positive])


def default_l_max(
    plate: SectorPlate,
    residual: float = DEFAULT_RESIDUAL,
    cap: int = L_MAX_CAP,
) -> int:
    """Smallest L with 1 − captured power < residual, capped at ``cap``."""
    return _select_window(plate, residual, cap)[0]


def _select_window(plate: SectorPlate, residual: float, cap: int):
    if residual <= 0:
        raise ValueError(f"residual must be positive (got {residual!r})")
    if cap < 0:
        raise ValueError(f"l_max cap must be nonnegative (got {cap!r})")
    jumps = _phase_jumps(plate)
    window = min(cap, INITIAL_WINDOW)
    coefficients = _exact_coefficients(plate, window)
    # the window doubles until the residual target is met or the cap is reached
    while True:
        gamma = np.abs(coefficients) ** 2
        # captured power of [-L, L] for every L = 0..window
        paired = gamma[window + 1:] + gamma[:window][::-1]
        captured = gamma[window] + np.concatenate([[0.0], np.cumsum(paired)])
        below = np.nonzero(1.0 - captured < residual)[0]
        if below.size or window == cap:
            break
        grown = min(cap, 2 * window)
        positive, negative = _jump_sums(plate, np.arange(window + 1, grown + 1, dtype=float), jumps)
        coefficients = np.concatenate([negative[::-1], coefficients, positive])
        window = grown
    l_max = int(below[0]) if below.size else cap
    if not below.size:
        logger.debug(
            f"l_max capped at {cap}: residual {1.0 - captured[-1]:.3e} above target {residual:.1e}"
        )
    return l_max, coefficients[window - l_max:window + l_max + 1]


def mode_spectrum(
    plate: SectorPlate,
    l_max: Optional[int] = None,
    *,
    residual: float = DEFAULT_RESIDUAL,
    cap: int = L_MAX_CAP,
) -> ModeSpectrum:
    """Exact spectrum of the plate's detection state.

    With ``l_max=None`` the window follows the default rule (see
    ``default_l_max``).
    """
    if l_max is None:
        l_max, coefficients = _select_window(plate, residual, cap)
    else:
        if l_max < 0:
            raise ValueError(f"l_max must be nonnegative (got {l_max!r})")
        coefficients = _exact_coefficients(plate, int(l_max))
    captured = float(np.sum(np.abs(coefficients) ** 2))
    return ModeSpectrum(int(l_max), coefficients, tail_power=max(0.0, 1.0 - captured))


def mode_spectrum_quadrature(plate: SectorPlate, l_max: int, samples: int) -> ModeSpectrum:
    """Same integral by composite midpoint quadrature.

    The uniform grid of ``samples`` nodes is split at every sector boundary so
    the integrand is smooth on each panel. On a panel of width w the midpoint
    rule misses ∫e^{-ilθ} by a factor 1 − sinc(lw/2) ≤ (lw)²/24, which gives
    the reported error bound.
    """
    if l_max < 0:
        raise ValueError(f"l_max must be nonnegative (got {l_max!r})")
    required = 4 * (l_max + plate.n_sectors)
    if samples < required:
        raise ValueError(f"{samples} quadrature samples are too few; need at least {required}")

    nodes = np.union1d(TWO_PI * np.arange(samples) / samples, plate.boundaries)
    widths = np.diff(np.append(nodes, TWO_PI))
    midpoints = nodes + 0.5 * widths
    weighted = widths * transmission_at(plate, midpoints) / TWO_PI

    ls = np.arange(-l_max, l_max + 1)
    coefficients = np.empty(ls.size, dtype=complex)
    chunk = max(1, 2_000_000 // nodes.size)
    for start in range(0, ls.size, chunk):
        block = ls[start:start + chunk]
        coefficients[start:start + chunk] = np.exp(-1j * np.outer(block, midpoints)) @ weighted

    bound = (l_max * float(np.max(widths))) ** 2 / 24.0
    captured = float(np.sum(np.abs(coefficients) ** 2))
    return ModeSpectrum(
        int(l_max),
        coefficients,
        tail_power=max(0.0, 1.0 - captured),
        error_bound=bound,
    )


def truncate_spectrum(spectrum: ModeSpectrum, l_cut: int) -> ModeSpectrum:
    """Hard OAM cutoff (aperture): drop |l| > l_cut and renormalise to unit power."""
    if l_cut < 0:
        raise ValueError(f"l_cut must be nonnegative (got {l_cut!r})")
    # the window shrinks to the cutoff
    l_keep = min(int(l_cut), spectrum.l_max)
    coefficients = spectrum.coefficients[spectrum.l_max - l_keep:spectrum.l_max + l_keep + 1]
    retained = float(np.sum(np.abs(coefficients) ** 2))
    if retained <= NEGLIGIBLE_POWER:
        raise ValueError(f"no power survives the cutoff l_cut={l_cut}; cannot renormalise")
    return ModeSpectrum(l_keep, coefficients / np.sqrt(retained))


def captured_power(spectrum: ModeSpectrum) -> float:
    """Σγ_l over the window; 1 − captured power is the Parseval residual."""
    return float(np.sum(spectrum.gamma))


def detection_operator_eigenvalues(spectrum: ModeSpectrum) -> np.ndarray:
    """Eigenvalues γ_l of the detector sensitivity operator, largest first."""
    return np.sort(spectrum.gamma)[::-1]
