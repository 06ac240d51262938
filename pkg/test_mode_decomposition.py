#!/usr/bin/env python3
"""Tests for the OAM mode decomposition of sector plates."""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path
sys.path.append(str(Path(__file__).parent / "src"))

from plates import (
    TWO_PI,
    make_sector_plate,
    rotate_plate,
    single_sector_plate,
    uniform_plate,
)
from spectra import (
    DEFAULT_RESIDUAL,
    L_MAX_CAP,
    ModeSpectrum,
    captured_power,
    default_l_max,
    detection_operator_eigenvalues,
    mode_spectrum,
    mode_spectrum_quadrature,
    truncate_spectrum,
)

PI = np.pi
HALF = single_sector_plate(PI)
QUARTER = single_sector_plate(PI / 2)


def random_plate(rng, n_sectors, binary=False):
    boundaries = np.sort(rng.uniform(0, TWO_PI, n_sectors))
    if binary:
        phases = np.tile([PI, 0.0], n_sectors)[:n_sectors]
    else:
        phases = rng.uniform(0, TWO_PI, n_sectors)
    return make_sector_plate(boundaries, phases)


def test_uniform_plate_spectrum():
    spectrum = mode_spectrum(uniform_plate(), 5)
    expected = np.zeros(11, dtype=complex)
    expected[5] = 1.0
    assert np.allclose(spectrum.coefficients, expected, atol=1e-15)
    assert captured_power(spectrum) == pytest.approx(1.0, abs=1e-15)
    assert mode_spectrum(uniform_plate()).l_max == 0


def test_half_sector_spectrum_has_only_odd_modes():
    spectrum = mode_spectrum(HALF, 50)
    gamma = spectrum.gamma
    even = spectrum.ls % 2 == 0
    assert np.all(gamma[even] < 1e-30)
    assert spectrum.coefficient(1) == pytest.approx(spectrum.coefficient(-1).conjugate())
    assert gamma[spectrum.ls == 1][0] == pytest.approx(4 / PI ** 2, abs=1e-15)
    assert gamma[spectrum.ls == -1][0] == pytest.approx(4 / PI ** 2, abs=1e-15)
    odd_l = np.arange(1, 50, 2)
    assert np.allclose(gamma[spectrum.l_max + odd_l], 4 / (PI * odd_l) ** 2, atol=1e-15)


def test_quarter_sector_squares_converge_to_one_sixth():
    spectrum = mode_spectrum(QUARTER, L_MAX_CAP)
    total = captured_power(spectrum) + spectrum.tail_power
    assert total == pytest.approx(1.0, abs=1e-12)
    squares = np.sum(spectrum.gamma ** 2) / total ** 2
    assert squares == pytest.approx(1 / 6, abs=1e-8)


def test_negative_l_max_rejected():
    with pytest.raises(ValueError):
        mode_spectrum(HALF, -1)
    with pytest.raises(ValueError):
        mode_spectrum_quadrature(HALF, -1, 100)


def test_captured_power_tail_bound_for_half_sector():
    spectrum = mode_spectrum(HALF, 101)
    residual = 1.0 - captured_power(spectrum)
    assert 0 < residual < 4 / (PI ** 2 * 101)
    assert spectrum.tail_power == pytest.approx(residual, abs=1e-15)


def test_captured_power_is_monotone_in_l_max():
    plate = random_plate(np.random.default_rng(0), 5)
    powers = [captured_power(mode_spectrum(plate, l)) for l in (0, 1, 2, 5, 10, 50, 200, 1000)]
    assert all(b >= a - 1e-15 for a, b in zip(powers, powers[1:]))
    assert powers[-1] > 0.99
    assert powers[-1] <= 1.0 + 1e-9


def test_default_l_max_rule():
    assert default_l_max(uniform_plate()) == 0

    residual = 1e-3
    l_max = default_l_max(HALF, residual)
    assert 1.0 - captured_power(mode_spectrum(HALF, l_max)) < residual
    assert 1.0 - captured_power(mode_spectrum(HALF, l_max - 1)) >= residual
    assert mode_spectrum(HALF, residual=residual).l_max == l_max

    # the 1/l² tails of a sector plate need more than the cap at the default residual
    assert default_l_max(QUARTER) == L_MAX_CAP
    assert default_l_max(QUARTER, DEFAULT_RESIDUAL, cap=64) == 64

    with pytest.raises(ValueError):
        default_l_max(HALF, residual=0.0)


def test_default_spectrum_matches_fixed_window():
    spectrum = mode_spectrum(QUARTER, residual=1e-2)
    fixed = mode_spectrum(QUARTER, spectrum.l_max)
    assert np.allclose(spectrum.coefficients, fixed.coefficients, atol=1e-15)


def test_l_max_rule_is_independent_of_window_growth():
    cap = 1024
    gamma = mode_spectrum(QUARTER, cap).gamma
    captured = gamma[cap] + np.concatenate([[0.0], np.cumsum(gamma[cap + 1:] + gamma[:cap][::-1])])
    for residual in (1e-1, 1e-2, 3e-3, 1e-3):
        expected = int(np.nonzero(1.0 - captured < residual)[0][0])
        assert default_l_max(QUARTER, residual, cap=cap) == expected


def test_binary_plates_have_conjugate_symmetric_spectra():
    rng = np.random.default_rng(1)
    for _ in range(20):
        plate = random_plate(rng, 2 * int(rng.integers(1, 5)), binary=True)
        spectrum = mode_spectrum(plate, 40)
        c = spectrum.coefficients
        assert np.allclose(c[::-1], np.conj(c), atol=1e-14)
        assert np.allclose(spectrum.gamma, spectrum.gamma[::-1], atol=1e-14)


def test_rotation_theorem():
    rng = np.random.default_rng(2)
    for _ in range(20):
        plate = random_plate(rng, int(rng.integers(1, 7)))
        alpha = rng.uniform(-TWO_PI, TWO_PI)
        spectrum = mode_spectrum(plate, 30)
        rotated = mode_spectrum(rotate_plate(plate, alpha), 30)
        expected = spectrum.coefficients * np.exp(-1j * spectrum.ls * alpha)
        assert np.allclose(rotated.coefficients, expected, rtol=0, atol=1e-12)
        assert np.allclose(rotated.gamma, spectrum.gamma, rtol=0, atol=1e-12)


def test_quadrature_uniform_plate_is_exact():
    spectrum = mode_spectrum_quadrature(uniform_plate(), 3, 64)
    assert spectrum.coefficient(0) == pytest.approx(1.0, abs=1e-15)
    assert max(abs(spectrum.coefficient(l)) for l in (-3, -2, -1, 1, 2, 3)) < 1e-14


def test_quadrature_half_sector_first_mode():
    exact = mode_spectrum(HALF, 3)
    quad = mode_spectrum_quadrature(HALF, 3, 100_000)
    assert abs(quad.coefficient(1) - exact.coefficient(1)) < 1e-9


def test_quadrature_matches_exact_on_random_three_sector_plate():
    plate = random_plate(np.random.default_rng(4), 3)
    exact = mode_spectrum(plate, 10)
    quad = mode_spectrum_quadrature(plate, 10, 100_000)
    assert np.max(np.abs(quad.coefficients - exact.coefficients)) < 1e-8


def test_quadrature_within_reported_bound_for_random_plates():
    rng = np.random.default_rng(5)
    for _ in range(100):
        plate = random_plate(rng, int(rng.integers(1, 6)))
        exact = mode_spectrum(plate, 8)
        quad = mode_spectrum_quadrature(plate, 8, 2000)
        assert quad.error_bound > 0
        assert np.max(np.abs(quad.coefficients - exact.coefficients)) <= quad.error_bound + 1e-14


def test_quadrature_requires_enough_samples():
    with pytest.raises(ValueError, match="too few"):
        mode_spectrum_quadrature(HALF, 10, 4 * (10 + 2) - 1)


@pytest.mark.parametrize("delta", [0.3, 1.0, 2.5])
def test_single_sector_mean_transmission(delta):
    quad = mode_spectrum_quadrature(single_sector_plate(delta), 0, 10_000)
    assert abs(quad.coefficient(0)) == pytest.approx(abs(1 - delta / PI), abs=1e-12)
    assert abs(mode_spectrum(single_sector_plate(delta), 0).coefficient(0)) == pytest.approx(
        abs(1 - delta / PI), abs=1e-15
    )


def test_truncate_half_sector_to_first_modes():
    truncated = truncate_spectrum(mode_spectrum(HALF, 20), 1)
    assert truncated.l_max == 1
    gamma = truncated.gamma
    assert gamma[truncated.ls == 1][0] == pytest.approx(0.5, abs=1e-15)
    assert gamma[truncated.ls == -1][0] == pytest.approx(0.5, abs=1e-15)
    # γ_0 vanishes up to rounding of e^{iπ}
    assert np.all(gamma[np.abs(truncated.ls) != 1] < 1e-30)
    assert truncated.tail_power == 0.0


def test_truncate_beyond_window_only_rescales():
    spectrum = mode_spectrum(QUARTER, 30)
    truncated = truncate_spectrum(spectrum, 30)
    scale = np.sqrt(captured_power(spectrum))
    assert np.allclose(truncated.coefficients * scale, spectrum.coefficients, atol=1e-15)
    assert captured_power(truncated) == pytest.approx(1.0, abs=1e-14)


def test_truncate_errors():
    with pytest.raises(ValueError, match="no power"):
        truncate_spectrum(mode_spectrum(HALF, 20), 0)
    with pytest.raises(ValueError):
        truncate_spectrum(mode_spectrum(HALF, 20), -1)


def test_mode_spectrum_validation():
    with pytest.raises(ValueError, match="exceeds unity"):
        ModeSpectrum(1, [1.0, 0.5, 0.0])
    with pytest.raises(ValueError, match="expected 3"):
        ModeSpectrum(1, [1.0, 0.0])
    with pytest.raises(ValueError):
        ModeSpectrum(0, [1.0], tail_power=-0.1)
    spectrum = ModeSpectrum.from_gammas([0.25, 0.5, 0.25])
    assert spectrum.l_max == 1
    assert spectrum.coefficient(5) == 0j
    assert np.allclose(spectrum.padded(3), [0, 0, 0.5, np.sqrt(0.5), 0.5, 0, 0])


def test_detection_operator_eigenvalues_sorted():
    spectrum = mode_spectrum(QUARTER, 20)
    eigenvalues = detection_operator_eigenvalues(spectrum)
    assert np.all(np.diff(eigenvalues) <= 0)
    assert np.sum(eigenvalues) == pytest.approx(captured_power(spectrum))


def test_spectrum_records():
    records = mode_spectrum(HALF, 1).to_records()
    assert [r["l"] for r in records] == [-1, 0, 1]
    assert set(records[0]) == {"l", "re_c", "im_c", "gamma"}
    assert records[2]["gamma"] == pytest.approx(4 / PI ** 2)
