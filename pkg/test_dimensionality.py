#!/usr/bin/env python3
"""Tests for Shannon dimensionality, Schmidt number and the fringe-area estimator."""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path
sys.path.append(str(Path(__file__).parent / "src"))

from plates import TWO_PI, alternating_plate, rotate_plate, single_sector_plate, uniform_plate
from spectra import (
    Fringe,
    ModeSpectrum,
    SourceSpectrum,
    coincidence_fringe,
    fringe_dimension,
    measured_dimension,
    mode_spectrum,
    schmidt_number,
    shannon_dimension,
    single_sector_dimension,
    truncate_spectrum,
)

PI = np.pi


def tail_free(plate, l_max):
    """Window spectrum renormalised to unit power."""
    return truncate_spectrum(mode_spectrum(plate, l_max), l_max)


@pytest.mark.parametrize(
    "gammas, expected",
    [
        ([0.25, 0.25, 0.25, 0.25, 0.0], 4.0),
        ([0.0, 1.0, 0.0], 1.0),
        ([0.1, 0.2, 0.4, 0.2, 0.1], 1.0 / 0.26),
    ],
)
def test_shannon_dimension_of_simple_spectra(gammas, expected):
    assert shannon_dimension(ModeSpectrum.from_gammas(gammas)) == pytest.approx(expected, rel=1e-14)


def test_shannon_dimension_closed_form_plates():
    assert shannon_dimension(mode_spectrum(uniform_plate())) == pytest.approx(1.0, abs=1e-15)
    assert shannon_dimension(mode_spectrum(single_sector_plate(PI))) == pytest.approx(3.0, abs=1e-4)
    assert shannon_dimension(mode_spectrum(single_sector_plate(PI / 2))) == pytest.approx(6.0, abs=1e-4)


def test_shannon_dimension_renormalises_windowed_power():
    # half the power, spread evenly: still four modes
    spectrum = ModeSpectrum.from_gammas([0.125, 0.125, 0.125, 0.125, 0.0])
    assert shannon_dimension(spectrum) == pytest.approx(4.0, rel=1e-14)


def test_shannon_dimension_counts_the_parseval_tail():
    spectrum = mode_spectrum(single_sector_plate(PI / 2), 200)
    assert spectrum.tail_power > 1e-3
    windowed = np.sum(spectrum.gamma) ** 2 / np.sum(spectrum.gamma ** 2)
    # renormalising by the window alone deflates D by about 2·D·tail
    assert abs(windowed - 6.0) > 1e-2
    assert shannon_dimension(spectrum) == pytest.approx(6.0, abs=1e-4)


def test_shannon_dimension_rejects_zero_spectrum():
    with pytest.raises(ValueError):
        shannon_dimension(ModeSpectrum(1, [0.0, 0.0, 0.0]))


def test_shannon_dimension_bounds_and_invariances():
    rng = np.random.default_rng(7)
    for _ in range(20):
        gammas = rng.uniform(0, 1, 9)
        gammas[rng.integers(9)] = 0.0
        gammas /= np.sum(gammas)
        spectrum = ModeSpectrum.from_gammas(gammas)
        d = shannon_dimension(spectrum)
        assert 1.0 <= d <= np.count_nonzero(gammas) + 1e-12
        assert shannon_dimension(ModeSpectrum.from_gammas(0.3 * gammas)) == pytest.approx(d, rel=1e-13)

    plate = alternating_plate(np.sort(rng.uniform(0, TWO_PI, 6)))
    d = shannon_dimension(mode_spectrum(plate, 500))
    assert shannon_dimension(mode_spectrum(rotate_plate(plate, 1.234), 500)) == pytest.approx(d, abs=1e-12)


@pytest.mark.parametrize(
    "delta, expected",
    [(0.0, 1.0), (PI, 3.0), (PI / 2, 6.0), (3 * PI / 2, 6.0), (TWO_PI, 1.0)],
)
def test_single_sector_dimension_anchors(delta, expected):
    assert single_sector_dimension(delta) == pytest.approx(expected, abs=1e-12)


def test_single_sector_dimension_is_symmetric():
    for delta in np.linspace(0, PI, 37):
        assert single_sector_dimension(TWO_PI - delta) == pytest.approx(single_sector_dimension(delta), abs=1e-12)


@pytest.mark.parametrize("delta", [-0.1, 2.2 * PI, 7.0])
def test_single_sector_dimension_range(delta):
    with pytest.raises(ValueError):
        single_sector_dimension(delta)


def test_single_sector_closed_form_matches_spectral_pipeline():
    for delta in np.linspace(0, TWO_PI, 22)[1:-1]:
        spectral = shannon_dimension(mode_spectrum(single_sector_plate(delta)))
        assert abs(spectral - single_sector_dimension(delta)) < 1e-4


def test_spectral_dimension_stable_under_l_max_escalation():
    plate = alternating_plate([0.2, 0.9, 2.0, 2.3, 4.0, 5.1])
    coarse = shannon_dimension(mode_spectrum(plate, 2048))
    fine = shannon_dimension(mode_spectrum(plate, 4096))
    assert abs(coarse - fine) < 1e-4


@pytest.mark.parametrize(
    "weights, expected",
    [
        (np.ones(31), 31.0),
        ([1.0], 1.0),
        ([2.0, 1.0, 1.0], 8.0 / 3.0),
        ([0.5, 0.25, 0.25], 8.0 / 3.0),
    ],
)
def test_schmidt_number(weights, expected):
    source = SourceSpectrum.from_weights(weights)
    assert schmidt_number(source) == pytest.approx(expected, rel=1e-12)


def test_uniform_source_schmidt_number_equals_mode_count():
    for m in (1, 3, 11, 31, 101):
        assert schmidt_number(SourceSpectrum.flat(m // 2)) == pytest.approx(m, rel=1e-12)


def test_source_spectrum_validation():
    with pytest.raises(ValueError, match="nonnegative"):
        SourceSpectrum.from_weights([1.0, -0.5, 1.0])
    with pytest.raises(ValueError, match="all zero"):
        SourceSpectrum.from_weights([0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        SourceSpectrum.from_weights([])
    with pytest.raises(ValueError, match="sum to one"):
        SourceSpectrum(np.array([0.5, 0.2, 0.5]))
    with pytest.raises(ValueError, match="odd length"):
        SourceSpectrum(np.array([0.5, 0.5]))


def test_source_spectrum_even_count_is_padded():
    source = SourceSpectrum.from_weights([1.0, 1.0])
    assert source.weights.size == 3
    assert source.weight(-1) == pytest.approx(0.5)
    assert source.weight(0) == pytest.approx(0.5)
    assert source.weight(1) == 0.0
    assert source.weight(7) == 0.0


@pytest.mark.parametrize("k", [31.0, 100.0])
def test_gaussian_source_has_requested_schmidt_number(k):
    source = SourceSpectrum.gaussian(k)
    assert schmidt_number(source) == pytest.approx(k, rel=1e-3)
    assert np.allclose(source.weights, source.weights[::-1])
    with pytest.raises(ValueError):
        SourceSpectrum.gaussian(0.5)


def test_fringe_dimension_examples():
    deltas = TWO_PI * np.arange(101) / 101
    assert fringe_dimension(Fringe(deltas, np.cos(deltas) ** 2)) == pytest.approx(2.0, abs=1e-12)
    assert fringe_dimension(Fringe(deltas, np.full(101, 0.3))) == pytest.approx(1.0, abs=1e-15)

    m = 100_001
    grid = TWO_PI * np.arange(m) / m
    folded = np.where(grid > PI, grid - TWO_PI, grid)
    parabolic = (1 - 2 * np.abs(folded) / PI) ** 2
    assert fringe_dimension(Fringe(grid, parabolic)) == pytest.approx(3.0, abs=1e-6)


def test_fringe_dimension_errors():
    deltas = TWO_PI * np.arange(8) / 8
    with pytest.raises(ValueError, match="zero peak"):
        fringe_dimension(Fringe(deltas, np.zeros(8)))
    with pytest.raises(ValueError, match="uniform grid"):
        Fringe(np.linspace(0, PI, 8), np.ones(8))


def test_fringe_dimension_equals_shannon_dimension_on_exact_grid():
    rng = np.random.default_rng(17)
    for _ in range(50):
        n_mesas = int(rng.integers(1, 6))
        plate = alternating_plate(np.sort(rng.uniform(0, TWO_PI, 2 * n_mesas)))
        spectrum = tail_free(plate, 64)
        fringe = coincidence_fringe(spectrum, spectrum)
        assert fringe.samples >= 4 * 64 + 1
        assert abs(fringe_dimension(fringe) - shannon_dimension(spectrum)) < 1e-9


def test_measured_dimension_saturates_for_broad_sources():
    spectrum = tail_free(single_sector_plate(PI), 20)
    d = shannon_dimension(spectrum)
    assert measured_dimension(spectrum, spectrum) == pytest.approx(d, abs=1e-9)
    assert measured_dimension(spectrum, spectrum, SourceSpectrum.gaussian(2000.0)) == pytest.approx(d, rel=5e-3)
    narrow = measured_dimension(spectrum, spectrum, SourceSpectrum.gaussian(2.0))
    assert 1.0 <= narrow < 2.5
