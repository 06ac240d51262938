"""Mode spectra, dimensionality and coincidence fringes of sector-plate analyzers."""

from .dimensionality import (
    SourceSpectrum,
    fringe_dimension,
    schmidt_number,
    shannon_dimension,
    single_sector_dimension,
)
from .fringe import (
    Fringe,
    analyzer_overlap,
    check_samples,
    coincidence_fringe,
    default_samples,
    fringe_extrema,
    fringe_rate_at,
    gram_matrix,
    measured_dimension,
    overlap_fringe_oracle,
    sharpened_visibility,
    tail_corrected_peak,
    truncation_bound,
    visibility,
)
from .mode_decomposition import (
    DEFAULT_RESIDUAL,
    L_MAX_CAP,
    SEARCH_L_MAX_CAP,
    SEARCH_RESIDUAL,
    ModeSpectrum,
    captured_power,
    default_l_max,
    detection_operator_eigenvalues,
    mode_spectrum,
    mode_spectrum_quadrature,
    truncate_spectrum,
)

__all__ = [
    "DEFAULT_RESIDUAL",
    "L_MAX_CAP",
    "SEARCH_L_MAX_CAP",
    "SEARCH_RESIDUAL",
    "Fringe",
    "ModeSpectrum",
    "SourceSpectrum",
    "analyzer_overlap",
    "captured_power",
    "check_samples",
    "coincidence_fringe",
    "default_l_max",
    "default_samples",
    "detection_operator_eigenvalues",
    "fringe_dimension",
    "fringe_extrema",
    "fringe_rate_at",
    "gram_matrix",
    "measured_dimension",
    "mode_spectrum",
    "mode_spectrum_quadrature",
    "overlap_fringe_oracle",
    "schmidt_number",
    "sharpened_visibility",
    "shannon_dimension",
    "single_sector_dimension",
    "tail_corrected_peak",
    "truncate_spectrum",
    "truncation_bound",
    "visibility",
]
