"""Configuration management for the sector-plate analyzer toolkit."""

from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Optional

import yaml


@dataclass
class SpectrumConfig:
    """Accuracy of the OAM mode decomposition."""
    residual: float = 1e-6
    search_residual: float = 1e-4
    l_max_cap: int = 4096
    search_l_max_cap: int = 1024


@dataclass
class QuadratureConfig:
    """Numerical-integration cross-check."""
    samples: int = 65536


@dataclass
class FringeConfig:
    """Coincidence-fringe simulation settings."""
    sample_margin: int = 9
    source: str = "flat"
    schmidt_number: float = 31.0
    method: str = "auto"
    quad_points: Optional[int] = None


@dataclass
class OptimizerConfig:
    """Multi-sector plate search settings."""
    budget: int = 20000
    restarts: int = 8
    workers: int = 1
    global_fraction: float = 0.5
    refine: bool = True
    min_step: float = 1e-6
    max_sweeps: int = 10000
    refine_budget: Optional[int] = None


@dataclass
class OutputConfig:
    """Formatting of tables and CSV files."""
    format: str = "table"
    decimals: int = 6
    angle_unit: str = "degrees"


@dataclass
class VisualizationConfig:
    """House style for the reproduced figures."""
    style: str = "default"
    figure_size: list = field(default_factory=lambda: [8, 5])
    dpi: int = 300
    colors: Dict[str, str] = field(default_factory=dict)


def _section(cls, raw: Optional[Dict[str, Any]]):
    # unknown keys are ignored, missing ones keep their defaults
    known = {f.name for f in fields(cls)}
    return cls(**{k: v for k, v in (raw or {}).items() if k in known})


class Config:
    """Main configuration class for the toolkit."""

    def __init__(self, config_path: Optional[str] = None):
        """Initialize configuration from YAML file."""
        if config_path is None:
            config_path = Path(__file__).parent.parent.parent / "config" / "analyzer_config.yaml"

        self.config_path = Path(config_path)
        self._load_config()

    def _load_config(self):
        """Load configuration from YAML file."""
        if not self.config_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {self.config_path}")

        with open(self.config_path, 'r') as f:
            try:
                self._raw_config = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                raise ValueError(f"Invalid configuration file {self.config_path}: {e}")
        if not isinstance(self._raw_config, dict):
            raise ValueError(f"Configuration file {self.config_path} must hold a mapping")

        self.general = self._raw_config.get('general', {})
        self.spectrum = _section(SpectrumConfig, self._raw_config.get('spectrum'))
        self.quadrature = _section(QuadratureConfig, self._raw_config.get('quadrature'))
        self.fringe = _section(FringeConfig, self._raw_config.get('fringe'))
        self.optimizer = _section(OptimizerConfig, self._raw_config.get('optimizer'))
        self.output = _section(OutputConfig, self._raw_config.get('output'))
        self.visualization = _section(VisualizationConfig, self._raw_config.get('visualization'))

    def optimizer_options(self) -> Dict[str, Any]:
        """Flat option dict consumed by the optimizers."""
        options = asdict(self.optimizer)
        options.update(
            residual=self.spectrum.residual,
            search_residual=self.spectrum.search_residual,
            l_max_cap=self.spectrum.l_max_cap,
            search_l_max_cap=self.spectrum.search_l_max_cap,
        )
        return options

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to dictionary."""
        return self._raw_config

    def __repr__(self) -> str:
        return f"Config(config_path={self.config_path})"
