#!/usr/bin/env python3
"""
Figure Reproduction for Sector-Plate Analyzers
==============================================

Renders the coincidence fringes, the closed-form D(δ) curve and the
optimised D(N) curve from the CSV files written by the command-line tool.
Flat colours, thick axes and outward ticks, saved as PDF and PNG.

Usage:
    python scripts/reproduce_figures.py RESULTS_DIR [--config FILE]

Expected inputs in RESULTS_DIR (each one optional):
    *_fringe.csv    delta_rad,rate        (main.py fringe ... --out)
    analytic.csv    delta_rad,dimension   (main.py analytic --sweep ... --out)
    sweep.csv       n,dimension_max       (main.py optimize --sweep ... --out)
"""

import argparse
import sys
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from loguru import logger

sys.path.append(str(Path(__file__).parent.parent / "src"))

from spectra import fringe_dimension, visibility
from utils.config import Config
from utils.file_handlers import FileHandler
from utils.logger import setup_logger


class FigureReproduction:
    """Publication-style figures from CSV results."""

    def __init__(self, results_dir: str, config: Config):
        self.results_dir = Path(results_dir)
        if not self.results_dir.is_dir():
            raise FileNotFoundError(f"Results directory not found: {self.results_dir}")
        self.output_dir = self.results_dir / "figures"
        self.output_dir.mkdir(exist_ok=True)
        self.config = config
        self.files = FileHandler(config)
        self.setup_aesthetics()

    def setup_aesthetics(self):
        """Flat colour palette, thick edges, generous tick spacing."""
        plt.style.use(self.config.visualization.style)

        self.colors = {
            'primary': '#2c3e50',
            'accent1': '#e74c3c',
            'accent2': '#3498db',
            'accent3': '#16a085',
            'accent4': '#8e44ad',
        }
        self.colors.update(self.config.visualization.colors or {})

        plt.rcParams.update({
            'font.family': 'sans-serif',
            'font.sans-serif': ['Arial', 'Helvetica', 'DejaVu Sans'],
            'font.size': 11,
            'axes.linewidth': 3.5,
            'axes.edgecolor': self.colors['primary'],
            'axes.labelcolor': self.colors['primary'],
            'xtick.major.size': 12,
            'xtick.major.width': 3.5,
            'xtick.direction': 'out',
            'ytick.major.size': 12,
            'ytick.major.width': 3.5,
            'ytick.direction': 'out',
            'xtick.color': self.colors['primary'],
            'ytick.color': self.colors['primary'],
            'legend.frameon': False,
            'figure.facecolor': 'white',
            'savefig.dpi': self.config.visualization.dpi,
            'savefig.bbox': 'tight'
        })

    def _save(self, fig, stem: str):
        for suffix in ("pdf", "png"):
            fig.savefig(self.output_dir / f"{stem}.{suffix}")
        plt.close(fig)
        logger.info(f"✓ {stem} saved to {self.output_dir}")

    def create_fringe_plot(self) -> int:
        """Peak-normalised fringes against Δ in degrees, centred on Δ = 0."""
        paths = sorted(self.results_dir.glob("*_fringe.csv"))
        if not paths:
            logger.warning("No fringe CSV files found")
            return 0

        fig, ax = plt.subplots(figsize=tuple(self.config.visualization.figure_size))
        palette = [self.colors['accent2'], self.colors['accent1'], self.colors['accent3'], self.colors['accent4']]
        for i, path in enumerate(paths):
            fringe = self.files.load_fringe(path)
            degrees = np.rad2deg(fringe.deltas)
            degrees = np.where(degrees > 180.0, degrees - 360.0, degrees)
            order = np.argsort(degrees)
            label = (
                f"{path.stem.replace('_fringe', '')}: D = {fringe_dimension(fringe):.2f}, "
                f"V = {visibility(fringe):.3f}"
            )
            ax.plot(degrees[order], fringe.normalized()[order], color=palette[i % len(palette)],
                    linewidth=3, label=label)

        ax.set_xlabel('Relative orientation Δ (deg)', fontsize=14, fontweight='bold')
        ax.set_ylabel('Normalised coincidence rate', fontsize=14, fontweight='bold')
        ax.set_xlim(-180, 180)
        ax.set_ylim(0, 1.05)
        ax.yaxis.grid(True, alpha=0.3, linestyle='-', linewidth=1)
        ax.legend()
        self._save(fig, "coincidence_fringes")
        return len(paths)

    def create_analytic_plot(self) -> bool:
        path = self.results_dir / "analytic.csv"
        if not path.exists():
            logger.warning(f"{path} not found")
            return False
        rows = np.asarray(self.files.load_analytic(path))

        fig, ax = plt.subplots(figsize=tuple(self.config.visualization.figure_size))
        ax.plot(np.rad2deg(rows[:, 0]), rows[:, 1], color=self.colors['accent4'], linewidth=3)
        for value in (3, 6):
            ax.axhline(y=value, color=self.colors['primary'], linestyle='--', alpha=0.3, linewidth=1)
        ax.set_xlabel('Sector angle δ (deg)', fontsize=14, fontweight='bold')
        ax.set_ylabel('Shannon dimensionality D', fontsize=14, fontweight='bold')
        ax.set_xlim(0, 360)
        self._save(fig, "single_sector_dimension")
        return True

    def create_sweep_plot(self) -> bool:
        """Maximum D against the number of mesas N."""
        path = self.results_dir / "sweep.csv"
        if not path.exists():
            logger.warning(f"{path} not found")
            return False
        rows = np.asarray(self.files.load_sweep(path))

        fig, ax = plt.subplots(figsize=tuple(self.config.visualization.figure_size))
        ax.plot(rows[:, 0], rows[:, 1], color=self.colors['accent1'], marker='o',
                markersize=10, markeredgecolor=self.colors['primary'], markeredgewidth=2, linewidth=3)
        best = rows[-1]
        ax.annotate(f"D = {best[1]:.1f}", xy=(best[0], best[1]), xytext=(-60, -30),
                    textcoords='offset points', fontsize=12, color=self.colors['primary'])
        ax.set_xlabel('Number of mesas N', fontsize=14, fontweight='bold')
        ax.set_ylabel('Maximum dimensionality D', fontsize=14, fontweight='bold')
        ax.set_xticks(rows[:, 0].astype(int))
        ax.yaxis.grid(True, alpha=0.3, linestyle='-', linewidth=1)
        self._save(fig, "dimension_vs_mesas")
        return True

    def run(self):
        made = self.create_fringe_plot()
        made += int(self.create_analytic_plot())
        made += int(self.create_sweep_plot())
        if not made:
            raise FileNotFoundError(f"No CSV results in {self.results_dir}")


def main():
    parser = argparse.ArgumentParser(description="Render figures from analyzer CSV results")
    parser.add_argument("results_dir", help="Directory holding the CSV files")
    parser.add_argument("--config", default=None, help="Configuration file")
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    args = parser.parse_args()

    setup_logger(args.log_level)
    try:
        FigureReproduction(args.results_dir, Config(args.config)).run()
    except (FileNotFoundError, ValueError) as e:
        logger.error(f"✗ {e}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
