#!/usr/bin/env python3
"""Command-line front end for sector-plate OAM analyzers."""

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger

# Add src to path
sys.path.append(str(Path(__file__).parent))

from utils.config import Config
from utils.file_handlers import FileHandler
from utils.logger import setup_logger
from optimization import dimension_vs_sectors, optimize_plate
from spectra import (
    SourceSpectrum,
    captured_power,
    check_samples,
    coincidence_fringe,
    default_l_max,
    default_samples,
    fringe_dimension,
    mode_spectrum,
    mode_spectrum_quadrature,
    overlap_fringe_oracle,
    schmidt_number,
    shannon_dimension,
    sharpened_visibility,
    single_sector_dimension,
    tail_corrected_peak,
    truncate_spectrum,
    visibility,
)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1 (got {value})")
    return value


def _nonnegative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative (got {value})")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive (got {value})")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subcommand per analysis."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="Configuration file")
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (logs go to stderr)"
    )
    common.add_argument("--l-max", type=_nonnegative_int, help="Fixed OAM window instead of the residual rule")
    common.add_argument("--residual", type=_positive_float, help="Parseval residual for the l_max rule")
    common.add_argument("--samples", type=_positive_int, help="Fringe or quadrature sample count")
    common.add_argument("--seed", type=_nonnegative_int, default=0, help="Random seed")
    common.add_argument("--out", help="Output file (stdout when omitted)")
    common.add_argument("--format", choices=["table", "csv"], help="Output format")
    common.add_argument("--radians", action="store_true", help="Angles on the command line are in radians")

    parser = argparse.ArgumentParser(description="Sector-plate OAM analyzer toolkit")
    commands = parser.add_subparsers(dest="command", required=True)

    dim = commands.add_parser("dim", parents=[common], help="Shannon dimensionality of a plate")
    dim.add_argument("plate", help="Plate file")
    dim.add_argument("--l-cut", type=_nonnegative_int, help="OAM aperture cutoff")

    spectrum = commands.add_parser("spectrum", parents=[common], help="OAM spectrum of a plate")
    spectrum.add_argument("plate", help="Plate file")
    spectrum.add_argument("--l-cut", type=_nonnegative_int, help="OAM aperture cutoff")
    spectrum.add_argument("--quadrature", action="store_true", help="Numerical integration instead of the exact sum")

    fringe = commands.add_parser("fringe", parents=[common], help="Coincidence fringe of two analyzers")
    fringe.add_argument("plate_a", help="Plate file of analyzer A")
    fringe.add_argument("plate_b", nargs="?", help="Plate file of analyzer B (defaults to A)")
    fringe.add_argument("--l-cut", type=_nonnegative_int, help="OAM aperture cutoff on both arms")
    fringe.add_argument("--method", choices=["auto", "fourier", "overlap"], help="Fringe evaluation path")
    fringe.add_argument("--source", choices=["flat", "gaussian"], help="Source Schmidt spectrum")
    fringe.add_argument("--schmidt", type=_positive_float, help="Schmidt number K of a gaussian source")
    fringe.add_argument("--weights", help="File of source Schmidt weights (overrides --source)")

    analytic = commands.add_parser("analytic", parents=[common], help="Closed-form D of single-sector plates")
    group = analytic.add_mutually_exclusive_group(required=True)
    group.add_argument("--delta", type=float, help="Sector angle")
    group.add_argument("--sweep", type=float, nargs=3, metavar=("START", "STOP", "STEP"), help="Sector-angle sweep")

    optimize = commands.add_parser("optimize", parents=[common], help="Maximise D over 2N-sector plates")
    optimize.add_argument("--mesas", type=_positive_int, required=True, help="Number of π sectors N")
    optimize.add_argument("--budget", type=_positive_int, help="Monte-Carlo evaluations per N")
    optimize.add_argument("--restarts", type=_positive_int, help="Independent restarts")
    optimize.add_argument("--workers", type=_positive_int, help="Worker processes for restarts")
    optimize.add_argument("--no-refine", action="store_true", help="Random search only")
    optimize.add_argument("--sweep", action="store_true", help="Optimise every N in 1..mesas, write n,dimension_max")

    schmidt = commands.add_parser("schmidt", parents=[common], help="Schmidt number of a weights file")
    schmidt.add_argument("weights", help="Weights file")

    return parser


class Runner:
    """Executes one parsed subcommand."""

    def __init__(self, args: argparse.Namespace, config: Config):
        self.args = args
        self.config = config
        self.files = FileHandler(config)
        self.output_format = args.format or config.output.format
        self.decimals = config.output.decimals
        self.residual = args.residual if args.residual is not None else config.spectrum.residual
        self.cap = config.spectrum.l_max_cap
        self.radians = args.radians or config.output.angle_unit == "radians"

    def emit(self, lines: Sequence[str]):
        for line in lines:
            print(line)

    def fmt(self, value: float) -> str:
        return f"{value:.{self.decimals}f}"

    def angle(self, value: float) -> float:
        return value if self.radians else float(np.deg2rad(value))

    def spectrum_of(self, plate, l_cut: Optional[int] = None):
        spectrum = mode_spectrum(plate, self.args.l_max, residual=self.residual, cap=self.cap)
        if l_cut is not None:
            spectrum = truncate_spectrum(spectrum, l_cut)
        return spectrum

    def cmd_dim(self) -> int:
        plate = self.files.load_plate(self.args.plate)
        spectrum = self.spectrum_of(plate, self.args.l_cut)
        dimension = shannon_dimension(spectrum)
        captured = captured_power(spectrum)
        logger.info(f"✓ {self.args.plate}: {plate.n_sectors} sectors")
        if self.output_format == "csv":
            self.emit(["dimension,l_max,captured_power", f"{dimension!r},{spectrum.l_max},{captured!r}"])
        else:
            self.emit([
                f"D = {self.fmt(dimension)}",
                f"l_max = {spectrum.l_max}",
                f"captured_power = {self.fmt(captured)}",
            ])
        return 0

    def cmd_spectrum(self) -> int:
        plate = self.files.load_plate(self.args.plate)
        if self.args.quadrature:
            l_max = self.args.l_max if self.args.l_max is not None else default_l_max(plate, self.residual, self.cap)
            samples = self.args.samples or max(self.config.quadrature.samples, 4 * (l_max + plate.n_sectors))
            spectrum = mode_spectrum_quadrature(plate, l_max, samples)
            if self.args.l_cut is not None:
                spectrum = truncate_spectrum(spectrum, self.args.l_cut)
        else:
            spectrum = self.spectrum_of(plate, self.args.l_cut)

        if self.output_format == "csv" or self.args.out:
            self.files.save_spectrum(spectrum, self.args.out)
        if self.output_format == "table":
            lines = [f"{'l':>6} {'re_c':>12} {'im_c':>12} {'gamma':>12}"]
            for record in spectrum.to_records():
                if record["gamma"] == 0.0:
                    continue
                lines.append(
                    f"{record['l']:>6} {self.fmt(record['re_c']):>12} "
                    f"{self.fmt(record['im_c']):>12} {self.fmt(record['gamma']):>12}"
                )
            lines.append(f"D = {self.fmt(shannon_dimension(spectrum))}")
            self.emit(lines)
        return 0

    def source(self) -> Optional[SourceSpectrum]:
        if self.args.weights:
            return SourceSpectrum.from_weights(self.files.load_weights(self.args.weights))
        kind = self.args.source or self.config.fringe.source
        if kind == "gaussian":
            k = self.args.schmidt if self.args.schmidt is not None else self.config.fringe.schmidt_number
            return SourceSpectrum.gaussian(k)
        if kind != "flat":
            raise ValueError(f"Unknown source spectrum: {kind}")
        return None

    def cmd_fringe(self) -> int:
        plate_a = self.files.load_plate(self.args.plate_a)
        plate_b = self.files.load_plate(self.args.plate_b) if self.args.plate_b else plate_a
        method = self.args.method or self.config.fringe.method
        source = self.source()
        if method == "auto":
            method = "overlap" if (source is None and self.args.l_cut is None) else "fourier"
        if method == "overlap" and (source is not None or self.args.l_cut is not None):
            raise ValueError("the real-space overlap is the flat-source, untruncated fringe")

        if method == "overlap":
            l_max = self.args.l_max
            if l_max is None:
                l_max = max(default_l_max(p, self.residual, self.cap) for p in (plate_a, plate_b))
            samples = self.args.samples or default_samples(l_max)
            check_samples(samples, l_max)
            fringe = overlap_fringe_oracle(plate_a, plate_b, samples, self.config.fringe.quad_points)
            vis = visibility(fringe)
            corrected = None
        else:
            spec_a = self.spectrum_of(plate_a, self.args.l_cut)
            spec_b = self.spectrum_of(plate_b, self.args.l_cut)
            l_max = max(spec_a.l_max, spec_b.l_max)
            samples = self.args.samples or 4 * l_max + self.config.fringe.sample_margin
            fringe = coincidence_fringe(spec_a, spec_b, source, samples)
            # extrema of the band-limited fringe, wherever they fall between samples
            vis = sharpened_visibility(spec_a, spec_b, source)
            corrected = None
            if source is None and spec_a.tail_power + spec_b.tail_power > 0:
                corrected = fringe_dimension(fringe, peak=tail_corrected_peak(fringe, spec_a, spec_b))

        dimension = fringe_dimension(fringe)
        logger.info(f"✓ {method} fringe with {fringe.samples} samples")

        if self.args.out:
            self.files.save_fringe(fringe, self.args.out)
        elif self.output_format == "csv":
            self.files.save_fringe(fringe)
            logger.info(f"visibility = {self.fmt(vis)}, D = {self.fmt(dimension)}")
            return 0
        lines = [f"visibility = {self.fmt(vis)}", f"D = {self.fmt(dimension)}"]
        if corrected is not None:
            lines.append(f"D_tail_corrected = {self.fmt(corrected)}")
        self.emit(lines)
        return 0

    def cmd_analytic(self) -> int:
        if self.args.delta is not None:
            deltas = [self.angle(self.args.delta)]
        else:
            start, stop, step = self.args.sweep
            if step <= 0:
                raise ValueError(f"sweep step must be positive (got {step})")
            count = int(np.floor((stop - start) / step + 1e-9)) + 1
            deltas = [self.angle(start + i * step) for i in range(max(count, 0))]
        dimensions = [single_sector_dimension(delta) for delta in deltas]

        if self.output_format == "csv" or self.args.out:
            self.files.save_analytic(deltas, dimensions, self.args.out)
        if self.output_format == "table":
            lines = [f"{'delta_rad':>12} {'dimension':>12}"]
            lines += [f"{self.fmt(d):>12} {self.fmt(v):>12}" for d, v in zip(deltas, dimensions)]
            self.emit(lines)
        return 0

    def cmd_optimize(self) -> int:
        options = self.config.optimizer_options()
        options["residual"] = self.residual
        budget = self.args.budget or self.config.optimizer.budget
        refine = self.config.optimizer.refine and not self.args.no_refine
        kwargs = dict(
            refine=refine,
            restarts=self.args.restarts,
            workers=self.args.workers,
            config=options,
        )

        if self.args.sweep:
            reports = dimension_vs_sectors(self.args.mesas, budget, self.args.seed, **kwargs)
            if self.output_format == "csv" or self.args.out:
                self.files.save_sweep(reports, self.args.out)
            if self.output_format == "table":
                lines = [f"{'n':>4} {'dimension_max':>14}"]
                lines += [f"{r.n_mesas:>4} {self.fmt(r.best_dimension):>14}" for r in reports]
                self.emit(lines)
            return 0

        report = optimize_plate(self.args.mesas, budget, self.args.seed, **kwargs)
        if self.args.out:
            self.files.save_report(report, self.args.out)
            logger.info(f"✓ Report saved to {self.args.out}")
        if self.output_format == "csv":
            self.emit([
                "n,dimension,evaluations,seed,l_max",
                f"{report.n_mesas},{report.best_dimension!r},{report.evaluations},{report.seed},{report.l_max_used}",
            ])
        else:
            self.emit([
                f"n_mesas = {report.n_mesas}",
                f"D = {self.fmt(report.best_dimension)}",
                f"boundaries_rad = " + " ".join(self.fmt(b) for b in report.boundaries),
                f"evaluations = {report.evaluations}",
                f"seed = {report.seed}",
                f"l_max = {report.l_max_used}",
            ])
        return 0

    def cmd_schmidt(self) -> int:
        source = SourceSpectrum.from_weights(self.files.load_weights(self.args.weights))
        k = schmidt_number(source)
        if self.output_format == "csv":
            self.emit(["schmidt_number", repr(k)])
        else:
            self.emit([f"K = {self.fmt(k)}"])
        return 0

    def run(self) -> int:
        return getattr(self, f"cmd_{self.args.command}")()


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the exit status."""
    args = build_parser().parse_args(argv)

    setup_logger(args.log_level)

    try:
        config = Config(args.config)
        logger.info("✓ Configuration loaded")
    except (FileNotFoundError, ValueError) as e:
        logger.error(f"✗ Failed to load configuration: {e}")
        return 1

    try:
        return Runner(args, config).run()
    except (FileNotFoundError, ValueError, OSError) as e:
        logger.error(f"✗ {args.command} failed: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
