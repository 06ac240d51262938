"""File handling utilities for plates, spectra, fringes and search reports."""

import csv
import json
import re
import sys
from pathlib import Path
from typing import IO, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from optimization import OptimizationReport
from plates import SectorPlate, make_sector_plate
from spectra import Fringe, ModeSpectrum

PathLike = Union[str, Path]

FRINGE_HEADER = ("delta_rad", "rate")
SPECTRUM_HEADER = ("l", "re_c", "im_c", "gamma")
ANALYTIC_HEADER = ("delta_rad", "dimension")
SWEEP_HEADER = ("n", "dimension_max")


def _number_list(data: Dict, key: str, source: str) -> List[float]:
    if key not in data:
        raise ValueError(f"{source}: missing field '{key}'")
    values = data[key]
    if not isinstance(values, list):
        raise ValueError(f"{source}: field '{key}' must be a list of numbers")
    for i, value in enumerate(values):
        # bool is an int subclass; true/false are not angles
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"{source}: {key}[{i}] is not a number ({value!r})")
    return [float(v) for v in values]


def _write_rows(header: Sequence[str], rows: Iterable[Sequence], target: Optional[PathLike]) -> None:
    if target is None:
        _write_csv(header, rows, sys.stdout)
        return
    target = Path(target)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", newline="") as f:
        _write_csv(header, rows, f)


def _write_csv(header: Sequence[str], rows: Iterable[Sequence], stream: IO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        # repr(float) is the shortest text that reads back to the same double
        writer.writerow([int(v) if isinstance(v, (int, np.integer)) else repr(float(v)) for v in row])


def _read_rows(file_path: PathLike, header: Sequence[str]) -> List[List[float]]:
    file_path = Path(file_path)
    if not file_path.exists():
        raise FileNotFoundError(f"CSV file not found: {file_path}")
    with open(file_path, "r", newline="") as f:
        reader = csv.reader(f)
        found = next(reader, None)
        if found is None or tuple(h.strip() for h in found) != tuple(header):
            raise ValueError(f"{file_path}: expected header {','.join(header)}, found {found}")
        rows = []
        for line_number, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise ValueError(f"{file_path}:{line_number}: expected {len(header)} columns")
            try:
                rows.append([float(v) for v in row])
            except ValueError:
                raise ValueError(f"{file_path}:{line_number}: non-numeric value in {row}")
    return rows


class FileHandler:
    """Handles file operations for plates, spectra, fringes and reports."""

    def __init__(self, config=None):
        """Initialize with configuration."""
        self.config = config

    def load_plate(self, file_path: PathLike) -> SectorPlate:
        """Load a plate file {"boundaries_rad": [...], "phases_rad": [...]}."""
        file_path = Path(file_path)

        if not file_path.exists():
            raise FileNotFoundError(f"Plate file not found: {file_path}")

        text = file_path.read_text()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValueError(f"{file_path}: line {e.lineno}, column {e.colno}: {e.msg}")
        if not isinstance(data, dict):
            raise ValueError(f"{file_path}: a plate file must hold one JSON object")

        boundaries = _number_list(data, "boundaries_rad", str(file_path))
        phases = _number_list(data, "phases_rad", str(file_path))
        try:
            return make_sector_plate(boundaries, phases)
        except ValueError as e:
            raise ValueError(f"{file_path}: {e}")

    def save_plate(self, plate: SectorPlate, file_path: PathLike):
        """Save a plate in plate-file format."""
        file_path = Path(file_path)
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, "w") as f:
            json.dump(plate.to_dict(), f, indent=2)

    def load_weights(self, file_path: PathLike) -> np.ndarray:
        """Load OAM source weights: a JSON list or numbers separated by commas/whitespace."""
        file_path = Path(file_path)

        if not file_path.exists():
            raise FileNotFoundError(f"Weights file not found: {file_path}")

        text = file_path.read_text().strip()
        if text.startswith("["):
            try:
                values = json.loads(text)
            except json.JSONDecodeError as e:
                raise ValueError(f"{file_path}: line {e.lineno}, column {e.colno}: {e.msg}")
            values = _number_list({"weights": values}, "weights", str(file_path))
        else:
            values = []
            for line_number, line in enumerate(text.splitlines(), start=1):
                line = line.split("#", 1)[0]
                for token in re.split(r"[,\s]+", line.strip()):
                    if not token:
                        continue
                    try:
                        values.append(float(token))
                    except ValueError:
                        raise ValueError(f"{file_path}:{line_number}: not a number ({token!r})")
        if not values:
            raise ValueError(f"{file_path}: no weights found")
        return np.asarray(values, dtype=float)

    def save_fringe(self, fringe: Fringe, file_path: Optional[PathLike] = None):
        """Write a fringe as CSV `delta_rad,rate`; stdout when no path is given."""
        _write_rows(FRINGE_HEADER, zip(fringe.deltas, fringe.rates), file_path)

    def load_fringe(self, file_path: PathLike) -> Fringe:
        rows = _read_rows(file_path, FRINGE_HEADER)
        if not rows:
            raise ValueError(f"{file_path}: empty fringe")
        data = np.asarray(rows)
        return Fringe(data[:, 0], data[:, 1])

    def save_spectrum(self, spectrum: ModeSpectrum, file_path: Optional[PathLike] = None):
        """Write a spectrum as CSV `l,re_c,im_c,gamma`."""
        rows = ((r["l"], r["re_c"], r["im_c"], r["gamma"]) for r in spectrum.to_records())
        _write_rows(SPECTRUM_HEADER, rows, file_path)

    def save_analytic(self, deltas: Sequence[float], dimensions: Sequence[float],
                      file_path: Optional[PathLike] = None):
        """Write a closed-form sweep as CSV `delta_rad,dimension`."""
        _write_rows(ANALYTIC_HEADER, zip(deltas, dimensions), file_path)

    def save_sweep(self, reports: Sequence[OptimizationReport], file_path: Optional[PathLike] = None):
        """Write the D(N) table as CSV `n,dimension_max`."""
        _write_rows(SWEEP_HEADER, ((r.n_mesas, r.best_dimension) for r in reports), file_path)

    def load_sweep(self, file_path: PathLike) -> List[List[float]]:
        return _read_rows(file_path, SWEEP_HEADER)

    def load_analytic(self, file_path: PathLike) -> List[List[float]]:
        return _read_rows(file_path, ANALYTIC_HEADER)

    def save_report(self, report: OptimizationReport, file_path: PathLike):
        """Save an optimization report as JSON."""
        self.save_results(report.to_dict(), file_path)

    def load_report(self, file_path: PathLike) -> OptimizationReport:
        return OptimizationReport.from_dict(self.load_results(file_path))

    def save_results(self, results: Dict, file_path: PathLike, format: str = 'json'):
        """Save results to file."""
        file_path = Path(file_path)
        file_path.parent.mkdir(parents=True, exist_ok=True)

        if format.lower() == 'json':
            with open(file_path, 'w') as f:
                json.dump(results, f, indent=2, default=str)
        else:
            raise ValueError(f"Unsupported format: {format}")

    def load_results(self, file_path: PathLike, format: str = 'json') -> Dict:
        """Load results from file."""
        file_path = Path(file_path)

        if not file_path.exists():
            raise FileNotFoundError(f"Results file not found: {file_path}")

        if format.lower() == 'json':
            with open(file_path, 'r') as f:
                try:
                    return json.load(f)
                except json.JSONDecodeError as e:
                    raise ValueError(f"{file_path}: line {e.lineno}, column {e.colno}: {e.msg}")
        else:
            raise ValueError(f"Unsupported format: {format}")
