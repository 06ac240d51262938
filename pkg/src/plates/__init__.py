"""Sector phase plate model."""

from .sector_plate import (
    ANGLE_TOL,
    TWO_PI,
    SectorPlate,
    alternating_plate,
    imperfect_step_plate,
    make_sector_plate,
    reflect_plate,
    rotate_plate,
    sector_index,
    single_sector_plate,
    transmission_at,
    uniform_plate,
    wrap_angle,
)

__all__ = [
    "ANGLE_TOL",
    "TWO_PI",
    "SectorPlate",
    "alternating_plate",
    "imperfect_step_plate",
    "make_sector_plate",
    "reflect_plate",
    "rotate_plate",
    "sector_index",
    "single_sector_plate",
    "transmission_at",
    "uniform_plate",
    "wrap_angle",
]
