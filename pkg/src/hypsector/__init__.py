"""Orbit counting in thin subgroups of SL(2, Z): Cartan coordinates, orbit balls,
boundary measures, harmonic sector sums and affine-window statistics."""
from .core import CartanCoords, GroupElement, cartan_arrays, cartan_decompose, disk_point, reconstruct
from .orbit import (CongruenceContext, GroupPresentation, NonFreeGroupError, OrbitBall,
                    count_growth, enumerate_ball, gamma_c)
from .orbit_io import cached_ball, load_ball, save_ball
from .measure import (BoundaryMeasure, ExponentEstimate, build_measure, estimate_delta_countfit,
                      estimate_delta_poincare, fourier_coefficient)
from .sectors import AffineQuery, affine_window_count, sector_sum, vector_window_count
from .fitting import FitResult, fit_power_law
from .config import ConfigError, ExperimentConfig, load_config

__version__ = "0.1.0"

__all__ = [
    "CartanCoords", "GroupElement", "cartan_arrays", "cartan_decompose", "disk_point", "reconstruct",
    "CongruenceContext", "GroupPresentation", "NonFreeGroupError", "OrbitBall", "count_growth",
    "enumerate_ball", "gamma_c", "cached_ball", "load_ball", "save_ball",
    "BoundaryMeasure", "ExponentEstimate", "build_measure", "estimate_delta_countfit",
    "estimate_delta_poincare", "fourier_coefficient",
    "AffineQuery", "affine_window_count", "sector_sum", "vector_window_count",
    "FitResult", "fit_power_law", "ConfigError", "ExperimentConfig", "load_config",
]
