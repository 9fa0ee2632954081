"""Special functions for K-finite vectors of principal-series representations."""
from .gamma import GammaPoleError, gamma_ratio, log_gamma, log_gamma_ratio
from .hyp import HypResult, hyp2f1, hyp2f1_detailed
from .kfunctions import ReprParams, matrix_coefficient, phi, phi_at_t, spherical_function

__all__ = ["GammaPoleError", "gamma_ratio", "log_gamma", "log_gamma_ratio",
           "HypResult", "hyp2f1", "hyp2f1_detailed",
           "ReprParams", "matrix_coefficient", "phi", "phi_at_t", "spherical_function"]
