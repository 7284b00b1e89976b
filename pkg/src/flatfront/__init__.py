"""Flat fronts in hyperbolic 3-space.

Construction of holomorphic null lifts from Weierstrass-type data,
exact classification of regular ends (type, multiplicity, pitch), flux
matrices and balancing, caustic data, and numeric verification of the
cycloid-shaped slice asymptotics at incomplete ends.
"""

from .series import FractionalLaurentSeries, schwarzian
from .front import (CanonicalData, Lift, canonical_data, lift_from_g_omega,
                    lift_from_gauss_pair)
from .ends import EndReport, EndType, classify_end, indentation
from .flux import flux_contour, flux_residue, flux_spectral
from .caustic import caustic_end_pitch, caustic_forms
from .cycloid import cycloid_curve, cycloid_descriptor
from .slices import estimate_pitch, horosphere_slice

__version__ = "0.1.0"

__all__ = [
    "FractionalLaurentSeries", "schwarzian",
    "CanonicalData", "Lift", "canonical_data",
    "lift_from_g_omega", "lift_from_gauss_pair",
    "EndReport", "EndType", "classify_end", "indentation",
    "flux_contour", "flux_residue", "flux_spectral",
    "caustic_end_pitch", "caustic_forms",
    "cycloid_curve", "cycloid_descriptor",
    "estimate_pitch", "horosphere_slice",
]
