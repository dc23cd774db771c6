"""Scattering data, iterated-integral expansions and conservation laws for the DNLS equation.

Modules
-------
words       shuffle algebra of admissible words, shuffle logarithm, coproduct
potential   grid potentials, Fourier transforms, norms, I/O
scattering  Jost integration for s11, s21
simplex     word integrals, Picard and log terms, decay profiles
spectral    Fourier-side formulas, moments, conserved quantities, asymptotic fits
evolution   pseudospectral DNLS time stepping and isospectrality
variation   V^p norms of step functions
"""

from __future__ import annotations

from .errors import (
    AdmissibilityError,
    AliasingError,
    BoundaryContaminationError,
    DNLSError,
    DomainError,
    FitError,
    InstabilityError,
    RegionError,
    ResolutionError,
    SingularityError,
    SizeError,
)
from .potential import AnalyticPotential, GridPotential, SpectrumSamples, sample
from .scattering import ScatteringDatum, SpectralPoint, jost_solve, lambda_sweep, scattering_coefficients
from .simplex import ExpansionTerms, WordIntegralValue, b_terms, picard_terms, word_integral
from .words import WordSeries, log_series, shuffle

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError", "AliasingError", "BoundaryContaminationError", "DNLSError", "DomainError",
    "FitError", "InstabilityError", "RegionError", "ResolutionError", "SingularityError", "SizeError",
    "AnalyticPotential", "GridPotential", "SpectrumSamples", "sample",
    "ScatteringDatum", "SpectralPoint", "jost_solve", "lambda_sweep", "scattering_coefficients",
    "ExpansionTerms", "WordIntegralValue", "b_terms", "picard_terms", "word_integral",
    "WordSeries", "log_series", "shuffle",
]
