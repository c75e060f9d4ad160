"""Spectra of the pushforward operator for unicritical polynomials.

Exact integer certificates (orbit polynomials, coprimality resultants,
algebraic-unit factorizations) combined with certified numerics (center
enumeration, eigenvalue spectra, spectral-gap checks, equidistribution
experiments) for z^D + c with periodic critical point.
"""

from .dynamics import (
    CenterRecord,
    CycleRecord,
    IncompleteEnumeration,
    SearchConfig,
    find_centers,
    find_cycles,
)
from .equidist import (
    ANCHOR_MINUS_TWO,
    AnchorSpec,
    EmpiricalMeasure,
    EquidistributionReport,
    NoNearbyCenter,
    empirical_measure,
    equidistribution_test,
    generate_center_sequence,
    run_experiment,
)
from .exactpoly import BivarPoly, IntPoly, resultant, resultant_bivar
from .gleason import (
    GleasonTower,
    build_tower,
    certify_poonen,
    certify_simple_roots,
    h_degree,
)
from .spectrum import (
    ContourTooClose,
    DimensionTooSmall,
    NonConvergence,
    PushforwardMatrix,
    SpectrumResult,
    build_matrix_explicit,
    build_matrix_residues,
    chi2_from_orbit,
    derivative_identity_check,
    eigenvalues,
    gap_check,
    r_constant,
    solve_spectra,
    solve_spectrum,
    spectrum,
)
from .units import (
    CeilingExceeded,
    IncompleteSurvey,
    UnitCertificate,
    certify,
    crosscheck_numeric,
    upsilon3_closed_form,
)

__version__ = "0.1.0"

__all__ = [
    "ANCHOR_MINUS_TWO",
    "AnchorSpec",
    "BivarPoly",
    "CeilingExceeded",
    "CenterRecord",
    "ContourTooClose",
    "CycleRecord",
    "DimensionTooSmall",
    "EmpiricalMeasure",
    "EquidistributionReport",
    "GleasonTower",
    "IncompleteEnumeration",
    "IncompleteSurvey",
    "IntPoly",
    "NoNearbyCenter",
    "NonConvergence",
    "PushforwardMatrix",
    "SearchConfig",
    "SpectrumResult",
    "UnitCertificate",
    "build_matrix_explicit",
    "build_matrix_residues",
    "build_tower",
    "certify",
    "certify_poonen",
    "certify_simple_roots",
    "chi2_from_orbit",
    "crosscheck_numeric",
    "derivative_identity_check",
    "eigenvalues",
    "empirical_measure",
    "equidistribution_test",
    "find_centers",
    "find_cycles",
    "gap_check",
    "generate_center_sequence",
    "h_degree",
    "r_constant",
    "resultant",
    "resultant_bivar",
    "run_experiment",
    "solve_spectra",
    "solve_spectrum",
    "spectrum",
    "upsilon3_closed_form",
]
