"""Peak persistence transforms, metrics, and stability checks for 1-D signals."""

from .core import (ConstantSegmentError, CriticalPoint, EmptyInputError,
                   InvalidMorseSetError, Kind, MorseSet,
                   NonMonotoneAbscissaError, SampledSeries, ValidationReport,
                   Violation, colex_lt, extract_critical_points,
                   read_csv_series, validate)
from .metrics import (DIAGONAL, PAD_ORIGIN, InfeasibleError, KindMismatchError,
                      MatchResult, UnmatchableInfinityError, morse_distance,
                      solve_assignment, sup_dist, wasserstein)
from .pairing import (PDPoint, PDSet, PTFeature, PTSet, Pairing, PairingEntry,
                      RPTFeature, RPTSet, denoise, join_pd, join_pt, join_rpt,
                      pair, pair_recursive, persistence_transformation,
                      reduced_persistence_transformation,
                      to_persistence_diagram)
from .stability import (GenParams, StabilityReport, check_stability, perturb,
                        perturb_with_info, random_morse_set, reports_to_json,
                        run_trials, shrink_counterexample)

__version__ = "0.1.0"

__all__ = [
    "CriticalPoint", "Kind", "MorseSet", "SampledSeries", "ValidationReport",
    "Violation", "colex_lt", "extract_critical_points", "read_csv_series",
    "validate",
    "EmptyInputError", "NonMonotoneAbscissaError", "ConstantSegmentError",
    "InvalidMorseSetError",
    "Pairing", "PairingEntry", "PTFeature", "PTSet", "RPTFeature", "RPTSet",
    "PDPoint", "PDSet", "pair", "pair_recursive", "persistence_transformation",
    "reduced_persistence_transformation", "to_persistence_diagram", "denoise",
    "join_pt", "join_rpt", "join_pd",
    "DIAGONAL", "PAD_ORIGIN", "MatchResult", "morse_distance",
    "solve_assignment", "sup_dist", "wasserstein",
    "KindMismatchError", "UnmatchableInfinityError", "InfeasibleError",
    "GenParams", "StabilityReport", "check_stability", "perturb",
    "perturb_with_info", "random_morse_set", "reports_to_json", "run_trials",
    "shrink_counterexample",
    "__version__",
]
