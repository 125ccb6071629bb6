"""Power series defined by three-term recurrences: classification, evaluation
inside the disc of convergence, and diagnostics of divergence on its boundary.

The coefficients obey ``d_{n+1} = A_n d_n + B_n d_{n-1}`` with ``A_n`` and
``B_n`` rational functions of ``n``; the confluent Heun equation is the
motivating instance.
"""

from .boundary_diag import (
    GrowthScan,
    Side,
    WitnessParams,
    boundary_scan,
    check_witness,
    doubling_increments,
    find_witness,
    harmonic_partial,
    lower_bound_witness,
    pfq_3f2_partial,
)
from .classification import BoundaryVerdict, Kind, RecurrenceClass, Subcase, classify
from .decomposition import (
    Mode,
    decompose,
    decomposition_check,
    eq16_sides,
    eq16_threshold,
    path_oracle,
    pochhammer,
    pochhammer_ratio,
    subseries_y_tau,
    verify_eq16,
)
from .errors import (
    ComplexSubleading,
    DomainError,
    NoConvergenceWithinBudget,
    NotInDisc,
    PoleAtIndex,
    TrirecError,
    TruncationMismatch,
    UnsupportedShape,
    WitnessNotFound,
    ZeroDenominator,
)
from .heun import (
    GaussVerdict,
    HeunParams,
    gauss_boundary_test,
    heun_family,
    hypergeometric_family,
    hypergeometric_reduction,
)
from .recurrence_core import (
    CoefficientFamily,
    NormalizedFamily,
    PolyN,
    coeff_A,
    coeff_B,
    family_from_json,
    family_to_json,
    normalize,
)
from .series_eval import (
    MajorantRun,
    SeriesRun,
    abs_partial_sums,
    empirical_ratio,
    eval_series,
    generate_coeffs,
    majorant_sequences,
)

__version__ = "0.1.0"
