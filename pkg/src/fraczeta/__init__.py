"""Exact fractal grid constructions, dimension estimators, and zeta tooling."""

from .cardinality import (
    CatalogEntry,
    InfoCardinality,
    LogRatio,
    axiom_suite,
    catalog,
    compare,
    compare_extended,
    compare_trace,
    conservation_report,
)
from .dimension import (
    DimensionEstimate,
    MultifractalPoint,
    box_count,
    box_dimension_fit,
    multifractal_spectrum,
    similarity_dimension,
)
from .errors import (
    AddressError,
    CapacityError,
    DomainError,
    FraczetaError,
    InputError,
    ParseError,
    PoleError,
    SubcriticalRetentionWarning,
    UnsupportedStructureError,
)
from .grids import (
    Address,
    GeneralIfsSpec,
    GridSpec,
    IfsMap,
    StageSet,
    address_to_point,
    apply_ifs_step,
    build_stage,
    ifs_of_grid,
    make_named_spec,
    make_pess_spec,
    make_zf_spec,
    self_similarity_check,
)
from .montecarlo import (
    RetentionConfig,
    TrialOutcome,
    TrialRun,
    expected_dimension,
    run_trials,
)
from .zeros import (
    DigitSequence,
    DigitStats,
    ZeroTable,
    digit_stats,
    digitize,
    parse_zero_file,
    reorder,
    reorder_external_weights,
)
from .zeta import (
    ZetaValue,
    bernoulli_numbers,
    functional_equation_residual,
    gamma_real,
    zeta_euler_maclaurin,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
