"""Normal models on the positive real line and the simplex.

Both spaces carry a vector-space structure of their own (multiplication as
addition on the line; perturbation and powering on the simplex), and in the
orthonormal coordinates of that structure a "normal" law is just the normal
law.  This package implements the geometry, the laws against both the
natural and the Lebesgue reference measures, coordinate-based estimation and
testing, seeded sampling, and a batch CLI that emits figure-equivalent data.
"""

from .errors import (
    BadIntervalError,
    ClosureError,
    CodanormError,
    DatasetValidationError,
    DegenerateScaleError,
    DegenerateVarianceError,
    DimensionMismatchError,
    EmptyDataError,
    InsufficientDataError,
    InvalidSelectionError,
    NonPositivePartError,
    NotSPDError,
    NumericalError,
    QuadratureUnstableError,
    SingularCovarianceError,
    ValidationError,
)
from .rplus import (
    PositiveValue,
    as_positive,
    interval_measure,
    rp_add,
    rp_coord,
    rp_coord_inv,
    rp_distance,
    rp_inner,
    rp_norm,
    rp_scale,
)
from .rplus import measure_ratio as rp_measure_ratio
from .simplex import (
    Composition,
    ContrastBasis,
    PermutationMap,
    SelectionMatrix,
    ait_distance,
    ait_inner,
    ait_norm,
    alr,
    alr_inv,
    center_of,
    closure,
    clr,
    clr_inv,
    default_basis,
    ilr,
    ilr_inv,
    permute,
    perturb,
    power,
    random_basis,
    subcomposition,
    uniform,
)
from .simplex import measure_ratio as sd_measure_ratio
from .laws import (
    AlnLaw,
    LognormalLaw,
    NormalOnRPlus,
    NormalOnSimplex,
    aln_classical_mean,
    aln_pdf,
    lognormal_moments,
    lognormal_naive_interval,
    lognormal_pdf,
    nrp_interval,
    nrp_moments,
    nrp_pdf,
    nrp_transform,
    nsd_moments,
    nsd_pdf,
    nsd_permute,
    nsd_subcomposition,
    nsd_transform,
    probability_of_box,
    probability_of_interval,
    with_lebesgue_reference,
    with_natural_reference,
)
from .inference import (
    GofEntry,
    GofReport,
    RPlusSample,
    SimplexSample,
    ci_mean_nrp,
    fit_nrp,
    fit_nsd,
    geometric_mean,
    gof_battery,
    naive_lognormal_mean,
)
from .sampling import (
    McEstimate,
    SeededStream,
    mc_expectation,
    sample_aln,
    sample_lognormal,
    sample_nrp,
    sample_nsd,
)
from .grids import (
    CoordinateDensityGrid,
    HistogramArtifact,
    TernaryDensityGrid,
    coordinate_density_grid,
    histogram_artifact,
    ternary_density_grid,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "CodanormError", "ValidationError", "NumericalError",
    "NonPositivePartError", "DimensionMismatchError", "ClosureError",
    "InvalidSelectionError", "NotSPDError", "DegenerateScaleError",
    "BadIntervalError", "EmptyDataError", "InsufficientDataError",
    "DatasetValidationError", "DegenerateVarianceError",
    "SingularCovarianceError", "QuadratureUnstableError",
    # positive line
    "PositiveValue", "as_positive", "rp_add", "rp_scale", "rp_inner",
    "rp_norm", "rp_distance", "rp_coord", "rp_coord_inv",
    "rp_measure_ratio", "interval_measure",
    # simplex
    "Composition", "ContrastBasis", "PermutationMap", "SelectionMatrix",
    "closure", "uniform", "perturb", "power", "ait_inner", "ait_norm",
    "ait_distance", "clr", "clr_inv", "alr", "alr_inv", "ilr", "ilr_inv",
    "default_basis", "random_basis", "permute", "subcomposition",
    "center_of", "sd_measure_ratio",
    # laws
    "NormalOnRPlus", "LognormalLaw", "NormalOnSimplex", "AlnLaw",
    "nrp_pdf", "nrp_moments", "nrp_interval", "nrp_transform",
    "lognormal_pdf", "lognormal_moments", "lognormal_naive_interval",
    "probability_of_interval", "nsd_pdf", "aln_pdf", "nsd_moments",
    "nsd_transform", "nsd_permute", "nsd_subcomposition",
    "aln_classical_mean", "probability_of_box",
    "with_lebesgue_reference", "with_natural_reference",
    # inference
    "RPlusSample", "SimplexSample", "GofEntry", "GofReport",
    "fit_nrp", "ci_mean_nrp", "geometric_mean", "naive_lognormal_mean",
    "fit_nsd", "gof_battery",
    # sampling
    "SeededStream", "McEstimate", "sample_nrp", "sample_lognormal",
    "sample_nsd", "sample_aln", "mc_expectation",
    # grids
    "HistogramArtifact", "TernaryDensityGrid", "CoordinateDensityGrid",
    "histogram_artifact", "ternary_density_grid", "coordinate_density_grid",
]
