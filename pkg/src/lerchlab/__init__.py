"""Numerical laboratory for Lerch zeta-functions.

Evaluation of L(s; alpha, lambda) with certified error bounds in the
half-plane Re s > 0, random phase-series models, Bergman-space
diagnostics for the density machinery, and vertical shift scans for
simultaneous approximation experiments.
"""

from .errors import ComputationError, ConvergenceError, EmptyWindowError, PoleError
from .lerch import (
    EvaluationResult,
    LerchParameters,
    StripPoint,
    eval_continued,
    eval_derivative,
    eval_series,
)
from .strip import CompactSet, SupNormEstimate, TargetPolynomial, sample_points, sup_distance
from .randomseries import (
    PhaseSequence,
    RandomSeriesConfig,
    eval_random_series,
    phase_at,
    sample_phases,
    tail_estimate,
)
from .bergman import (
    BergmanDomain,
    BergmanElement,
    DeltaTransform,
    DivergenceReport,
    TupleElement,
    WindowedSums,
    delta_transform,
    divergence_diagnostic,
    inner_product,
    phi_pair_sum,
    vn_norm_sq,
    windowed_sums,
)
from .search import (
    DensityReport,
    JointTarget,
    ProbeResult,
    ScanConfig,
    dense_image_probe,
    joint_distance,
    scan,
)

__version__ = "0.1.0"
