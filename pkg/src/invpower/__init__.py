"""Extract the large-x behaviour f(x) ~ q0 + q1/x of a function from its
Taylor coefficients at a finite center, via inverse-power approximants
with exact closed-form binomial coefficients."""

from .approximant import (
    InversePowerApproximant,
    SignedBinomialMatrix,
    coeffs_closed_form,
    coeffs_oracle_solve,
    coeffs_via_matrix,
    evaluate,
    expand_to_taylor,
    signed_binomial_matrix,
)
from .asymptotics import (
    AsymptoticEstimate,
    CenterInvarianceReport,
    ConvergenceRow,
    ConvergenceTable,
    ResidualScanReport,
    asymptotic_residual_scan,
    center_invariance_check,
    convergence_table,
    estimate_limits,
)
from .corpus import (
    CorpusEntry,
    CorpusFunction,
    Mobius,
    SHIPPED_CORPUS,
    ShiftedReciprocal,
    TailSum,
    evaluate_at,
    hypothesis_radius,
    hypothesis_report,
    known_asymptote,
    load_coefficient_file,
    mobius,
    resolve_function,
    save_coefficient_file,
    shifted_reciprocal,
    tail_sum,
    taylor_coeffs,
)
from .errors import CoefficientFileError, ExactnessError, PoleError
from .identities import IdentityCase, SuiteRanges, SuiteReport, run_suite
from .scalar import CancellationWarning, PascalCache, Scalar, binom, significand_bits
from .series import TaylorSeries, series_from_rationals
from .transforms import (
    BinomialConvolvedCoefficients,
    CountableSet,
    binomial_convolve,
    sequential_closed_form,
    sequential_transform,
    transform_k,
)

__version__ = "0.1.0"
