"""betafreeze: frozen limits of beta-Hermite ensembles.

In the high-interaction limit (beta = 2k, k -> infinity) the spectrum of the
beta-Hermite ensemble freezes onto sqrt(2k) times the Hermite zeros, with
Gaussian fluctuations whose precision matrix has integer spectrum {1..N}.
This package provides:

- Hermite-zero computation with exact-identity diagnostics (hermite_core)
- the limit precision matrix and its spectral invariants (spectral)
- tridiagonal ensemble sampling plus an independent MCMC oracle (sampler)
- explicit finite-k tail bounds and baselines (bounds)
- reproducible Monte Carlo experiments and sweeps (experiment)

Eigenvalue extraction dispatches between a compiled tridiagonal kernel and a
dense fallback; see ``betafreeze.BACKEND`` and the ``BETAFREEZE_BACKEND``
environment variable.
"""

from ._core import BACKEND
from .bounds import (
    BoundBreakdown,
    cor_bound,
    cor_bound_terms,
    cor_condition,
    cor_eps,
    dette_imhof_bound,
    gaussian_tail_bound,
    optimize_delta,
    prop_bound,
    prop_condition,
)
from .errors import (
    BetafreezeError,
    ConditionViolated,
    ConvergenceFailure,
    DegenerateInput,
    FactorizationFailure,
    InvalidConfig,
)
from .experiment import (
    CltReport,
    ExperimentConfig,
    TailEstimate,
    clt_covariance_test,
    estimate_tail_l2,
    estimate_tail_sup,
    gaussian_reference_tail,
    per_trial_norms,
    sweep,
)
from .hermite_core import (
    HermiteZeros,
    ScaledReal,
    StirlingRemainder,
    compute_zeros,
    exponent_M,
    fixed_point_residual,
    hermite_eval,
    log_norm_const,
    potential_identity_gap,
    stirling_bound_margins,
    stirling_mu,
)
from .rng import SEED_ENV_VAR, default_seed, master_stream, worker_streams
from .sampler import (
    EnsembleSample,
    TridiagonalMatrix,
    build_tridiagonal,
    eigen_tridiagonal,
    mh_oracle_chain,
    mh_oracle_sample,
    sample_chi,
    sample_eigenvalue_batch,
    sample_ensemble,
)
from .spectral import (
    PrecisionSpectralPair,
    build_precision,
    inverse_power_sum,
    min_gap,
    sample_gaussian_limit,
    spectrum_deviation,
)
from .stats import RunningMoments, clopper_pearson

__version__ = "1.0.0"

__all__ = [
    "BACKEND",
    "SEED_ENV_VAR",
    "__version__",
    # errors
    "BetafreezeError",
    "InvalidConfig",
    "ConvergenceFailure",
    "DegenerateInput",
    "FactorizationFailure",
    "ConditionViolated",
    # hermite_core
    "HermiteZeros",
    "ScaledReal",
    "StirlingRemainder",
    "compute_zeros",
    "fixed_point_residual",
    "potential_identity_gap",
    "hermite_eval",
    "log_norm_const",
    "stirling_mu",
    "stirling_bound_margins",
    "exponent_M",
    # spectral
    "PrecisionSpectralPair",
    "build_precision",
    "spectrum_deviation",
    "inverse_power_sum",
    "min_gap",
    "sample_gaussian_limit",
    # sampler
    "TridiagonalMatrix",
    "EnsembleSample",
    "sample_chi",
    "build_tridiagonal",
    "eigen_tridiagonal",
    "sample_ensemble",
    "sample_eigenvalue_batch",
    "mh_oracle_chain",
    "mh_oracle_sample",
    # bounds
    "BoundBreakdown",
    "prop_condition",
    "prop_bound",
    "cor_eps",
    "cor_condition",
    "cor_bound",
    "cor_bound_terms",
    "dette_imhof_bound",
    "gaussian_tail_bound",
    "optimize_delta",
    # stats
    "clopper_pearson",
    "RunningMoments",
    # experiment
    "ExperimentConfig",
    "TailEstimate",
    "CltReport",
    "estimate_tail_l2",
    "estimate_tail_sup",
    "clt_covariance_test",
    "gaussian_reference_tail",
    "per_trial_norms",
    "sweep",
    # rng
    "default_seed",
    "master_stream",
    "worker_streams",
]
