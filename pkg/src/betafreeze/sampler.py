"""Exact sampling of the beta-Hermite ensemble.

One draw of the ordered ensemble X (density proportional to
e^{-|x|^2/2} prod_{i<j} (x_i - x_j)^{2k} on descending vectors, beta = 2k)
is obtained as the eigenvalue vector of the random symmetric tridiagonal
matrix with

    diagonal entries  ~ independent N(0, 1),
    off-diagonal[i]   = chi_{2k (n-i)} / sqrt(2),   i = 1 .. n-1,

all entries independent (the Dumitriu-Edelman construction).  Convention
audit: with these scalings the eigenvalue density matches the target exactly
- no extra rescaling - which is pinned by closed forms at n = 2:
(lambda_1 - lambda_2)/sqrt(2) ~ chi_{2k+1} and (lambda_1 + lambda_2)/sqrt(2)
~ N(0,1), independent.  Tests enforce both.

A random-walk Metropolis sampler targeting the same log-density provides an
independent (approximate) oracle for desk-scale cross-validation at n <= 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _core
from .errors import InvalidConfig
from .hermite_core import compute_zeros

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class TridiagonalMatrix:
    """Symmetric tridiagonal matrix held as its diagonal and off-diagonal."""

    n: int
    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.diag, dtype=float)
        e = np.asarray(self.offdiag, dtype=float)
        d.setflags(write=False)
        e.setflags(write=False)
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)
        if d.shape != (self.n,) or e.shape != (self.n - 1,):
            raise InvalidConfig("diag must have length n and offdiag length n-1")
        if not np.all(e > 0.0):
            raise InvalidConfig("off-diagonal entries must be strictly positive")


@dataclass(frozen=True)
class EnsembleSample:
    """One ordered draw of the ensemble; ``values`` is strictly descending."""

    n: int
    k: float
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def beta(self) -> float:
        """The ensemble exponent beta = 2k (read-only alternative name)."""
        return 2.0 * self.k


def sample_chi(rng: np.random.Generator, df, size=None):
    """Chi-distributed variate(s) with ``df`` degrees of freedom.

    Computed as sqrt of a gamma(df/2, scale=2) variate; the generator's gamma
    sampler is a squeeze/rejection scheme valid for all shapes > 0 (shapes
    below 1 are handled by the boosting identity internally).  ``df`` may be
    an array, in which case it broadcasts against ``size``.
    """
    df = np.asarray(df, dtype=float)
    if np.any(df <= 0.0):
        raise InvalidConfig("degrees of freedom must be positive")
    out = np.sqrt(rng.gamma(df / 2.0, 2.0, size=size))
    if size is None and out.ndim == 0:
        return float(out)
    return out


def _offdiag_dof(n: int, k: float) -> np.ndarray:
    """Degrees of freedom 2k(n-1), 2k(n-2), ..., 2k for the off-diagonal."""
    return 2.0 * k * np.arange(n - 1, 0, -1, dtype=float)


def build_tridiagonal(n: int, k: float, rng: np.random.Generator) -> TridiagonalMatrix:
    """One draw of the random tridiagonal matrix whose spectrum is X."""
    if n < 2:
        raise InvalidConfig(f"n must be >= 2, got {n}")
    if not k > 0.0:
        raise InvalidConfig(f"k must be positive, got {k}")
    diag = rng.standard_normal(n)
    offdiag = sample_chi(rng, _offdiag_dof(n, k)) / _SQRT2
    return TridiagonalMatrix(n=n, diag=diag, offdiag=offdiag)


def eigen_tridiagonal(t: TridiagonalMatrix) -> np.ndarray:
    """Eigenvalues of the tridiagonal matrix, descending, values only.

    Dispatches to the compiled QL kernel or the NumPy fallback (see
    betafreeze._core.BACKEND).  Raises ConvergenceFailure if the shift
    iteration exceeds its sweep budget.
    """
    return _core.eigvals_batch(t.diag[None, :], t.offdiag[None, :])[0]


def sample_ensemble(n: int, k: float, rng: np.random.Generator) -> EnsembleSample:
    """One exact draw of the ordered ensemble."""
    t = build_tridiagonal(n, k, rng)
    return EnsembleSample(n=n, k=float(k), values=eigen_tridiagonal(t))


def sample_eigenvalue_batch(
    n: int,
    k: float,
    rng: np.random.Generator,
    trials: int,
    backend: str | None = None,
) -> np.ndarray:
    """(trials, n) array of independent ordered draws, descending rows.

    Vectorized path used by the Monte Carlo experiments: all diagonals are
    drawn first, then all off-diagonals, then the batch eigensolver runs.
    The stream layout (normals block, then gammas block) is a fixed part of
    the reproducibility contract.
    """
    if n < 2:
        raise InvalidConfig(f"n must be >= 2, got {n}")
    if not k > 0.0:
        raise InvalidConfig(f"k must be positive, got {k}")
    if trials < 1:
        raise InvalidConfig(f"trials must be >= 1, got {trials}")
    d = rng.standard_normal((trials, n))
    dof = _offdiag_dof(n, k)
    e = np.sqrt(rng.gamma(dof / 2.0, 2.0, size=(trials, n - 1))) / _SQRT2
    return _core.eigvals_batch(d, e, backend=backend)


# ----------------------------------------------------------------------
# Metropolis oracle
# ----------------------------------------------------------------------

def _log_target(x: np.ndarray, k: float, iu: np.ndarray, ju: np.ndarray) -> np.ndarray:
    """log density (up to a constant) at each row of x: the unordered law."""
    pair_term = np.sum(np.log(np.abs(x[:, iu] - x[:, ju])), axis=1)
    return -0.5 * np.sum(x * x, axis=1) + 2.0 * k * pair_term


def mh_oracle_chain(
    n: int,
    k: float,
    rng: np.random.Generator,
    draws: int,
    burn_in: int = 20_000,
    thin: int = 100,
    chains: int = 50,
) -> np.ndarray:
    """(draws, n) array of approximate ordered draws from independent chains.

    Random-walk Metropolis on the unordered coordinates with isotropic
    Gaussian proposals.  The step scale adapts toward ~25% acceptance during
    burn-in only (stochastic-approximation update) and is frozen afterwards,
    so the kept draws target the exact density.  Chains start near the frozen
    configuration sqrt(2k) z and are thinned so residual autocorrelation is
    negligible; each kept draw is sorted descending.
    """
    if n not in (2, 3):
        raise InvalidConfig("the oracle is restricted to n in {2, 3}")
    if not 0.0 < k <= 10.0:
        raise InvalidConfig("the oracle is restricted to k <= 10")
    if draws < 1 or burn_in < 0 or thin < 1 or chains < 1:
        raise InvalidConfig("draws/burn_in/thin/chains out of range")

    iu, ju = np.triu_indices(n, k=1)
    z = compute_zeros(n).zeros
    x = math.sqrt(2.0 * k) * z + 0.5 * rng.standard_normal((chains, n))
    logp = _log_target(x, k, iu, ju)
    log_scale = math.log(0.5 / math.sqrt(n))

    kept = np.empty((draws, n))
    n_kept = 0
    per_chain = -(-draws // chains)  # ceil
    total_steps = burn_in + per_chain * thin
    for step in range(total_steps):
        proposal = x + math.exp(log_scale) * rng.standard_normal((chains, n))
        logp_prop = _log_target(proposal, k, iu, ju)
        accept = np.log(rng.random(chains)) < logp_prop - logp
        x[accept] = proposal[accept]
        logp[accept] = logp_prop[accept]
        if step < burn_in:
            rate = float(np.mean(accept))
            log_scale += (rate - 0.25) / (1.0 + step) ** 0.6
        elif (step - burn_in + 1) % thin == 0:
            take = min(chains, draws - n_kept)
            kept[n_kept : n_kept + take] = x[:take]
            n_kept += take
    kept.sort(axis=1)
    return np.ascontiguousarray(kept[:, ::-1])  # descending rows


def mh_oracle_sample(
    n: int,
    k: float,
    rng: np.random.Generator,
    burn_in: int = 100_000,
    thin: int = 100,
) -> EnsembleSample:
    """One approximate ordered draw from a single Metropolis chain."""
    values = mh_oracle_chain(
        n, k, rng, draws=1, burn_in=burn_in, thin=thin, chains=1
    )[0]
    return EnsembleSample(n=n, k=float(k), values=values)


__all__ = [
    "TridiagonalMatrix",
    "EnsembleSample",
    "sample_chi",
    "build_tridiagonal",
    "eigen_tridiagonal",
    "sample_ensemble",
    "sample_eigenvalue_batch",
    "mh_oracle_chain",
    "mh_oracle_sample",
]
