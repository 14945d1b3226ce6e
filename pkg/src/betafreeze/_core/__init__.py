"""Eigenvalue kernel dispatch.

At import time the compiled Cython kernel is preferred; if it is absent
(build skipped or failed) the NumPy fallback is used.  The choice can be
forced with the environment variable ``BETAFREEZE_BACKEND`` set to
``compiled`` or ``fallback``; ``BACKEND`` records what was selected.

Both backends expose the same contract through :func:`eigvals_batch`:
descending eigenvalues of a batch of symmetric tridiagonal matrices.
"""

from __future__ import annotations

import importlib
import os

import numpy as np

from ..errors import ConvergenceFailure, InvalidConfig
from . import fallback as _fallback

_requested = os.environ.get("BETAFREEZE_BACKEND", "").strip().lower()
if _requested not in ("", "compiled", "fallback"):
    raise InvalidConfig(
        f"BETAFREEZE_BACKEND must be 'compiled' or 'fallback', got {_requested!r}"
    )

_speedups = None
if _requested != "fallback":
    try:
        # importlib rather than ``from . import``: the latter would resolve
        # to the placeholder attribute set above instead of the submodule.
        _speedups = importlib.import_module("._speedups", __name__)
    except ImportError:
        _speedups = None
        if _requested == "compiled":
            raise InvalidConfig(
                "BETAFREEZE_BACKEND=compiled but the compiled kernel is not "
                "available (build it with pip install)"
            )

BACKEND = "compiled" if _speedups is not None else "fallback"


def _eigvals_compiled(d: np.ndarray, e: np.ndarray) -> np.ndarray:
    batch, n = d.shape
    work_d = np.ascontiguousarray(d, dtype=float).copy()
    work_e = np.zeros((batch, n))
    if n > 1:
        work_e[:, : n - 1] = e
    bad = _speedups.ql_batch(work_d, work_e)
    if bad >= 0:
        raise ConvergenceFailure(
            f"QL iteration exceeded its sweep budget (matrix {bad} of batch)"
        )
    work_d.sort(axis=1)
    return work_d


def _eigvals_fallback(d: np.ndarray, e: np.ndarray) -> np.ndarray:
    try:
        return _fallback.eigvals_tridiagonal_batch(d, e)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver did not converge: {exc}") from exc


def eigvals_batch(
    d: np.ndarray, e: np.ndarray, backend: str | None = None
) -> np.ndarray:
    """Descending eigenvalues for a batch of symmetric tridiagonal matrices.

    d: (batch, n) diagonals; e: (batch, n-1) off-diagonals.  ``backend``
    overrides the module-level selection (used by equivalence tests and the
    benchmark).  Raises ConvergenceFailure if the iteration stalls.
    """
    d = np.atleast_2d(np.asarray(d, dtype=float))
    e = np.atleast_2d(np.asarray(e, dtype=float))
    if d.shape[1] >= 2 and e.shape[1] != d.shape[1] - 1:
        raise InvalidConfig("off-diagonal must have n-1 columns")
    choice = backend or BACKEND
    if choice == "compiled":
        if _speedups is None:
            raise InvalidConfig("compiled backend requested but not available")
        ascending = _eigvals_compiled(d, e)
    elif choice == "fallback":
        ascending = _eigvals_fallback(d, e)
    else:
        raise InvalidConfig(f"unknown backend {choice!r}")
    return ascending[:, ::-1]


__all__ = ["BACKEND", "eigvals_batch"]
