"""Pure-NumPy tridiagonal eigenvalue backend.

Densifies each tridiagonal matrix into a (batch, n, n) stack and calls the
batched LAPACK symmetric eigensolver.  Memory is bounded by chunking; speed
is within a small factor of the compiled kernel at small n because LAPACK is
batched C as well.
"""

from __future__ import annotations

import numpy as np

#: Cap on batch * n * n elements densified at once (~32 MB of float64).
_DENSE_BUDGET = 4_000_000


def eigvals_tridiagonal_batch(d: np.ndarray, e: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues, one row per matrix.

    d: (batch, n) diagonals; e: (batch, n-1) off-diagonals.
    Raises numpy.linalg.LinAlgError if LAPACK fails to converge.
    """
    d = np.ascontiguousarray(d, dtype=float)
    e = np.ascontiguousarray(e, dtype=float)
    batch, n = d.shape
    out = np.empty((batch, n))
    step = max(1, _DENSE_BUDGET // (n * n))
    idx = np.arange(n)
    for start in range(0, batch, step):
        stop = min(start + step, batch)
        block = stop - start
        T = np.zeros((block, n, n))
        T[:, idx, idx] = d[start:stop]
        if n > 1:
            T[:, idx[:-1], idx[:-1] + 1] = e[start:stop]
            T[:, idx[:-1] + 1, idx[:-1]] = e[start:stop]
        out[start:stop] = np.linalg.eigvalsh(T)
    return out


__all__ = ["eigvals_tridiagonal_batch"]
