# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Batched eigenvalues of symmetric tridiagonal matrices.

Implicit-shift QL iteration without eigenvector accumulation (the classic
tqli/dsterf structure): O(n^2) per matrix, no allocations inside the loop,
GIL released across the whole batch so worker threads scale.
"""

from libc.math cimport fabs, hypot, copysign

DEF MACHINE_EPS = 2.220446049250313e-16


cdef int _ql_inplace(double* d, double* e, int n, int max_sweeps) noexcept nogil:
    """Eigenvalues of tridiag(diag=d, offdiag=e[:n-1]) overwrite d, unsorted.

    e must have length n; e[n-1] is scratch. Returns 0 on success, 1 if any
    eigenvalue fails to converge within max_sweeps shift iterations.
    """
    cdef int l, m, i, iteration
    cdef double dd, g, r, s, c, p, f, b
    cdef bint deflated
    if n == 1:
        return 0
    e[n - 1] = 0.0
    for l in range(n):
        iteration = 0
        while True:
            # Find the first negligible off-diagonal at or after l.
            m = l
            while m < n - 1:
                dd = fabs(d[m]) + fabs(d[m + 1])
                if fabs(e[m]) <= MACHINE_EPS * dd:
                    break
                m += 1
            if m == l:
                break
            iteration += 1
            if iteration > max_sweeps:
                return 1
            # Wilkinson-style shift from the 2x2 block at l.
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            deflated = 0
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # Rotation chain collapsed early: recover and restart.
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = 1
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if not deflated:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    return 0


def ql_batch(double[:, ::1] d, double[:, ::1] e, int max_sweeps=60):
    """Overwrite each row of d with the (unsorted) eigenvalues of its matrix.

    d: (batch, n) diagonals, modified in place.
    e: (batch, n) with off-diagonals in columns [0, n-1); column n-1 is
       scratch and is clobbered.
    Returns -1 on success, else the index of the first row that failed to
    converge.
    """
    cdef Py_ssize_t t
    cdef Py_ssize_t batch = d.shape[0]
    cdef int n = <int> d.shape[1]
    cdef Py_ssize_t bad = -1
    if e.shape[0] != batch or e.shape[1] != d.shape[1]:
        raise ValueError("e must have the same shape as d")
    with nogil:
        for t in range(batch):
            if _ql_inplace(&d[t, 0], &e[t, 0], n, max_sweeps) != 0:
                bad = t
                break
    return bad
