# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel for the degree integrand of the generalized Gauss map.

Hot inner loop of the linking-number quadrature: for every pair of nodes
it assembles the 7x7 matrix [D | dF_a | -dH_b] and accumulates
det / |D|^7.  The pure numpy twin lives in _linkpy.py.
"""

from libc.math cimport fabs, sqrt


cdef inline double det7(double m[7][7]) nogil:
    # LU with partial pivoting on a local copy-free array
    cdef int i, j, k, piv
    cdef double best, tmp, factor, det = 1.0
    for k in range(6):
        piv = k
        best = fabs(m[k][k])
        for i in range(k + 1, 7):
            if fabs(m[i][k]) > best:
                best = fabs(m[i][k])
                piv = i
        if best == 0.0:
            return 0.0
        if piv != k:
            for j in range(k, 7):
                tmp = m[k][j]
                m[k][j] = m[piv][j]
                m[piv][j] = tmp
            det = -det
        det *= m[k][k]
        for i in range(k + 1, 7):
            factor = m[i][k] / m[k][k]
            for j in range(k + 1, 7):
                m[i][j] -= factor * m[k][j]
    return det * m[6][6]


def pair_sum(double[:, ::1] fx, double[:, :, ::1] dfx, double[::1] wx,
             double[:, ::1] fy, double[:, :, ::1] dfy, double[::1] wy):
    """sum_{a,b} w_a w_b det[D | dF_a | -dH_b] / |D|^7 with D = F_a - H_b."""
    cdef Py_ssize_t na = fx.shape[0], nb = fy.shape[0]
    cdef Py_ssize_t a, b
    cdef int i, j
    cdef double m[7][7]
    cdef double d, r2, total = 0.0, row = 0.0
    for a in range(na):
        row = 0.0
        for b in range(nb):
            r2 = 0.0
            for i in range(7):
                d = fx[a, i] - fy[b, i]
                m[i][0] = d
                r2 += d * d
                for j in range(3):
                    m[i][1 + j] = dfx[a, j, i]
                    m[i][4 + j] = -dfy[b, j, i]
            row += wy[b] * det7(m) / (r2 * r2 * r2 * sqrt(r2))
        total += wx[a] * row
    return total
