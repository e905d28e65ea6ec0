# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Fock-series kernel; see ``_series_py`` for the reference version."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, exp, floor, fabs, M_PI

cnp.import_array()

cdef double TWO_PI = 2.0 * M_PI
cdef double INV_TWO_PI = 1.0 / (2.0 * M_PI)


cdef inline void _add(double *total, double *comp, double value) noexcept nogil:
    cdef double t = total[0] + value
    if fabs(total[0]) >= fabs(value):
        comp[0] += (total[0] - t) + value
    else:
        comp[0] += (value - t) + total[0]
    total[0] = t


cdef inline double _mod2pi(double a) noexcept nogil:
    return a - TWO_PI * floor(a * INV_TWO_PI)


def series_sums(log_mag, phases, int order):
    cdef cnp.float64_t[::1] lm = np.ascontiguousarray(log_mag, dtype=np.float64)
    cdef cnp.float64_t[::1] ph = np.ascontiguousarray(phases, dtype=np.float64).ravel()
    cdef Py_ssize_t m = ph.shape[0]
    cdef Py_ssize_t n_terms = lm.shape[0]
    out = np.empty((4, m), dtype=np.float64)
    cdef cnp.float64_t[:, ::1] o = out
    cdef cnp.float64_t[::1] w = np.exp(lm)
    cdef Py_ssize_t i, n
    cdef double phi, nk, theta, c, s
    cdef double sr, si, dr, di, csr, csi, cdr, cdi
    with nogil:
        for i in range(m):
            phi = _mod2pi(ph[i])
            sr = si = dr = di = 0.0
            csr = csi = cdr = cdi = 0.0
            for n in range(n_terms):
                if w[n] == 0.0:
                    continue
                nk = <double>n
                if order == 2:
                    nk = nk * nk
                theta = _mod2pi(nk * phi)
                c = w[n] * cos(theta)
                s = w[n] * sin(theta)
                _add(&sr, &csr, c)
                _add(&si, &csi, s)
                _add(&dr, &cdr, -nk * s)
                _add(&di, &cdi, nk * c)
            o[0, i] = sr + csr
            o[1, i] = si + csi
            o[2, i] = dr + cdr
            o[3, i] = di + cdi
    return out[0], out[1], out[2], out[3]
