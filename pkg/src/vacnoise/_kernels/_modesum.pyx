# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled mode-sum synthesis kernel (see _modesum_py for semantics)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()


def synth_grid(taus, xs, kx, omega, amps):
    cdef double[::1] tau_v = np.ascontiguousarray(taus, dtype=np.float64)
    cdef double[::1] x_v = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] kx_v = np.ascontiguousarray(kx, dtype=np.float64)
    cdef double[::1] om_v = np.ascontiguousarray(omega, dtype=np.float64)
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    cdef double[::1] ar = np.ascontiguousarray(np.real(amps))
    cdef double[::1] ai = np.ascontiguousarray(np.imag(amps))

    cdef Py_ssize_t T = tau_v.shape[0]
    cdef Py_ssize_t X = x_v.shape[0]
    cdef Py_ssize_t K = kx_v.shape[0]
    out_arr = np.zeros((T, X), dtype=np.float64)
    cdef double[:, ::1] out = out_arr

    cdef Py_ssize_t i, j, k
    cdef double wt, phase, cr, ci
    with nogil:
        for i in range(T):
            for k in range(K):
                wt = om_v[k] * tau_v[i]
                cr = ar[k]
                ci = ai[k]
                for j in range(X):
                    phase = kx_v[k] * x_v[j] - wt
                    # Re[(cr + i ci) (cos + i sin)] = cr cos - ci sin
                    out[i, j] += cr * cos(phase) - ci * sin(phase)
    return out_arr
