"""Numpy implementation of the mode-sum synthesis kernel."""

import numpy as np


def synth_grid(taus, xs, kx, omega, amps):
    """Sum Re[amps_k exp(i (kx_k x - omega_k tau))] over modes.

    Parameters are 1-d arrays: conformal times (length T), positions
    (length X), per-mode wavenumber component along the sampling line,
    mode frequencies and complex amplitudes (length K). Returns a (T, X)
    float64 array.

    Equivalent to Re[(E_x * amps) @ E_t^T] with E_x = exp(i x kx) and
    E_t = exp(-i omega tau); the matrix product keeps it in BLAS.
    """
    taus = np.ascontiguousarray(taus, dtype=np.float64)
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    kx = np.ascontiguousarray(kx, dtype=np.float64)
    omega = np.ascontiguousarray(omega, dtype=np.float64)
    amps = np.ascontiguousarray(amps, dtype=np.complex128)
    e_x = np.exp(1j * np.outer(xs, kx))          # (X, K)
    e_t = np.exp(-1j * np.outer(taus, omega))    # (T, K)
    return np.real((e_x * amps) @ e_t.T).T       # (T, X)
