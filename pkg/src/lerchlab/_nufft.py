"""Nonuniform-frequency trigonometric sums on a uniform output grid.

Computes S[g] = sum_j c_j exp(-i g x_j) for g = 0 .. n_out-1 by Gaussian
gridding: sources are spread onto an oversampled uniform grid with a
truncated Gaussian kernel, transformed with one FFT, and deconvolved.
With oversampling R and total kernel width W points the relative error
(against sum|c_j|) is about exp(-pi W sqrt(1-1/R) / 2); the defaults
R = 2, W = 28 give ~3e-13, verified against direct summation in the
test suite.  Deterministic: fixed kernel, fixed FFT backend, no
threading inside a call.
"""

from __future__ import annotations

import numpy as np
import scipy.fft

__all__ = ["nufft_grid_eval", "nufft_relative_error"]

_WIDTH = 28
_OVERSAMPLE = 2.0


def nufft_relative_error(width: int = _WIDTH, oversample: float = _OVERSAMPLE) -> float:
    """Kernel truncation/aliasing error relative to sum|c_j|."""
    return float(np.exp(-np.pi * width * np.sqrt(1.0 - 1.0 / oversample) / 2.0))


def nufft_grid_eval(x: np.ndarray, c: np.ndarray, n_out: int) -> np.ndarray:
    """S[g] = sum_j c_j exp(-i g x_j), g = 0..n_out-1.

    x may be any real numbers (reduced mod 2 pi internally); c is complex.
    """
    x = np.asarray(x, dtype=np.float64)
    c = np.asarray(c, dtype=np.complex128)
    if x.shape != c.shape:
        raise ValueError("sources and coefficients must have equal length")
    if n_out < 1:
        raise ValueError("n_out must be >= 1")
    if n_out < 64:  # direct summation is cheaper and exact for tiny grids
        g = np.arange(n_out)
        return np.exp(-1j * np.outer(g, x)) @ c

    half = n_out // 2
    n_fine = scipy.fft.next_fast_len(int(np.ceil(_OVERSAMPLE * n_out)), real=False)
    dx = 2.0 * np.pi / n_fine
    a_target = np.pi * _WIDTH * np.sqrt(1.0 - 1.0 / _OVERSAMPLE) / 2.0
    b = (_WIDTH * dx / 2.0) ** 2 / (4.0 * a_target)

    # shift modes to the symmetric range [-half, n_out-1-half]; the phase
    # half*x is reduced in extended precision (half ~ 1e6 would otherwise
    # cost ~1e-10 rad in double)
    twist = np.mod(np.float128(half) * x / (2.0 * np.pi), 1.0).astype(np.float64)
    ct = c * np.exp(-2j * np.pi * twist)
    m0 = np.rint(x / dx).astype(np.int64)
    m_lo = int(m0.min()) - _WIDTH // 2
    m_hi = int(m0.max()) + _WIDTH // 2
    span = m_hi - m_lo + 1
    grid = np.zeros(n_fine, dtype=np.complex128)
    if span < n_fine:
        # clustered sources: accumulate in a compact window, fold once
        local = np.zeros(span, dtype=np.complex128)
        base = m0 - m_lo
        for d in range(-_WIDTH // 2, _WIDTH // 2 + 1):
            kernel = np.exp(-((x - (m0 + d) * dx) ** 2) / (4.0 * b))
            contrib = ct * kernel
            local += np.bincount(base + d, weights=contrib.real, minlength=span)
            local += 1j * np.bincount(base + d, weights=contrib.imag, minlength=span)
        np.add.at(grid, np.mod(np.arange(m_lo, m_hi + 1), n_fine), local)
    else:
        for d in range(-_WIDTH // 2, _WIDTH // 2 + 1):
            idx = np.mod(m0 + d, n_fine)
            kernel = np.exp(-((x - (m0 + d) * dx) ** 2) / (4.0 * b))
            contrib = ct * kernel
            grid += np.bincount(idx, weights=contrib.real, minlength=n_fine)
            grid += 1j * np.bincount(idx, weights=contrib.imag, minlength=n_fine)
    spectrum = scipy.fft.fft(grid, workers=1)

    modes = np.arange(n_out, dtype=np.int64) - half
    correction = dx / (2.0 * np.sqrt(np.pi * b)) * np.exp(b * modes.astype(np.float64) ** 2)
    return spectrum[np.mod(modes, n_fine)] * correction
