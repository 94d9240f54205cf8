"""Complex FFT kernels: iterative radix-2 and Bluestein chirp-z.

Both transforms act along the last axis, so a stack of frames is processed
in one call. The forward transform is unnormalized with kernel
``exp(-2 pi i k n / N)``; :func:`ifft` applies ``1/N``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = ["fft", "ifft", "is_power_of_two"]


def is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@lru_cache(maxsize=64)
def _bit_reversal(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.intp)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


@lru_cache(maxsize=64)
def _twiddles(n: int) -> np.ndarray:
    return np.exp(-2j * np.pi * np.arange(n // 2) / n)


def _radix2(x: np.ndarray) -> np.ndarray:
    n = x.shape[-1]
    lead = x.shape[:-1]
    a = x[..., _bit_reversal(n)].astype(complex, copy=True)
    tw = _twiddles(n)
    size = 2
    while size <= n:
        half = size // 2
        # view as (..., n/size blocks, 2 halves, half)
        blocks = a.reshape(lead + (n // size, 2, half))
        w = tw[:: n // size][:half]
        top = blocks[..., 0, :]
        bot = blocks[..., 1, :] * w
        blocks[..., 1, :] = top - bot
        blocks[..., 0, :] = top + bot
        size *= 2
    return a


@lru_cache(maxsize=32)
def _bluestein_plan(n: int):
    m = 1 << (2 * n - 1).bit_length()
    k = np.arange(n)
    # k^2 mod 2n keeps the chirp argument small for large n
    chirp = np.exp(-1j * np.pi * ((k * k) % (2 * n)) / n)
    b = np.zeros(m, dtype=complex)
    b[:n] = np.conj(chirp)
    b[m - n + 1 :] = np.conj(chirp[1:])[::-1]
    return m, chirp, _radix2(b)


def _bluestein(x: np.ndarray) -> np.ndarray:
    n = x.shape[-1]
    m, chirp, b_hat = _bluestein_plan(n)
    a = np.zeros(x.shape[:-1] + (m,), dtype=complex)
    a[..., :n] = x * chirp
    conv = _radix2_inverse(_radix2(a) * b_hat)
    return conv[..., :n] * chirp


def _radix2_inverse(x: np.ndarray) -> np.ndarray:
    n = x.shape[-1]
    return np.conj(_radix2(np.conj(x))) / n


def fft(x) -> np.ndarray:
    """Unnormalized DFT along the last axis, any length >= 1."""
    x = np.asarray(x, dtype=complex)
    n = x.shape[-1]
    if n == 0:
        raise ValueError("cannot transform an empty array")
    if n == 1:
        return x.copy()
    if is_power_of_two(n):
        return _radix2(x)
    return _bluestein(x)


def ifft(x) -> np.ndarray:
    """Inverse of :func:`fft` (includes the ``1/N`` factor)."""
    x = np.asarray(x, dtype=complex)
    return np.conj(fft(np.conj(x))) / x.shape[-1]
