"""Discrete right quaternion Fourier transform with axis ``j``.

Forward::

    Z[k] = sum_n q[n] exp(-j 2 pi k n / N)

Inverse::

    q[n] = (1/N) sum_k Z[k] exp(+j 2 pi k n / N)

The exponential always multiplies on the right. Writing ``q = c1 + i c2``
with ``c1 = w + y j`` and ``c2 = x + z j`` in the ``{1, j}`` plane, the
kernel commutes with ``c1`` and ``c2`` and the transform reduces to two
ordinary complex DFTs in which ``j`` plays the role of the imaginary unit.
That is the fast path; :func:`qft_forward_naive` is the direct O(N^2) sum.

Spectra are kept in natural DFT order: bin 0 is DC, bins ``1..(N-1)//2``
are positive frequencies, bins above ``N/2`` are negative frequencies and,
for even ``N``, bin ``N/2`` is the Nyquist bin.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fft import fft, ifft
from .quaternion import complex_to_quat, involution_array, qmul_array

__all__ = [
    "ComplexSignal",
    "QuaternionSignal",
    "QSpectrum",
    "as_quaternion_array",
    "qft_forward",
    "qft_inverse",
    "qft_forward_naive",
    "frequencies",
    "sign_mask",
    "centered",
    "symmetry_components",
    "check_i_involution_reversal",
    "qft_of_conjugate",
    "frequency_shift",
    "convolve_right_real",
    "qmul_bins",
]


def _check_dt(dt: float) -> float:
    dt = float(dt)
    if not (dt > 0.0 and np.isfinite(dt)):
        raise ValueError(f"sample interval must be positive and finite, got {dt}")
    return dt


@dataclass(frozen=True, eq=False)
class ComplexSignal:
    """Uniformly sampled complex signal ``z[n] = z_r[n] + i z_i[n]``."""

    samples: np.ndarray
    dt: float = 1.0

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex).reshape(-1)
        if s.size < 1:
            raise ValueError("signal must have at least one sample")
        if not np.all(np.isfinite(s)):
            raise ValueError("signal contains non-finite samples")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "dt", _check_dt(self.dt))

    def __len__(self) -> int:
        return self.samples.size

    @property
    def t(self) -> np.ndarray:
        return np.arange(len(self)) * self.dt

    def conj(self) -> ComplexSignal:
        return ComplexSignal(np.conj(self.samples), self.dt)


@dataclass(frozen=True, eq=False)
class QuaternionSignal:
    """Uniformly sampled quaternion signal, samples shaped ``(N, 4)``."""

    samples: np.ndarray
    dt: float = 1.0

    def __post_init__(self):
        s = np.array(self.samples, dtype=float)
        if s.ndim != 2 or s.shape[1] != 4:
            raise ValueError(f"quaternion samples must have shape (N, 4), got {s.shape}")
        if s.shape[0] < 1:
            raise ValueError("signal must have at least one sample")
        if not np.all(np.isfinite(s)):
            raise ValueError("signal contains non-finite samples")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)
        object.__setattr__(self, "dt", _check_dt(self.dt))

    def __len__(self) -> int:
        return self.samples.shape[0]

    @property
    def t(self) -> np.ndarray:
        return np.arange(len(self)) * self.dt

    @classmethod
    def from_complex(cls, z: ComplexSignal) -> QuaternionSignal:
        return cls(complex_to_quat(z.samples), z.dt)


@dataclass(frozen=True, eq=False)
class QSpectrum:
    """Quaternion spectrum in natural DFT order, bins shaped ``(N, 4)``."""

    bins: np.ndarray
    df: float = 1.0

    def __post_init__(self):
        b = np.array(self.bins, dtype=float)
        if b.ndim != 2 or b.shape[1] != 4:
            raise ValueError(f"spectrum bins must have shape (N, 4), got {b.shape}")
        b.setflags(write=False)
        object.__setattr__(self, "bins", b)
        object.__setattr__(self, "df", _check_dt(self.df))

    def __len__(self) -> int:
        return self.bins.shape[0]

    @property
    def dt(self) -> float:
        return 1.0 / (len(self) * self.df)

    @property
    def nu(self) -> np.ndarray:
        return frequencies(len(self), self.dt)

    def modulus(self) -> np.ndarray:
        return np.linalg.norm(self.bins, axis=1)


def as_quaternion_array(s) -> tuple[np.ndarray, float]:
    """Return ``(samples (N, 4), dt)`` for any supported signal type."""
    if isinstance(s, QuaternionSignal):
        return np.asarray(s.samples), s.dt
    if isinstance(s, ComplexSignal):
        return complex_to_quat(s.samples), s.dt
    raise TypeError(f"expected ComplexSignal or QuaternionSignal, got {type(s).__name__}")


def frequencies(n: int, dt: float = 1.0) -> np.ndarray:
    """Bin frequencies in natural order (Nyquist reported as negative)."""
    return np.fft.fftfreq(n, d=dt)


def sign_mask(n: int) -> np.ndarray:
    """``sign(nu)`` per bin: 0 at DC and at the Nyquist bin of even ``n``."""
    k = np.arange(n)
    s = np.zeros(n)
    s[(k > 0) & (2 * k < n)] = 1.0
    s[2 * k > n] = -1.0
    return s


def qft_forward(s) -> QSpectrum:
    q, dt = as_quaternion_array(s)
    n = q.shape[0]
    # rows: c1 = w + y j, c2 = x + z j
    planes = np.stack([q[:, 0] + 1j * q[:, 2], q[:, 1] + 1j * q[:, 3]])
    c1, c2 = fft(planes)
    bins = np.stack([c1.real, c2.real, c1.imag, c2.imag], axis=1)
    return QSpectrum(bins, 1.0 / (n * dt))


def qft_inverse(S: QSpectrum) -> QuaternionSignal:
    b = np.asarray(S.bins)
    planes = np.stack([b[:, 0] + 1j * b[:, 2], b[:, 1] + 1j * b[:, 3]])
    c1, c2 = ifft(planes)
    return QuaternionSignal(np.stack([c1.real, c2.real, c1.imag, c2.imag], axis=1), S.dt)


def qft_forward_naive(s) -> QSpectrum:
    """Direct evaluation of the defining sum, one Hamilton product per term."""
    q, dt = as_quaternion_array(s)
    n = q.shape[0]
    idx = np.arange(n)
    kernel = np.zeros((n, 4))
    bins = np.empty((n, 4))
    for k in range(n):
        theta = 2.0 * np.pi * ((k * idx) % n) / n
        kernel[:, 0] = np.cos(theta)
        kernel[:, 2] = -np.sin(theta)
        bins[k] = qmul_array(q, kernel).sum(axis=0)
    return QSpectrum(bins, 1.0 / (n * dt))


def centered(S: QSpectrum) -> tuple[np.ndarray, np.ndarray]:
    """``(nu, bins)`` reordered from most negative to most positive frequency."""
    return np.fft.fftshift(S.nu), np.fft.fftshift(np.asarray(S.bins), axes=0)


def symmetry_components(S: QSpectrum) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """``(Re, Im_i, Im_j, Im_k)`` of every bin.

    For a complex input these carry, in order, the even part of the real
    component, the even part of the imaginary component, the odd part of
    the real component and the odd part of the imaginary component.
    """
    b = np.asarray(S.bins)
    return b[:, 0].copy(), b[:, 1].copy(), b[:, 2].copy(), b[:, 3].copy()


def check_i_involution_reversal(S: QSpectrum) -> float:
    """Max over bins of ``|Z[-k] - (-i Z[k] i)|``; zero for complex input."""
    b = np.asarray(S.bins)
    n = b.shape[0]
    mirrored = b[(-np.arange(n)) % n]
    return float(np.max(np.linalg.norm(mirrored - involution_array(b, "i"), axis=1)))


def qft_of_conjugate(S: QSpectrum) -> QSpectrum:
    """Spectrum of the conjugated complex signal, ``-j Z j`` bin-wise."""
    return QSpectrum(involution_array(S.bins, "j"), S.df)


def frequency_shift(S: QSpectrum, k0: int) -> QSpectrum:
    """Circularly shift bins so that ``Z'[k] = Z[k - k0]``.

    Equivalent to right-multiplying the time signal by
    ``exp(j 2 pi k0 n / N)``.
    """
    return QSpectrum(np.roll(S.bins, int(k0), axis=0), S.df)


def convolve_right_real(g: ComplexSignal, f) -> ComplexSignal:
    """Circular convolution ``(g * f)[n] = sum_m g[m] f[n - m]`` with real ``f``.

    Its transform equals ``qft(g) qft(f)`` bin-wise, in that order.
    """
    f = np.asarray(f, dtype=float).reshape(-1)
    if f.size != len(g):
        raise ValueError(f"length mismatch: signal has {len(g)} samples, kernel has {f.size}")
    out = ifft(fft(g.samples) * fft(f))
    return ComplexSignal(out, g.dt)


def qmul_bins(P: QSpectrum, Q: QSpectrum) -> QSpectrum:
    """Bin-wise Hamilton product ``P[k] Q[k]``."""
    if len(P) != len(Q):
        raise ValueError("spectra have different lengths")
    return QSpectrum(qmul_array(P.bins, Q.bins), P.df)
