"""Short-time quaternion Fourier transform and its modulus spectrogram."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fft import fft
from .qft import as_quaternion_array

__all__ = ["Spectrogram", "window_samples", "stqft", "ridge"]


@dataclass(frozen=True, eq=False)
class Spectrogram:
    mags: np.ndarray  # (frames, bins)
    frame_hop: int
    window_len: int
    df: float
    dt_frame: float
    dt: float
    window: str = "hann"
    onesided: bool = True

    @property
    def n_frames(self) -> int:
        return self.mags.shape[0]

    @property
    def freqs(self) -> np.ndarray:
        if self.onesided:
            return np.arange(self.mags.shape[1]) * self.df
        return np.fft.fftfreq(self.window_len, d=self.dt)

    @property
    def times(self) -> np.ndarray:
        """Time at the center of each frame."""
        return (np.arange(self.n_frames) * self.frame_hop + (self.window_len - 1) / 2.0) * self.dt

    def frame_span(self, f: int) -> tuple[float, float]:
        start = f * self.frame_hop * self.dt
        return start, start + (self.window_len - 1) * self.dt


def window_samples(kind: str, length: int) -> np.ndarray:
    if kind == "rect":
        return np.ones(length)
    if kind == "hann":
        # periodic Hann
        return 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(length) / length)
    raise ValueError(f"window must be 'rect' or 'hann', got {kind!r}")


def stqft(s, window_len: int = 128, hop: int = 32, window: str = "hann", onesided: bool = True) -> Spectrogram:
    """Modulus of the QFT of successive windowed frames.

    The window is real, so multiplying by it commutes with the ``j`` kernel
    and every per-frame symmetry of the QFT is kept. With ``onesided`` only
    bins ``0..window_len // 2`` (DC to Nyquist) are returned.
    """
    q, dt = as_quaternion_array(s)
    n = q.shape[0]
    if window_len < 1 or hop < 1:
        raise ValueError("window_len and hop must be positive")
    if window_len > n:
        raise ValueError(f"window of {window_len} samples is longer than the signal ({n})")
    n_frames = (n - window_len) // hop + 1
    idx = np.arange(n_frames)[:, None] * hop + np.arange(window_len)
    frames = q[idx] * window_samples(window, window_len)[None, :, None]
    planes = np.stack([frames[..., 0] + 1j * frames[..., 2], frames[..., 1] + 1j * frames[..., 3]], axis=1)
    spec = fft(planes)
    # |Z|^2 = |C1|^2 + |C2|^2 for Z = C1 + i C2
    mags = np.sqrt(np.abs(spec[:, 0]) ** 2 + np.abs(spec[:, 1]) ** 2)
    if onesided:
        mags = mags[:, : window_len // 2 + 1]
    return Spectrogram(
        mags=mags,
        frame_hop=hop,
        window_len=window_len,
        df=1.0 / (window_len * dt),
        dt_frame=hop * dt,
        dt=dt,
        window=window,
        onesided=onesided,
    )


def ridge(spec: Spectrogram) -> np.ndarray:
    """Frequency of the strongest bin in each frame (lowest bin on ties)."""
    if spec.n_frames < 1:
        raise ValueError("spectrogram has no frames")
    return spec.freqs[np.argmax(spec.mags, axis=1)]
