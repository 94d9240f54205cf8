"""Quaternion Hilbert transform and the hypercomplex representation.

The hypercomplex representation of a complex signal ``z`` is the quaternion
signal whose QFT is ``Z`` with the negative frequencies suppressed and the
positive ones doubled. It splits in Cartesian Cayley-Dickson form as
``z_hat = z + o j``: the simplex part is the source signal and the perplex
part ``o`` is its quadrature companion, the Hilbert transform below.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qft import (
    ComplexSignal,
    QSpectrum,
    QuaternionSignal,
    qft_forward,
    qft_inverse,
    sign_mask,
)
from .quaternion import cd_join, cd_split, involution_array, qmul_array

__all__ = [
    "HyperRep",
    "hilbert_j",
    "one_sided_mask",
    "hypercomplex",
    "hypercomplex_time",
    "simplex",
    "perplex",
    "negative_band_ratio",
]

_J = np.array([0.0, 0.0, 1.0, 0.0])


@dataclass(frozen=True, eq=False)
class HyperRep:
    signal: QuaternionSignal
    source_len: int
    dt: float

    @property
    def samples(self) -> np.ndarray:
        return self.signal.samples

    def __len__(self) -> int:
        return len(self.signal)

    @classmethod
    def from_quaternion(cls, q: QuaternionSignal) -> HyperRep:
        return cls(q, len(q), q.dt)


def _require_len(z: ComplexSignal, minimum: int = 2) -> None:
    if len(z) < minimum:
        raise ValueError(f"need at least {minimum} samples, got {len(z)}")


def hilbert_j(z: ComplexSignal, side: str = "right") -> ComplexSignal:
    """Hilbert transform of a complex signal through the QFT.

    The spectrum is multiplied bin-wise by ``-j sign(nu)`` (zero at DC and
    Nyquist) and transformed back. Because ``j`` anticommutes with the
    ``i``-part of the spectrum, the side of the product matters:

    ``side="right"`` computes ``Z(nu) (-j sign(nu))``. The result is the
    quadrature signal ``o`` with ``z_hat = z + o j``; it acts on the real
    and imaginary parts independently, so ``cos -> sin`` and
    ``i sin -> -i cos``.

    ``side="left"`` computes ``(-j sign(nu)) Z(nu)``, which yields the
    complex conjugate of the right-sided result.
    """
    _require_len(z)
    S = qft_forward(z)
    sgn = sign_mask(len(z))[:, None]
    factor = -sgn * _J
    if side == "right":
        prod = qmul_array(S.bins, factor)
    elif side == "left":
        prod = qmul_array(factor, S.bins)
    else:
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    q = qft_inverse(QSpectrum(prod, S.df)).samples
    return ComplexSignal(q[:, 0] + 1j * q[:, 1], z.dt)


def one_sided_mask(n: int) -> np.ndarray:
    """``1 + sign(nu)`` per bin: 1 at DC and Nyquist, 2 above, 0 below."""
    return 1.0 + sign_mask(n)


def hypercomplex(z: ComplexSignal) -> HyperRep:
    """Hypercomplex representation built in the frequency domain."""
    _require_len(z)
    S = qft_forward(z)
    masked = QSpectrum(S.bins * one_sided_mask(len(z))[:, None], S.df)
    return HyperRep(qft_inverse(masked), len(z), z.dt)


def hypercomplex_time(z: ComplexSignal) -> HyperRep:
    """Cross-check path: ``z + hilbert_j(z) j`` assembled sample by sample."""
    o = hilbert_j(z)
    return HyperRep(QuaternionSignal(cd_join(z.samples, o.samples), z.dt), len(z), z.dt)


def _as_quaternions(h) -> tuple[np.ndarray, float]:
    if isinstance(h, HyperRep):
        return np.asarray(h.samples), h.dt
    if isinstance(h, QuaternionSignal):
        return np.asarray(h.samples), h.dt
    raise TypeError(f"expected HyperRep or QuaternionSignal, got {type(h).__name__}")


def simplex(h) -> ComplexSignal:
    """``(z_hat + (-i z_hat i)) / 2`` as a complex signal."""
    q, dt = _as_quaternions(h)
    half = 0.5 * (q + involution_array(q, "i"))
    return ComplexSignal(half[:, 0] + 1j * half[:, 1], dt)


def perplex(h) -> ComplexSignal:
    """``(z_hat - (-i z_hat i)) / 2`` right-divided by ``j``."""
    q, dt = _as_quaternions(h)
    half = 0.5 * (q - involution_array(q, "i"))
    # (y j + z k) j^-1 = y + z i
    _, o = cd_split(half)
    return ComplexSignal(o, dt)


def negative_band_ratio(h) -> float:
    """Largest strictly-negative-frequency bin modulus over the largest bin."""
    q, dt = _as_quaternions(h)
    mod = qft_forward(QuaternionSignal(q, dt)).modulus()
    peak = mod.max()
    if peak == 0.0:
        return 0.0
    neg = sign_mask(len(mod)) < 0
    return float(mod[neg].max() / peak) if np.any(neg) else 0.0
