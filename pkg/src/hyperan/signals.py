"""Deterministic test signals: band-limited baseband and orthocomplex modulation.

Time runs over a unit record ``t in [0, 1)`` by default (``dt = 1/N``), so
frequencies in Hz are also cycles per record.
"""

from __future__ import annotations

import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from .qft import (
    ComplexSignal,
    QSpectrum,
    QuaternionSignal,
    frequency_shift,
    qft_forward,
    qft_inverse,
)
from .analytic import simplex
from .fft import fft, ifft
from .quaternion import cd_split, from_polar_cd_array

__all__ = [
    "PRNG_ALGORITHM",
    "BasebandSpec",
    "PhaseLaw",
    "Modulated",
    "SeparationReport",
    "SeparationWarning",
    "bandlimited_random",
    "resample_bandlimited",
    "phase_samples",
    "frequency_samples",
    "modulate",
    "modulate_spectral",
    "band_edge",
    "separation_check",
    "Example",
    "example",
    "EXAMPLE_DEFAULTS",
    "baseband_params",
]

PRNG_ALGORITHM = "numpy.PCG64"


class SeparationWarning(UserWarning):
    """Carrier and baseband spectra overlap; the envelope is not recoverable."""


@dataclass(frozen=True)
class BasebandSpec:
    n_samples: int = 1024
    max_cycles: int = 16
    seed: int = 1

    def __post_init__(self):
        if self.n_samples < 3:
            raise ValueError(f"n_samples must be >= 3, got {self.n_samples}")
        if not 0 < self.max_cycles < self.n_samples / 2:
            raise ValueError(
                f"max_cycles must satisfy 0 < max_cycles < n_samples/2, got {self.max_cycles}"
            )
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class PhaseLaw:
    """Carrier phase law ``B(t)``.

    ``constant_freq``: ``theta + 2 pi nu0 t``.

    ``step_freq``: frequency ``nu0``, then ``nu1`` on ``[t1, t2)``, then
    ``nu0`` again; the phase is the running integral, so it stays continuous.

    ``triangle_sweep``: frequency ``nu0 + alpha * tri(t)`` where ``tri`` is the
    self-convolution of a width-``T`` boxcar, centered at ``t = T`` and
    scaled to peak 1. With ``T = 0.5`` and ``alpha = nu0`` the frequency
    rises linearly to ``2 nu0`` at ``t = 0.5`` and returns to ``nu0`` at 1.
    """

    kind: str = "constant_freq"
    nu0: float = 64.0
    nu1: float | None = None
    alpha: float | None = None
    T: float = 0.5
    t1: float = 0.25
    t2: float = 0.75
    theta: float = 0.0

    def __post_init__(self):
        if self.kind not in ("constant_freq", "step_freq", "triangle_sweep"):
            raise ValueError(f"unknown phase law kind {self.kind!r}")
        if not self.nu0 > 0:
            raise ValueError(f"nu0 must be positive, got {self.nu0}")
        if self.kind == "step_freq" and not self.t1 < self.t2:
            raise ValueError(f"step law needs t1 < t2, got {self.t1}, {self.t2}")
        if self.kind == "triangle_sweep" and not self.T > 0:
            raise ValueError(f"boxcar width T must be positive, got {self.T}")

    @property
    def nu1_resolved(self) -> float:
        return 2.0 * self.nu0 if self.nu1 is None else float(self.nu1)

    @property
    def alpha_resolved(self) -> float:
        return float(self.nu0) if self.alpha is None else float(self.alpha)

    def frequency_range(self) -> tuple[float, float]:
        if self.kind == "constant_freq":
            return self.nu0, self.nu0
        if self.kind == "step_freq":
            lo, hi = sorted((self.nu0, self.nu1_resolved))
            return lo, hi
        lo, hi = sorted((self.nu0, self.nu0 + self.alpha_resolved))
        return lo, hi

    def params(self) -> dict:
        d = asdict(self)
        if self.kind == "step_freq":
            d["nu1"] = self.nu1_resolved
        if self.kind == "triangle_sweep":
            d["alpha"] = self.alpha_resolved
        return {k: v for k, v in d.items() if v is not None}


def _white(n: int, seed: int) -> np.ndarray:
    rng = np.random.Generator(np.random.PCG64(seed))
    re = rng.uniform(-1.0, 1.0, n)
    im = rng.uniform(-1.0, 1.0, n)
    return re + 1j * im


def _band_mask(n: int, max_cycles: int) -> np.ndarray:
    k = np.arange(n)
    return (k <= max_cycles) | (k >= n - max_cycles)


def bandlimited_random(spec: BasebandSpec, dt: float | None = None) -> ComplexSignal:
    """Seeded complex white noise with every bin above ``max_cycles`` removed.

    The cut is symmetric in frequency, so the i-involution symmetry of the
    spectrum survives and the inverse transform stays in the ``{1, i}``
    plane; the simplex part removes rounding residue.
    """
    n = spec.n_samples
    dt = 1.0 / n if dt is None else dt
    S = qft_forward(ComplexSignal(_white(n, spec.seed), dt))
    kept = QSpectrum(S.bins * _band_mask(n, spec.max_cycles)[:, None], S.df)
    return simplex(qft_inverse(kept))


def resample_bandlimited(z: ComplexSignal, n: int) -> ComplexSignal:
    """Exact periodic interpolation of a band-limited signal onto ``n`` samples.

    The record duration is preserved. Raises if the signal has content at
    or above the new Nyquist frequency.
    """
    m = len(z)
    if n == m:
        return z
    Z = fft(z.samples)
    k = np.rint(np.fft.fftfreq(m, 1.0 / m)).astype(int)
    occupied = np.abs(Z) > 1e-12 * max(np.abs(Z).max(), 1e-300)
    if np.any(np.abs(k[occupied]) >= min(m, n) / 2):
        raise ValueError("signal is not band-limited below the target Nyquist frequency")
    out = np.zeros(n, dtype=complex)
    keep = np.abs(k) < min(m, n) / 2
    out[k[keep] % n] = Z[keep]
    samples = ifft(out) * (n / m)
    return ComplexSignal(samples, z.dt * m / n)


def _tri_integral(t: np.ndarray, T: float) -> np.ndarray:
    # integral from 0 to t of max(0, 1 - |s - T| / T)
    t = np.clip(t, 0.0, 2.0 * T)
    up = t * t / (2.0 * T)
    u = t - T
    down = T / 2.0 + u - u * u / (2.0 * T)
    return np.where(t <= T, up, down)


def frequency_samples(law: PhaseLaw, n: int, dt: float) -> np.ndarray:
    """Instantaneous carrier frequency ``B'(t) / 2 pi`` in Hz."""
    t = np.arange(n) * dt
    if law.kind == "constant_freq":
        return np.full(n, float(law.nu0))
    if law.kind == "step_freq":
        inside = (t >= law.t1) & (t < law.t2)
        return np.where(inside, law.nu1_resolved, law.nu0)
    tri = np.clip(1.0 - np.abs(t - law.T) / law.T, 0.0, None)
    return law.nu0 + law.alpha_resolved * tri


def phase_samples(law: PhaseLaw, n: int, dt: float) -> np.ndarray:
    """Carrier phase ``B(t)`` in radians at ``t = 0, dt, ..., (n-1) dt``."""
    t = np.arange(n) * dt
    if law.kind == "constant_freq":
        cycles = law.nu0 * t
    elif law.kind == "step_freq":
        cycles = law.nu0 * t + (law.nu1_resolved - law.nu0) * np.clip(t - law.t1, 0.0, law.t2 - law.t1)
    else:
        cycles = law.nu0 * t + law.alpha_resolved * _tri_integral(t, law.T)
    return law.theta + 2.0 * np.pi * cycles


@dataclass(frozen=True, eq=False)
class Modulated:
    """``q = A exp(B j) = z + o j``."""

    q: QuaternionSignal
    z: ComplexSignal
    o: ComplexSignal
    separated: bool = True


def modulate(A: ComplexSignal, B) -> Modulated:
    B = np.asarray(B, dtype=float).reshape(-1)
    if B.size != len(A):
        raise ValueError(f"length mismatch: amplitude has {len(A)} samples, phase has {B.size}")
    q = from_polar_cd_array(A.samples, B)
    z1, z2 = cd_split(q)
    return Modulated(QuaternionSignal(q, A.dt), ComplexSignal(z1, A.dt), ComplexSignal(z2, A.dt))


def band_edge(S: QSpectrum, rel_tol: float = 1e-9) -> float:
    """Highest ``|nu|`` whose bin modulus exceeds ``rel_tol`` times the peak."""
    mod = S.modulus()
    peak = mod.max()
    if peak == 0.0:
        return 0.0
    nu = np.abs(S.nu)
    return float(nu[mod > rel_tol * peak].max())


def modulate_spectral(A: ComplexSignal, k0: int) -> Modulated:
    """Orthocomplex modulation by shifting the QFT of ``A`` by ``k0`` bins.

    Warns with :class:`SeparationWarning` when ``k0`` does not exceed the
    baseband's band edge (in bins); the result is still returned.
    """
    S = qft_forward(A)
    edge_bins = band_edge(S) / S.df
    separated = k0 > edge_bins + 1e-9
    if not separated:
        warnings.warn(
            f"carrier shift {k0} bins does not exceed baseband edge {edge_bins:g} bins",
            SeparationWarning,
            stacklevel=2,
        )
    q = qft_inverse(frequency_shift(S, k0))
    z1, z2 = cd_split(q.samples)
    return Modulated(q, ComplexSignal(z1, A.dt), ComplexSignal(z2, A.dt), separated)


@dataclass(frozen=True)
class SeparationReport:
    band_edge: float
    min_carrier: float
    max_carrier: float
    margin: float
    nyquist: float
    below_nyquist: bool
    one_sided: bool


def separation_check(A_spec: QSpectrum, law: PhaseLaw) -> SeparationReport:
    """Report whether ``A exp(B j)`` is guaranteed a one-sided spectrum.

    Requires the slowest carrier frequency to exceed the baseband edge and,
    for sampled signals, the fastest carrier plus the band edge to stay
    below Nyquist.
    """
    edge = band_edge(A_spec)
    lo, hi = law.frequency_range()
    nyquist = 0.5 / A_spec.dt
    below = hi + edge < nyquist
    margin = lo - edge
    return SeparationReport(edge, lo, hi, margin, nyquist, below, bool(margin > 0 and below))


# -- the three worked examples ----------------------------------------------

EXAMPLE_DEFAULTS = {
    1: {"n": 1024, "kind": "constant_freq", "carrier_ratio": 4.0},
    2: {"n": 1024, "kind": "step_freq", "carrier_ratio": 12.5},
    3: {"n": 2048, "kind": "triangle_sweep", "carrier_ratio": 25.0},
}

BASEBAND_N = 1024


@dataclass(frozen=True, eq=False)
class Example:
    number: int
    baseband: ComplexSignal
    law: PhaseLaw
    phase: np.ndarray
    modulated: Modulated
    params: dict = field(default_factory=dict)

    @property
    def z(self) -> ComplexSignal:
        return self.modulated.z

    @property
    def o(self) -> ComplexSignal:
        return self.modulated.o

    @property
    def n(self) -> int:
        return len(self.baseband)

    @property
    def dt(self) -> float:
        return self.baseband.dt

    def true_frequency(self) -> np.ndarray:
        return frequency_samples(self.law, self.n, self.dt)


def example(
    number: int,
    *,
    seed: int = 1,
    n: int | None = None,
    max_cycles: int = 16,
    nu0: float | None = None,
    nu1: float | None = None,
    alpha: float | None = None,
    t1: float = 0.25,
    t2: float = 0.75,
    T: float = 0.5,
    theta: float = 0.0,
) -> Example:
    """Build one of the three modulation examples on a unit record.

    The baseband is drawn on ``BASEBAND_N`` samples and interpolated
    exactly when ``n`` differs, so every example shares the same envelope
    for a given seed. Example 1 is generated by a spectral shift, the
    others by time-domain modulation.
    """
    if number not in EXAMPLE_DEFAULTS:
        raise ValueError(f"example must be 1, 2 or 3, got {number}")
    d = EXAMPLE_DEFAULTS[number]
    n = d["n"] if n is None else int(n)
    nu0 = d["carrier_ratio"] * max_cycles if nu0 is None else float(nu0)
    base_n = min(BASEBAND_N, n)
    A = bandlimited_random(BasebandSpec(base_n, max_cycles, seed))
    A = resample_bandlimited(A, n)
    law = PhaseLaw(d["kind"], nu0=nu0, nu1=nu1, alpha=alpha, T=T, t1=t1, t2=t2, theta=theta)
    B = phase_samples(law, n, A.dt)
    spectral = number == 1 and theta == 0.0 and float(nu0).is_integer()
    mod = modulate_spectral(A, int(nu0)) if spectral else modulate(A, B)
    params = {
        "example": number,
        "seed": seed,
        "n": n,
        "dt": A.dt,
        "max_cycles": max_cycles,
        "baseband_n": base_n,
        "prng": PRNG_ALGORITHM,
        "method": "spectral_shift" if spectral else "time_domain",
    }
    params.update({f"law_{k}": v for k, v in law.params().items()})
    return Example(number, A, law, B, mod, params)


def baseband_params(spec: BasebandSpec) -> dict:
    return {"seed": spec.seed, "n": spec.n_samples, "max_cycles": spec.max_cycles, "prng": PRNG_ALGORITHM}

