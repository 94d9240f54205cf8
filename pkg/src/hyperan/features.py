"""Instantaneous amplitude, phase, frequency and osculating normal.

Each sample of the hypercomplex representation is written in polar
Cayley-Dickson form ``rho exp(phi u j)``, where ``rho`` is complex, ``phi`` is
real and ``u`` is a unit complex number giving the direction of the complex
phase (``u = 1`` for a real phase). The polar split only fixes ``phi``
modulo ``pi``, since adding ``pi`` flips the sign of ``rho``, so the phase is
unwrapped jointly with the amplitude.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import HyperRep
from .qft import QuaternionSignal
from .quaternion import cd_split, from_polar_cd_array

__all__ = [
    "DEGENERATE",
    "GAP",
    "SINGULAR",
    "InstFeatures",
    "DegenerateSignalError",
    "extract",
    "unwrap",
    "unwrap_polar",
    "inst_frequency",
    "osculating_normal",
    "unit_normals",
    "singular_samples",
]

DEGENERATE = 1  # first CD component ~ 0; axis filled from neighbours
GAP = 2  # degenerate run too long to fill; values are NaN
SINGULAR = 4  # corner or jump in the instantaneous frequency

MAX_FILL_RUN = 5


class DegenerateSignalError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class InstFeatures:
    rho: np.ndarray
    phi: np.ndarray
    freq: np.ndarray
    normal: np.ndarray
    dt: float
    axis: np.ndarray
    mask: np.ndarray

    def __len__(self) -> int:
        return self.rho.size

    @property
    def t(self) -> np.ndarray:
        return np.arange(len(self)) * self.dt

    @property
    def phi_wrapped(self) -> np.ndarray:
        """Phase folded into ``(-pi/2, pi/2]``; pairs with ``rho_wrapped``."""
        return self.phi - np.pi * self._turns()

    @property
    def rho_wrapped(self) -> np.ndarray:
        return self.rho * np.where(self._turns() % 2 == 0, 1.0, -1.0)

    def _turns(self) -> np.ndarray:
        return np.ceil(self.phi / np.pi - 0.5)

    def reconstruct(self) -> np.ndarray:
        """``rho exp(phi u j)`` as a ``(N, 4)`` array."""
        return from_polar_cd_array(self.rho, self.phi * self.axis)


def _runs(flags: np.ndarray) -> list[tuple[int, int]]:
    """Half-open ``[start, stop)`` runs of True values."""
    padded = np.concatenate([[False], flags, [False]]).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    return list(zip(edges[::2], edges[1::2]))


def _fill_axis_angle(angle: np.ndarray, good: np.ndarray) -> np.ndarray:
    """Unwrap axis angles with period pi over good samples, interpolate the rest."""
    idx = np.flatnonzero(good)
    if idx.size == 0:
        return np.zeros_like(angle)
    a = unwrap(angle[idx], period=np.pi)
    return np.interp(np.arange(angle.size), idx, a)


def _polar_about_axis(z1, z2, u):
    """Real phase in (-pi/2, pi/2] and complex amplitude for a fixed axis.

    With ``a = z1`` and ``b = z2 conj(u)`` an exact sample satisfies
    ``a = rho cos(phi)``, ``b = rho sin(phi)``; neither step divides by ``a``.
    """
    a = z1
    b = z2 * np.conj(u)
    two_phi = np.arctan2(2.0 * np.real(b * np.conj(a)), np.abs(a) ** 2 - np.abs(b) ** 2)
    phi = 0.5 * two_phi
    rho = a * np.cos(phi) + b * np.sin(phi)
    return rho, phi


def unwrap(phase, period: float = np.pi) -> np.ndarray:
    """Remove jumps of a multiple of ``period`` between successive samples.

    Each successive difference is moved into ``(-period/2, period/2]`` by
    adding whole periods, and the corrections accumulate.
    """
    p = np.asarray(phase, dtype=float)
    if p.size < 2:
        return p.copy()
    d = np.diff(p)
    wrapped = d - period * np.ceil(d / period - 0.5)
    return np.concatenate([[p[0]], p[0] + np.cumsum(wrapped)])


def _extrapolate(values, idx, k):
    """Linear prediction at index ``k`` from the last two accepted samples."""
    if len(idx) == 1:
        return values[idx[-1]]
    i1, i0 = idx[-1], idx[-2]
    return values[i1] + (values[i1] - values[i0]) * (k - i1) / (i1 - i0)


def unwrap_polar(rho, phi, valid=None) -> tuple[np.ndarray, np.ndarray]:
    """Unwrap a polar phase that is only known modulo ``pi``.

    Adding ``pi`` to the phase and negating the amplitude leaves the sample
    unchanged, so each sample has candidates ``(phi + m pi, (-1)^m rho)``.
    The parity of ``m`` is taken from continuity of ``rho`` (linear
    prediction); when the amplitude is too small to decide, from the phase.
    The multiple of ``2 pi`` is then fixed by linear prediction of the
    phase, which tolerates increments up to ``pi`` per sample.

    Samples where ``valid`` is False are skipped and returned unchanged.
    """
    rho = np.array(rho, dtype=complex)
    phi = np.array(phi, dtype=float)
    n = phi.size
    valid = np.ones(n, dtype=bool) if valid is None else np.asarray(valid, dtype=bool)
    seen: list[int] = []
    scale = np.median(np.abs(rho[valid])) if np.any(valid) else 0.0
    for k in np.flatnonzero(valid):
        if not seen:
            seen.append(k)
            continue
        phi_pred = _extrapolate(phi, seen, k)
        rho_pred = _extrapolate(rho, seen, k)
        same = abs(rho[k] - rho_pred)
        flip = abs(rho[k] + rho_pred)
        if min(same, flip) < 0.5 * max(same, flip) and max(same, flip) > 1e-6 * scale:
            parity = 0 if same <= flip else 1
            m = parity + 2 * np.round((phi_pred - phi[k] - parity * np.pi) / (2 * np.pi))
        else:
            m = np.round((phi_pred - phi[k]) / np.pi)
        phi[k] += m * np.pi
        if int(m) % 2:
            rho[k] = -rho[k]
        seen.append(k)
    return rho, phi


def inst_frequency(phi, dt: float, savgol: int | None = None, polyorder: int = 3) -> np.ndarray:
    """``phi' / 2 pi`` by central differences, one-sided at the ends.

    ``savgol`` (an odd window length) switches to a Savitzky-Golay
    polynomial derivative for noisy phases.
    """
    phi = np.asarray(phi, dtype=float)
    if phi.size < 3:
        raise ValueError(f"need at least 3 samples, got {phi.size}")
    if savgol is None:
        d = np.gradient(phi, dt)
    else:
        from scipy.signal import savgol_filter

        d = savgol_filter(phi, savgol, polyorder, deriv=1, delta=dt, mode="interp")
    return d / (2.0 * np.pi)


def osculating_normal(rho, dt: float, mode: str = "frenet") -> np.ndarray:
    """Normal of the osculating plane of the curve ``(Re rho, Im rho, t)``.

    ``mode="frenet"`` returns ``r' x r''`` (binormal direction).
    ``mode="literal"`` returns ``r x r'``, which depends on the origin.
    Vectors are not normalized; see :func:`unit_normals`.
    """
    rho = np.asarray(rho, dtype=complex)
    n = rho.size
    if n < 5:
        raise ValueError(f"need at least 5 samples, got {n}")
    r = np.stack([rho.real, rho.imag, np.arange(n) * dt], axis=1)
    d1 = np.gradient(r, dt, axis=0)
    if mode == "frenet":
        d2 = np.gradient(d1, dt, axis=0)
        return np.cross(d1, d2)
    if mode == "literal":
        return np.cross(r, d1)
    raise ValueError(f"mode must be 'frenet' or 'literal', got {mode!r}")


def unit_normals(normal, rel_tol: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """Normalized vectors and a mask of samples where the plane is undefined."""
    normal = np.asarray(normal, dtype=float)
    length = np.linalg.norm(normal, axis=1)
    finite = np.isfinite(length)
    ref = length[finite].max() if np.any(finite) else 0.0
    undefined = ~finite | (length <= rel_tol * ref) | (length == 0.0)
    unit = np.full_like(normal, np.nan)
    ok = ~undefined
    unit[ok] = normal[ok] / length[ok, None]
    return unit, undefined


def _projector(x: np.ndarray, degree: int = 1) -> np.ndarray:
    """Residual-maker ``I - X (X^T X)^-1 X^T`` for a polynomial fit at ``x``."""
    X = np.vander(x, degree + 1, increasing=True)
    return np.eye(x.size) - X @ np.linalg.pinv(X)


def singular_samples(
    freq, window: int = 8, guard: int = 2, ratio: float = 25.0, rel_floor: float = 1e-4
) -> np.ndarray:
    """Samples at a corner or jump of the instantaneous frequency.

    For each split point the ``window`` samples on either side, skipping
    ``guard`` samples next to the split, are fitted once by a single
    quadratic and once by a separate line per side. A split is flagged when
    the quadratic leaves ``ratio`` times more residual than the pair and its
    RMS residual exceeds ``rel_floor`` times the median ``|freq|``. Smooth
    curvature is absorbed by the quadratic and noise inflates both fits
    alike, so neither triggers the test; the guard band keeps the smeared
    samples of a jump out of the side fits.
    """
    f = np.asarray(freq, dtype=float)
    n = f.size
    out = np.zeros(n, dtype=bool)
    w, g = int(window), int(guard)
    if w < 3 or n < 2 * (w + g) + 1:
        return out
    finite = np.isfinite(f)
    if not np.any(finite):
        return out
    offsets = np.concatenate([np.arange(-g - w, -g), np.arange(g, g + w)])
    split = np.arange(g + w, n - g - w + 1)
    Y = f[split[:, None] + offsets]
    ok = np.all(np.isfinite(Y), axis=1)
    Y = np.where(np.isfinite(Y), Y, 0.0)
    side = _projector(np.arange(w, dtype=float))
    r_left = Y[:, :w] @ side.T
    r_right = Y[:, w:] @ side.T
    r_one = Y @ _projector(offsets.astype(float) / w, degree=2).T
    pair = np.sum(r_left**2, axis=1) + np.sum(r_right**2, axis=1)
    single = np.sum(r_one**2, axis=1)
    floor = (rel_floor * np.median(np.abs(f[finite]))) ** 2 * (2 * w)
    hit = ok & (single > ratio * pair) & (single > floor)
    out[split[hit]] = True
    out[split[hit] - 1] = True
    return out


def extract(
    h,
    mode: str = "frenet",
    eps: float = 1e-10,
    singular_window: int | None = 8,
    savgol: int | None = None,
) -> InstFeatures:
    """Instantaneous features of a hypercomplex representation.

    A sample is degenerate when ``|z1|^2 < eps |q|^2`` (first Cayley-Dickson
    component vanishing). There the direction of the complex phase cannot
    be read off the sample, so it is interpolated from the neighbours and
    ``rho``, ``phi`` are solved about that axis; runs of ``MAX_FILL_RUN`` or
    more degenerate samples become NaN gaps.

    ``singular_window`` sets the half-width of the corner/jump test behind
    the ``SINGULAR`` flag (see :func:`singular_samples`); ``None`` disables it.
    """
    if isinstance(h, HyperRep):
        q, dt = np.asarray(h.samples), h.dt
    elif isinstance(h, QuaternionSignal):
        q, dt = np.asarray(h.samples), h.dt
    else:
        raise TypeError(f"expected HyperRep or QuaternionSignal, got {type(h).__name__}")
    n = q.shape[0]
    z1, z2 = cd_split(q)
    r1sq = np.abs(z1) ** 2
    qsq = r1sq + np.abs(z2) ** 2
    zero = qsq == 0.0
    degenerate = ~zero & (r1sq < eps * qsq)
    if np.all(zero | degenerate):
        raise DegenerateSignalError("degenerate everywhere: no sample has a usable polar form")

    # axis of the complex phase, defined up to sign
    axis_ok = ~zero & ~degenerate & (np.abs(z2) > 0.0)
    direction = z2 * np.conj(z1)
    angle = np.where(axis_ok, np.angle(direction), 0.0)
    if np.any(axis_ok):
        ref = 0.5 * np.angle(np.sum(np.where(axis_ok, (direction / np.where(axis_ok, np.abs(direction), 1.0)) ** 2, 0.0)))
        axis_angle = _fill_axis_angle(angle, axis_ok)
        axis_angle -= np.pi * np.round((np.mean(axis_angle) - ref) / np.pi)
    else:
        axis_angle = np.zeros(n)
    axis = np.exp(1j * axis_angle)

    rho, phi = _polar_about_axis(z1, z2, axis)
    usable = ~zero
    mask = np.zeros(n, dtype=np.int8)
    mask[degenerate] |= DEGENERATE
    for start, stop in _runs(degenerate):
        if stop - start >= MAX_FILL_RUN:
            usable[start:stop] = False
            mask[start:stop] |= GAP

    rho, phi = unwrap_polar(rho, phi, usable)
    rho[zero] = 0.0
    fill = zero & ~(mask & GAP).astype(bool)
    good = np.flatnonzero(usable)
    if np.any(fill):
        phi[fill] = np.interp(np.flatnonzero(fill), good, phi[good])
    gap = (mask & GAP).astype(bool)
    rho[gap] = np.nan
    phi[gap] = np.nan

    freq = inst_frequency(phi, dt, savgol=savgol) if n >= 3 else np.full(n, np.nan)
    if singular_window is not None:
        mask[singular_samples(freq, singular_window)] |= SINGULAR
    normal = osculating_normal(rho, dt, mode) if n >= 5 else np.full((n, 3), np.nan)
    return InstFeatures(rho, phi, freq, normal, dt, axis, mask)
