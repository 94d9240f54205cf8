"""Quaternion algebra over the basis {1, i, j, k}.

Two layers live here. :class:`Quaternion` is an immutable scalar value with
operator overloads, convenient for algebra and tests. The ``*_array``
functions operate on float arrays whose last axis holds ``(w, x, y, z)``
and are what the signal-processing modules use.

The Cayley-Dickson forms pair a quaternion with two complex numbers in the
``{1, i}`` plane, written with Python ``complex`` (``1j`` standing in for
the quaternion unit ``i``)::

    q = z1 + z2 j            (Cartesian)
    q = A exp(B j)           (polar)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "Quaternion",
    "CayleyDickson",
    "PolarCD",
    "DegenerateQuaternionError",
    "mul",
    "conj",
    "involution",
    "inverse",
    "exp_degenerate",
    "to_polar_cd",
    "from_polar_cd",
    "qmul_array",
    "conj_array",
    "involution_array",
    "exp_degenerate_array",
    "to_polar_cd_array",
    "from_polar_cd_array",
    "complex_to_quat",
    "cd_split",
    "cd_join",
]

_AXES = ("i", "j", "k")


class DegenerateQuaternionError(ValueError):
    """Raised when the polar Cayley-Dickson split is not unique.

    This happens when the first Cayley-Dickson component vanishes
    (``q0 = q1 = 0``): the complex phase then sits on the ``|B| = pi/2``
    branch and the complex modulus cannot be separated from its direction.
    """


@dataclass(frozen=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, a) -> Quaternion:
        a = np.asarray(a, dtype=float)
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))

    @classmethod
    def from_complex(cls, c: complex) -> Quaternion:
        c = complex(c)
        return cls(c.real, c.imag, 0.0, 0.0)

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    @property
    def norm(self) -> float:
        """Squared modulus ``w^2 + x^2 + y^2 + z^2``."""
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    @property
    def modulus(self) -> float:
        return math.sqrt(self.norm)

    def is_pure(self) -> bool:
        return self.w == 0.0

    def is_unit(self, tol: float = 1e-12) -> bool:
        return abs(self.modulus - 1.0) <= tol

    def conj(self) -> Quaternion:
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def involution(self, axis: str) -> Quaternion:
        return involution(self, axis)

    def inverse(self) -> Quaternion:
        return inverse(self)

    def cayley_dickson(self) -> CayleyDickson:
        return CayleyDickson(complex(self.w, self.x), complex(self.y, self.z))

    def polar(self) -> PolarCD:
        return to_polar_cd(self)

    def isclose(self, other, atol: float = 1e-12) -> bool:
        other = _coerce(other)
        return all(abs(a - b) <= atol for a, b in zip(self, other))

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __add__(self, other) -> Quaternion:
        other = _coerce(other)
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other) -> Quaternion:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> Quaternion:
        return _coerce(other) - self

    def __mul__(self, other) -> Quaternion:
        return mul(self, _coerce(other))

    def __rmul__(self, other) -> Quaternion:
        return mul(_coerce(other), self)

    def __truediv__(self, other) -> Quaternion:
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        return mul(self, inverse(_coerce(other)))

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def _coerce(v) -> Quaternion:
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, (int, float, np.floating, np.integer)):
        return Quaternion(float(v))
    if isinstance(v, (complex, np.complexfloating)):
        return Quaternion.from_complex(v)
    raise TypeError(f"cannot interpret {type(v).__name__} as a quaternion")


class CayleyDickson(NamedTuple):
    """``q = z1 + z2 j`` with ``z1 = w + x i`` and ``z2 = y + z i``."""

    z1: complex
    z2: complex

    def to_quaternion(self) -> Quaternion:
        return Quaternion(self.z1.real, self.z1.imag, self.z2.real, self.z2.imag)


class PolarCD(NamedTuple):
    """``q = A exp(B j)``: complex modulus ``A`` and complex phase ``B``."""

    A: complex
    B: complex


# -- scalar operations --------------------------------------------------------


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product ``p q``."""
    return Quaternion.from_array(qmul_array(p.to_array(), q.to_array()))


def conj(q: Quaternion) -> Quaternion:
    return q.conj()


def involution(q: Quaternion, axis: str) -> Quaternion:
    """Anti-involution ``-mu q mu`` for ``mu`` one of ``'i'``, ``'j'``, ``'k'``."""
    return Quaternion.from_array(involution_array(q.to_array(), axis))


def inverse(q: Quaternion) -> Quaternion:
    n = q.norm
    if n == 0.0:
        raise ZeroDivisionError("zero quaternion has no inverse")
    return Quaternion(q.w / n, -q.x / n, -q.y / n, -q.z / n)


def exp_degenerate(c: float, d: float) -> Quaternion:
    """``exp(p)`` for the degenerate pure quaternion ``p = (c + d i) j``."""
    return Quaternion.from_array(exp_degenerate_array(c, d))


def to_polar_cd(q: Quaternion) -> PolarCD:
    A, B = to_polar_cd_array(q.to_array())
    return PolarCD(complex(A), complex(B))


def from_polar_cd(p: PolarCD) -> Quaternion:
    return Quaternion.from_array(from_polar_cd_array(p.A, p.B))


# -- array operations ---------------------------------------------------------


def qmul_array(p, q) -> np.ndarray:
    """Hamilton product of broadcastable ``(..., 4)`` arrays."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pw, px, py, pz = np.moveaxis(p, -1, 0)
    qw, qx, qy, qz = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            pw * qw - px * qx - py * qy - pz * qz,
            pw * qx + px * qw + py * qz - pz * qy,
            pw * qy - px * qz + py * qw + pz * qx,
            pw * qz + px * qy - py * qx + pz * qw,
        ],
        axis=-1,
    )


def conj_array(q) -> np.ndarray:
    q = np.array(q, dtype=float)
    q[..., 1:] *= -1.0
    return q


_INVOLUTION_SIGNS = {
    "i": np.array([1.0, 1.0, -1.0, -1.0]),
    "j": np.array([1.0, -1.0, 1.0, -1.0]),
    "k": np.array([1.0, -1.0, -1.0, 1.0]),
}


def involution_array(q, axis: str) -> np.ndarray:
    # -mu q mu keeps the scalar and the mu component, negates the other two.
    try:
        signs = _INVOLUTION_SIGNS[axis]
    except KeyError:
        raise ValueError(f"involution axis must be one of {_AXES}, got {axis!r}") from None
    return np.asarray(q, dtype=float) * signs


def exp_degenerate_array(c, d) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    d = np.asarray(d, dtype=float)
    mag = np.hypot(c, d)
    # sin|p|/|p| -> 1 as |p| -> 0
    safe = np.where(mag > 0.0, mag, 1.0)
    sinc = np.where(mag > 0.0, np.sin(mag) / safe, 1.0)
    return np.stack([np.cos(mag), np.zeros_like(mag), c * sinc, d * sinc], axis=-1)


def complex_to_quat(z) -> np.ndarray:
    """Embed complex values ``a + b i`` as quaternions ``(a, b, 0, 0)``."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape + (4,))
    out[..., 0] = z.real
    out[..., 1] = z.imag
    return out


def cd_split(q) -> tuple[np.ndarray, np.ndarray]:
    """Cartesian Cayley-Dickson components ``(z1, z2)`` with ``q = z1 + z2 j``."""
    q = np.asarray(q, dtype=float)
    return q[..., 0] + 1j * q[..., 1], q[..., 2] + 1j * q[..., 3]


def cd_join(z1, z2) -> np.ndarray:
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    z1, z2 = np.broadcast_arrays(z1, z2)
    return np.stack([z1.real, z1.imag, z2.real, z2.imag], axis=-1)


def to_polar_cd_array(q, eps: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
    """Polar Cayley-Dickson form of each quaternion in ``q``.

    Writing ``A exp(B j) = A cos|B| + A (B/|B|) sin|B| j`` and matching it
    to ``z1 + z2 j`` gives ``|B| = atan(|z2| / |z1|)`` on the branch
    ``[0, pi/2)``, ``A = z1 / cos|B|`` and the direction of ``B`` equal to
    that of ``z2 / z1``.

    Parameters
    ----------
    q : array_like, shape (..., 4)
    eps : float
        A sample is degenerate when ``|z1|^2 <= eps * |q|^2``; the default
        only rejects an exactly vanishing first component.

    Returns
    -------
    A, B : complex ndarrays of shape ``q.shape[:-1]``

    Raises
    ------
    DegenerateQuaternionError
        If any sample is degenerate.
    """
    z1, z2 = cd_split(q)
    r1 = np.abs(z1)
    r2 = np.abs(z2)
    bad = r1 * r1 <= eps * (r1 * r1 + r2 * r2)
    if np.any(bad):
        raise DegenerateQuaternionError(
            f"{int(np.count_nonzero(bad))} quaternion(s) with q0 = q1 = 0: "
            "complex phase lies on the |B| = pi/2 branch and is not unique"
        )
    return _polar_parts(z1, z2, r1, r2)


def _polar_parts(z1, z2, r1, r2):
    mag_b = np.arctan2(r2, r1)
    A = z1 * (np.hypot(r1, r2) / r1)
    denom = r1 * r2
    safe = np.where(denom > 0.0, denom, 1.0)
    direction = np.where(denom > 0.0, z2 * np.conj(z1) / safe, 0.0)
    return A, mag_b * direction


def from_polar_cd_array(A, B) -> np.ndarray:
    """``A exp(B j)`` for complex arrays ``A`` and ``B``."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    return qmul_array(complex_to_quat(A), exp_degenerate_array(B.real, B.imag))
